#ifndef MASKSPREAD_ERRORS_HPP
#define MASKSPREAD_ERRORS_HPP

#include <stdexcept>

namespace maskspread {

/// A fixed-point or eigenvalue iteration hit its iteration cap. Carries the
/// last residual in the message.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config file could not be parsed or failed validation.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace maskspread

#endif
