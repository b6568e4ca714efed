#ifndef MASKSPREAD_RNG_HPP
#define MASKSPREAD_RNG_HPP

#include <cstdint>
#include <random>

namespace maskspread {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent sub-stream seeds from a
// master seed so that trial i / stream s always gets the same generator
// state regardless of execution order or thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ (stream * 0xd1342543de82ef95ULL));
    s = splitmix64(s ^ (index * 0x2545f4914f6cdd1dULL));
    return s;
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream,
                    std::uint64_t index = 0) {
    return Rng(derive_seed(master, stream, index));
}

// Sub-stream identifiers for the pieces of one Monte Carlo trial.
namespace streams {
inline constexpr std::uint64_t degrees = 1;
inline constexpr std::uint64_t matching = 2;
inline constexpr std::uint64_t types = 3;
inline constexpr std::uint64_t outbreak = 4;
inline constexpr std::uint64_t seed_choice = 5;
}  // namespace streams

}  // namespace maskspread

#endif
