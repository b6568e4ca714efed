#ifndef MASKSPREAD_MASK_ENSEMBLE_HPP
#define MASKSPREAD_MASK_ENSEMBLE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace maskspread {

using Matrix = std::vector<std::vector<double>>;

/// The population's mask types: prevalence vector m, the MxM pairwise
/// transmissibility matrix, and (when built from inward/outward
/// efficiencies) the rank-one provenance T_ij = eps_out[i] * eps_in[j] * T.
///
/// Strict mode (the default) requires m_i > 0 and T_ij > 0 for all i, j;
/// this is the positive-regularity condition the fixed-point solvers rely
/// on for uniqueness. Permissive mode relaxes T_ij > 0 to T_ij >= 0.
class MaskEnsemble {
public:
    static MaskEnsemble from_efficiencies(std::vector<double> eps_in,
                                          std::vector<double> eps_out,
                                          double baseline_t,
                                          std::vector<double> m,
                                          std::vector<std::string> labels = {},
                                          bool strict = true);

    static MaskEnsemble from_matrix(Matrix t_matrix,
                                    std::vector<double> m,
                                    std::vector<std::string> labels = {},
                                    bool strict = true);

    std::size_t num_types() const { return m_.size(); }
    const std::vector<double>& prevalence() const { return m_; }
    const Matrix& t_matrix() const { return t_; }
    double t(std::size_t i, std::size_t j) const { return t_[i][j]; }

    bool rank_one() const { return rank_one_; }
    bool strict() const { return strict_; }
    const std::vector<double>& eps_in() const { return eps_in_; }
    const std::vector<double>& eps_out() const { return eps_out_; }
    double baseline_t() const { return baseline_t_; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    MaskEnsemble() = default;
    static void validate_prevalence(const std::vector<double>& m, bool strict);
    void finish_labels(std::vector<std::string> labels);

    std::vector<double> m_;
    Matrix t_;
    bool rank_one_ = false;
    bool strict_ = true;
    std::vector<double> eps_in_;
    std::vector<double> eps_out_;
    double baseline_t_ = 0.0;
    std::vector<std::string> labels_;
};

}  // namespace maskspread

#endif
