#include "maskspread/mask_ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maskspread {

namespace {
std::string at(const char* name, std::size_t i) {
    return std::string(name) + "[" + std::to_string(i) + "]";
}
}  // namespace

void MaskEnsemble::validate_prevalence(const std::vector<double>& m, bool strict) {
    if (m.empty())
        throw std::invalid_argument("MaskEnsemble: m must be non-empty");
    double total = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m[i]) || m[i] < 0.0)
            throw std::invalid_argument("MaskEnsemble: " + at("m", i) + " is negative or non-finite");
        if (strict && m[i] <= 0.0)
            throw std::invalid_argument("MaskEnsemble: " + at("m", i) +
                                        " must be strictly positive (positive regularity)");
        total += m[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("MaskEnsemble: prevalences sum to " + std::to_string(total) +
                                    ", outside the 1e-12 tolerance");
}

void MaskEnsemble::finish_labels(std::vector<std::string> labels) {
    if (labels.empty()) {
        for (std::size_t i = 0; i < m_.size(); ++i)
            labels.push_back("type-" + std::to_string(i + 1));
    } else if (labels.size() != m_.size()) {
        throw std::invalid_argument("MaskEnsemble: expected " + std::to_string(m_.size()) +
                                    " labels, got " + std::to_string(labels.size()));
    }
    labels_ = std::move(labels);
}

MaskEnsemble MaskEnsemble::from_efficiencies(std::vector<double> eps_in,
                                             std::vector<double> eps_out,
                                             double baseline_t,
                                             std::vector<double> m,
                                             std::vector<std::string> labels,
                                             bool strict) {
    validate_prevalence(m, strict);
    const std::size_t M = m.size();
    if (eps_in.size() != M || eps_out.size() != M)
        throw std::invalid_argument("MaskEnsemble: eps_in/eps_out must have one entry per type");
    for (std::size_t i = 0; i < M; ++i) {
        if (!(eps_in[i] >= 0.0 && eps_in[i] <= 1.0))
            throw std::invalid_argument("MaskEnsemble: " + at("eps_in", i) + " outside [0,1]");
        if (!(eps_out[i] >= 0.0 && eps_out[i] <= 1.0))
            throw std::invalid_argument("MaskEnsemble: " + at("eps_out", i) + " outside [0,1]");
    }
    if (!(baseline_t > 0.0 && baseline_t <= 1.0))
        throw std::invalid_argument("MaskEnsemble: baseline_T must lie in (0,1]");

    MaskEnsemble e;
    e.m_ = std::move(m);
    e.strict_ = strict;
    e.rank_one_ = true;
    e.eps_in_ = std::move(eps_in);
    e.eps_out_ = std::move(eps_out);
    e.baseline_t_ = baseline_t;
    e.t_.assign(M, std::vector<double>(M, 0.0));
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j) {
            e.t_[i][j] = e.eps_out_[i] * e.eps_in_[j] * baseline_t;
            if (strict && e.t_[i][j] <= 0.0)
                throw std::invalid_argument("MaskEnsemble: T[" + std::to_string(i) + "][" +
                                            std::to_string(j) +
                                            "] = 0; use permissive mode or positive efficiencies");
        }
    e.finish_labels(std::move(labels));
    return e;
}

MaskEnsemble MaskEnsemble::from_matrix(Matrix t_matrix,
                                       std::vector<double> m,
                                       std::vector<std::string> labels,
                                       bool strict) {
    validate_prevalence(m, strict);
    const std::size_t M = m.size();
    if (t_matrix.size() != M)
        throw std::invalid_argument("MaskEnsemble: t_matrix must be " + std::to_string(M) + "x" +
                                    std::to_string(M));
    for (std::size_t i = 0; i < M; ++i) {
        if (t_matrix[i].size() != M)
            throw std::invalid_argument("MaskEnsemble: t_matrix row " + std::to_string(i) +
                                        " has wrong length");
        for (std::size_t j = 0; j < M; ++j) {
            const double t = t_matrix[i][j];
            if (!(t >= 0.0 && t <= 1.0) || !std::isfinite(t))
                throw std::invalid_argument("MaskEnsemble: T[" + std::to_string(i) + "][" +
                                            std::to_string(j) + "] outside [0,1]");
            if (strict && t <= 0.0)
                throw std::invalid_argument("MaskEnsemble: T[" + std::to_string(i) + "][" +
                                            std::to_string(j) +
                                            "] = 0 violates positive regularity; use permissive mode");
        }
    }

    MaskEnsemble e;
    e.m_ = std::move(m);
    e.strict_ = strict;
    e.rank_one_ = false;
    e.t_ = std::move(t_matrix);
    e.finish_labels(std::move(labels));
    return e;
}

}  // namespace maskspread
