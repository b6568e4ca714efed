#ifndef MASKSPREAD_DEGREE_MODEL_HPP
#define MASKSPREAD_DEGREE_MODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "maskspread/rng.hpp"

namespace maskspread {

/// A node-degree distribution, either Poisson with a given mean or an
/// explicit finite pmf. Exposes the generating functions g and G and the
/// first two moments, which all analytic quantities are built from.
class DegreeModel {
public:
    enum class Kind { Poisson, Empirical };

    static DegreeModel poisson(double mean);
    // pmf entries must be non-negative with distinct degrees; the total
    // may deviate from 1 by at most 1e-12 and is renormalized.
    static DegreeModel empirical(std::vector<std::uint32_t> degrees,
                                 std::vector<double> probabilities);

    Kind kind() const { return kind_; }
    double poisson_mean() const { return poisson_mean_; }
    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    const std::vector<double>& probabilities() const { return probs_; }

    /// g(x) = sum_k p_k x^k for x in [0,1].
    double pgf_g(double x) const;

    /// G(x) = sum_k (k p_k / <k>) x^{k-1}, the excess-degree PGF.
    /// For Poisson models G == g.
    double pgf_G(double x) const;

    /// (<k>, <k^2>).
    std::pair<double, double> moments() const;

    double mean_degree() const { return mean_; }

    /// Mean excess degree G'(1) = (<k^2> - <k>)/<k>.
    double excess_factor() const;

    /// Draws one degree. Deterministic given the rng state.
    std::uint32_t sample_degree(Rng& rng) const;

    /// Draws `count` degrees with a single distribution instance.
    std::vector<std::uint32_t> sample_degrees(std::size_t count, Rng& rng) const;

private:
    DegreeModel() = default;

    Kind kind_ = Kind::Poisson;
    double poisson_mean_ = 0.0;
    std::vector<std::uint32_t> degrees_;
    std::vector<double> probs_;
    std::vector<double> cdf_;  // empirical sampling, binary search
    double mean_ = 0.0;
    double second_moment_ = 0.0;
};

}  // namespace maskspread

#endif
