#include "maskspread/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace maskspread {

DegreeModel DegreeModel::poisson(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("DegreeModel: Poisson mean must be positive and finite");
    DegreeModel m;
    m.kind_ = Kind::Poisson;
    m.poisson_mean_ = mean;
    m.mean_ = mean;
    m.second_moment_ = mean * mean + mean;
    return m;
}

DegreeModel DegreeModel::empirical(std::vector<std::uint32_t> degrees,
                                   std::vector<double> probabilities) {
    if (degrees.size() != probabilities.size() || degrees.empty())
        throw std::invalid_argument("DegreeModel: degrees and probabilities must be non-empty and of equal length");

    std::set<std::uint32_t> seen;
    double total = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!seen.insert(degrees[i]).second)
            throw std::invalid_argument("DegreeModel: duplicate degree " + std::to_string(degrees[i]));
        if (!(probabilities[i] >= 0.0) || !std::isfinite(probabilities[i]))
            throw std::invalid_argument("DegreeModel: probability for degree " +
                                        std::to_string(degrees[i]) + " is negative or non-finite");
        total += probabilities[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("DegreeModel: pmf sums to " + std::to_string(total) +
                                    ", outside the 1e-12 normalization tolerance");

    DegreeModel m;
    m.kind_ = Kind::Empirical;
    m.degrees_ = std::move(degrees);
    m.probs_ = std::move(probabilities);
    for (double& p : m.probs_) p /= total;

    m.cdf_.resize(m.probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < m.probs_.size(); ++i) {
        acc += m.probs_[i];
        m.cdf_[i] = acc;
        const double k = static_cast<double>(m.degrees_[i]);
        m.mean_ += k * m.probs_[i];
        m.second_moment_ += k * k * m.probs_[i];
    }
    m.cdf_.back() = 1.0;
    return m;
}

double DegreeModel::pgf_g(double x) const {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("pgf_g: x must lie in [0,1]");
    if (kind_ == Kind::Poisson)
        return std::exp(poisson_mean_ * (x - 1.0));
    double s = 0.0;
    for (std::size_t i = 0; i < degrees_.size(); ++i)
        s += probs_[i] * std::pow(x, static_cast<double>(degrees_[i]));
    return s;
}

double DegreeModel::pgf_G(double x) const {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("pgf_G: x must lie in [0,1]");
    if (mean_ <= 0.0)
        throw std::domain_error("pgf_G: degenerate model with <k> = 0");
    if (kind_ == Kind::Poisson)
        return std::exp(poisson_mean_ * (x - 1.0));
    double s = 0.0;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        const auto k = degrees_[i];
        if (k == 0) continue;
        s += static_cast<double>(k) * probs_[i] *
             std::pow(x, static_cast<double>(k - 1));
    }
    return s / mean_;
}

std::pair<double, double> DegreeModel::moments() const {
    return {mean_, second_moment_};
}

double DegreeModel::excess_factor() const {
    if (mean_ <= 0.0)
        throw std::domain_error("excess_factor: degenerate model with <k> = 0");
    return (second_moment_ - mean_) / mean_;
}

std::uint32_t DegreeModel::sample_degree(Rng& rng) const {
    if (kind_ == Kind::Poisson) {
        std::poisson_distribution<std::uint32_t> dist(poisson_mean_);
        return dist(rng);
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double u = u01(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf_.begin());
    return degrees_[std::min(idx, degrees_.size() - 1)];
}

std::vector<std::uint32_t> DegreeModel::sample_degrees(std::size_t count,
                                                       Rng& rng) const {
    std::vector<std::uint32_t> out(count);
    if (kind_ == Kind::Poisson) {
        std::poisson_distribution<std::uint32_t> dist(poisson_mean_);
        for (auto& k : out) k = dist(rng);
        return out;
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (auto& k : out) {
        const double u = u01(rng);
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        const auto idx = static_cast<std::size_t>(it - cdf_.begin());
        k = degrees_[std::min(idx, degrees_.size() - 1)];
    }
    return out;
}

}  // namespace maskspread
