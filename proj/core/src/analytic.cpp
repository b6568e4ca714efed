#include "maskspread/analytic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maskspread/errors.hpp"

namespace maskspread {

namespace {

constexpr double kCriticalDeadBand = 1e-9;

// sum_j m_j (1 - T + T s_j) with T = T_ij (transposed = false, emergence
// direction) or T = T_ji (transposed = true, size recursion). Lies in [0,1]
// whenever s does.
double inner_argument(const MaskEnsemble& e, const std::vector<double>& s,
                      std::size_t i, bool transposed) {
    const auto& m = e.prevalence();
    double acc = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        const double t = transposed ? e.t(j, i) : e.t(i, j);
        acc += m[j] * (1.0 - t + t * s[j]);
    }
    return std::clamp(acc, 0.0, 1.0);
}

void check_vector(const MaskEnsemble& e, const std::vector<double>& s,
                  const char* name) {
    if (s.size() != e.num_types())
        throw std::invalid_argument(std::string(name) + " must have one entry per mask type");
}

double max_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

[[noreturn]] void throw_nonconvergence(const char* what, std::size_t iters,
                                       double residual) {
    throw NonConvergenceError(std::string(what) + " did not converge after " +
                             std::to_string(iters) +
                             " iterations; residual = " + std::to_string(residual));
}

// One power-iteration run; returns true on convergence and leaves the
// normalized Perron vector in *vec.
bool power_iterate(const Matrix& a, double tol, std::size_t max_iter,
                   double* out, std::vector<double>* vec = nullptr) {
    const std::size_t n = a.size();
    std::vector<double> v(n, 1.0), av(n, 0.0);
    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
            av[i] = s;
        }
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += v[i] * av[i];
            den += v[i] * v[i];
        }
        const double next = num / den;
        double norm = 0.0;
        for (double x : av) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) {  // reached the kernel; spectral radius is 0
            *out = 0.0;
            if (vec) *vec = v;
            return true;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;
        if (it > 0 && std::abs(next - lambda) < tol * std::max(1.0, std::abs(next))) {
            *out = std::abs(next);
            if (vec) *vec = v;
            return true;
        }
        lambda = next;
    }
    return false;
}

// The one-sided Rayleigh estimate carries the eigenvector's first-order
// error; combining converged right and left vectors through the bilinear
// quotient w.Av / w.v cancels it.
bool two_sided_estimate(const Matrix& a, double tol, std::size_t max_iter,
                        double* out) {
    const std::size_t n = a.size();
    std::vector<double> v, w;
    double rho = 0.0;
    if (!power_iterate(a, tol, max_iter, &rho, &v)) return false;
    if (rho == 0.0) {
        *out = 0.0;
        return true;
    }
    Matrix at(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) at[i][j] = a[j][i];
    if (!power_iterate(at, tol, max_iter, &rho, &w)) return false;

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
        num += w[i] * s;
        den += w[i] * v[i];
    }
    *out = den != 0.0 ? std::abs(num / den) : rho;
    return true;
}

}  // namespace

double gamma_i(const MaskEnsemble& ensemble, const DegreeModel& model,
               const std::vector<double>& s, std::size_t i) {
    check_vector(ensemble, s, "s");
    if (i >= ensemble.num_types())
        throw std::out_of_range("gamma_i: type index out of range");
    return model.pgf_g(inner_argument(ensemble, s, i, false));
}

double Gamma_i(const MaskEnsemble& ensemble, const DegreeModel& model,
               const std::vector<double>& s, std::size_t i) {
    check_vector(ensemble, s, "s");
    if (i >= ensemble.num_types())
        throw std::out_of_range("Gamma_i: type index out of range");
    return model.pgf_G(inner_argument(ensemble, s, i, false));
}

std::vector<double> extinction_fixed_point(const MaskEnsemble& ensemble,
                                           const DegreeModel& model,
                                           double tol, std::size_t max_iter,
                                           FixedPointDiagnostics* diag) {
    const std::size_t M = ensemble.num_types();
    std::vector<double> q(M, 0.0), next(M, 0.0);
    double residual = 1.0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < M; ++i)
            next[i] = model.pgf_G(inner_argument(ensemble, q, i, false));
        for (std::size_t i = 0; i < M; ++i) {
            assert(next[i] >= q[i] - 1e-15 && next[i] <= 1.0 + 1e-15);
            next[i] = std::clamp(next[i], 0.0, 1.0);
        }
        residual = max_norm_diff(next, q);
        q.swap(next);
        if (residual < tol) {
            if (diag) *diag = {it, residual};
            return q;
        }
    }
    throw_nonconvergence("extinction_fixed_point", max_iter, residual);
}

std::pair<std::vector<double>, double> emergence_probabilities(
    const MaskEnsemble& ensemble, const DegreeModel& model,
    const std::vector<double>& extinction_probs) {
    check_vector(ensemble, extinction_probs, "extinction_probs");
    const std::size_t M = ensemble.num_types();
    std::vector<double> pe(M, 0.0);
    double pe_random = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        pe[i] = std::clamp(1.0 - gamma_i(ensemble, model, extinction_probs, i), 0.0, 1.0);
        pe_random += ensemble.prevalence()[i] * pe[i];
    }
    return {std::move(pe), pe_random};
}

double spectral_radius(const Matrix& a, double tol, std::size_t max_iter) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("spectral_radius: empty matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n)
            throw std::invalid_argument("spectral_radius: matrix is not square");
        for (double x : a[i])
            if (!(x >= 0.0) || !std::isfinite(x))
                throw std::invalid_argument("spectral_radius: entries must be non-negative and finite");
    }

    double rho = 0.0;
    if (two_sided_estimate(a, tol, max_iter, &rho)) return rho;

    // Oscillating iterates (eigenvalues of equal modulus). Shifting by a
    // small multiple of I moves the Perron root to rho + delta and breaks
    // the tie without changing the eigenvectors.
    const double delta = 1e-9;
    Matrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] += delta;
    if (two_sided_estimate(shifted, tol, max_iter, &rho))
        return std::max(0.0, rho - delta);
    throw_nonconvergence("spectral_radius", max_iter, rho);
}

double reproduction_number(const MaskEnsemble& ensemble, const DegreeModel& model) {
    const std::size_t M = ensemble.num_types();
    Matrix tm(M, std::vector<double>(M, 0.0));
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
            tm[i][j] = ensemble.t(i, j) * ensemble.prevalence()[j];
    return model.excess_factor() * spectral_radius(tm);
}

double reproduction_number_rank_one(const MaskEnsemble& ensemble,
                                    const DegreeModel& model) {
    if (!ensemble.rank_one())
        throw std::invalid_argument(
            "reproduction_number_rank_one: ensemble was built from a general matrix");
    double same_type = 0.0;
    for (std::size_t i = 0; i < ensemble.num_types(); ++i)
        same_type += ensemble.prevalence()[i] * ensemble.t(i, i);
    return model.excess_factor() * same_type;
}

std::pair<std::vector<double>, std::vector<double>> epidemic_size_fixed_point(
    const MaskEnsemble& ensemble, const DegreeModel& model,
    const std::vector<double>& theta, double tol, std::size_t max_iter,
    FixedPointDiagnostics* diag) {
    check_vector(ensemble, theta, "theta");
    const std::size_t M = ensemble.num_types();
    for (double t : theta)
        if (!(t > 0.0 && t < 1.0))
            throw std::invalid_argument("epidemic_size_fixed_point: theta entries must lie in (0,1)");

    std::vector<double> q = theta, next(M, 0.0);
    double residual = 1.0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < M; ++i)
            next[i] = std::clamp(
                model.pgf_G(inner_argument(ensemble, q, i, true)), 0.0, 1.0);
        residual = max_norm_diff(next, q);
        q.swap(next);
        if (residual < tol) {
            if (diag) *diag = {it, residual};
            std::vector<double> q0(M, 0.0);
            for (std::size_t i = 0; i < M; ++i)
                q0[i] = std::clamp(
                    model.pgf_g(inner_argument(ensemble, q, i, true)), 0.0, 1.0);
            return {std::move(q), std::move(q0)};
        }
    }
    throw_nonconvergence("epidemic_size_fixed_point", max_iter, residual);
}

AnalyticSummary summarize(const MaskEnsemble& ensemble, const DegreeModel& model,
                          const SolverOptions& options) {
    const std::size_t M = ensemble.num_types();
    AnalyticSummary out;
    out.r0 = reproduction_number(ensemble, model);
    out.supercritical = out.r0 > 1.0 + kCriticalDeadBand;
    out.theta_used = options.theta.empty() ? std::vector<double>(M, 0.5) : options.theta;

    if (!out.supercritical) {
        out.extinction_probs.assign(M, 1.0);
        out.pe_by_seed_type.assign(M, 0.0);
        out.pe_random_seed = 0.0;
        out.q1.assign(M, 1.0);
        out.q0.assign(M, 1.0);
        out.individual_infection_prob.assign(M, 0.0);
        out.epidemic_size_by_type.assign(M, 0.0);
        out.total_epidemic_size = 0.0;
        return out;
    }

    out.extinction_probs = extinction_fixed_point(ensemble, model, options.tol,
                                                  options.max_iter, &out.extinction_diag);
    auto [pe, pe_random] = emergence_probabilities(ensemble, model, out.extinction_probs);
    out.pe_by_seed_type = std::move(pe);
    out.pe_random_seed = pe_random;

    auto [q1, q0] = epidemic_size_fixed_point(ensemble, model, out.theta_used,
                                              options.tol, options.max_iter,
                                              &out.size_diag);
    out.q1 = std::move(q1);
    out.q0 = std::move(q0);
    out.individual_infection_prob.resize(M);
    out.epidemic_size_by_type.resize(M);
    out.total_epidemic_size = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        out.individual_infection_prob[i] = 1.0 - out.q0[i];
        out.epidemic_size_by_type[i] =
            ensemble.prevalence()[i] * out.individual_infection_prob[i];
        out.total_epidemic_size += out.epidemic_size_by_type[i];
    }
    return out;
}

}  // namespace maskspread
