#ifndef MASKSPREAD_ANALYTIC_HPP
#define MASKSPREAD_ANALYTIC_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "maskspread/degree_model.hpp"
#include "maskspread/mask_ensemble.hpp"

namespace maskspread {

struct SolverOptions {
    double tol = 1e-10;
    std::size_t max_iter = 1000000;
    // Start vector for the size fixed point; entries must be in (0,1).
    // Empty means 0.5 for every type.
    std::vector<double> theta;
};

struct FixedPointDiagnostics {
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Everything the theory predicts for one parameter setting.
struct AnalyticSummary {
    std::vector<double> extinction_probs;          // Q_i
    std::vector<double> pe_by_seed_type;           // 1 - gamma_i(Q)
    double pe_random_seed = 0.0;                   // sum_i m_i (1 - gamma_i(Q))
    double r0 = 0.0;
    bool supercritical = false;
    std::vector<double> q1;                        // level-1 non-infection probs
    std::vector<double> q0;                        // root non-infection probs
    std::vector<double> individual_infection_prob; // 1 - q0_i
    std::vector<double> epidemic_size_by_type;     // m_i (1 - q0_i)
    double total_epidemic_size = 0.0;
    FixedPointDiagnostics extinction_diag;
    FixedPointDiagnostics size_diag;
    std::vector<double> theta_used;
};

/// Seed-generation PGF: gamma_i(s) = g( sum_j m_j (1 - T_ij + T_ij s_j) ).
double gamma_i(const MaskEnsemble& ensemble, const DegreeModel& model,
               const std::vector<double>& s, std::size_t i);

/// Later-generation PGF: same inner combination fed through G.
double Gamma_i(const MaskEnsemble& ensemble, const DegreeModel& model,
               const std::vector<double>& s, std::size_t i);

/// Iterates the vector map Gamma from the all-zeros vector up to its
/// minimal fixed point Q (the per-type extinction probabilities of a
/// later-generation lineage). Throws on non-convergence.
std::vector<double> extinction_fixed_point(const MaskEnsemble& ensemble,
                                           const DegreeModel& model,
                                           double tol = 1e-10,
                                           std::size_t max_iter = 1000000,
                                           FixedPointDiagnostics* diag = nullptr);

/// pe_i = 1 - gamma_i(Q); the random-seed PE is the m-weighted mixture.
std::pair<std::vector<double>, double> emergence_probabilities(
    const MaskEnsemble& ensemble, const DegreeModel& model,
    const std::vector<double>& extinction_probs);

/// Power iteration on a non-negative matrix, with a diagonal-shift
/// fallback for oscillating iterates (e.g. permutation matrices).
double spectral_radius(const Matrix& a, double tol = 1e-12,
                       std::size_t max_iter = 100000);

/// R0 = (<k^2> - <k>)/<k> * rho(T diag(m)).
double reproduction_number(const MaskEnsemble& ensemble, const DegreeModel& model);

/// Rank-one shortcut: (<k^2> - <k>)/<k> * sum_i m_i T_ii. Only valid for
/// efficiency-built ensembles.
double reproduction_number_rank_one(const MaskEnsemble& ensemble,
                                    const DegreeModel& model);

/// Size recursion: iterate F_i(q) = G( sum_j m_j (1 - T_ji + T_ji q_j) )
/// from theta (entries in (0,1)) to its fixed point q1, then
/// q0_i = g( sum_j m_j (1 - T_ji + T_ji q1_j) ).
std::pair<std::vector<double>, std::vector<double>> epidemic_size_fixed_point(
    const MaskEnsemble& ensemble, const DegreeModel& model,
    const std::vector<double>& theta, double tol = 1e-10,
    std::size_t max_iter = 1000000, FixedPointDiagnostics* diag = nullptr);

/// Runs the full pipeline. Settings with R0 <= 1 (dead-band 1e-9 around
/// the critical point counts as subcritical) are reported with PE = ES = 0
/// exactly, without iterating the solvers.
AnalyticSummary summarize(const MaskEnsemble& ensemble, const DegreeModel& model,
                          const SolverOptions& options = {});

}  // namespace maskspread

#endif
