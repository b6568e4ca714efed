#ifndef MASKSPREAD_SIM_HPP
#define MASKSPREAD_SIM_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "maskspread/degree_model.hpp"
#include "maskspread/mask_ensemble.hpp"
#include "maskspread/netgen.hpp"
#include "maskspread/rng.hpp"

namespace maskspread {

struct OutbreakResult {
    std::uint32_t seed_node = 0;
    std::int32_t seed_type = -1;
    std::vector<std::uint64_t> infected_count_by_type;
    std::uint64_t total_infected = 0;
    bool emerged = false;
    std::uint64_t trial_seed = 0;
};

struct SeedPolicy {
    enum class Kind { UniformNode, FixedType };
    Kind kind = Kind::UniformNode;
    std::uint32_t type = 0;  // only for FixedType

    static SeedPolicy uniform_node() { return {}; }
    static SeedPolicy fixed_type(std::uint32_t t) {
        return {Kind::FixedType, t};
    }
};

struct MonteCarloParams {
    std::uint32_t n_nodes = 100000;
    std::uint64_t trials = 1000;
    SeedPolicy seed_policy;
    double emergence_threshold = 0.05;
    bool threshold_is_fraction = true;  // false: absolute infected count
    std::uint64_t master_seed = 1;
    bool regenerate_network_each_trial = true;
    unsigned threads = 1;
};

/// Monte Carlo aggregates over independent outbreak trials. Estimates that
/// condition on an empty set (e.g. ES when no trial emerged) are NaN.
struct TrialAggregate {
    std::uint64_t trials = 0;
    std::uint64_t n_emerged = 0;
    std::vector<std::uint64_t> trials_by_seed_type;
    std::vector<std::uint64_t> emerged_by_seed_type;

    std::vector<double> empirical_pe_by_seed_type;
    std::vector<double> pe_se_by_seed_type;
    double empirical_pe_random = 0.0;  // over all trials, whatever the policy
    double pe_random_se = 0.0;

    std::vector<double> mean_es_by_type_given_emergence;  // fractions of n
    std::vector<double> es_se_by_type;
    double mean_total_es_given_emergence = 0.0;
    double total_es_se = 0.0;

    // Per-type ES divided by the realized type fraction, averaged over
    // emerged trials.
    std::vector<double> individual_infection_prob;
    std::vector<double> individual_infection_prob_se;

    std::uint64_t seed_redraws = 0;
};

/// One SIR outbreak by frontier traversal: every incident edge copy from an
/// infected node to a still-susceptible neighbor gets one independent
/// Bernoulli(T[type(u)][type(v)]) draw. Self-loops are inert.
OutbreakResult run_outbreak(const ContactNetwork& network,
                            const MaskEnsemble& ensemble,
                            std::uint32_t seed_node, Rng& rng);

/// Runs `trials` independent outbreaks with per-trial sub-streams derived
/// from the master seed; the aggregate is identical for any thread count.
TrialAggregate monte_carlo(const DegreeModel& model, const MaskEnsemble& ensemble,
                           const MonteCarloParams& params);

/// Exact distribution over final infected sets for small fixtures, by
/// enumerating every directed transmission draw (at most 24 of them) and
/// computing directed reachability from the seed. Independent of
/// run_outbreak; used to validate its sampling distribution.
std::map<std::vector<std::uint32_t>, double> exhaustive_outcome_distribution(
    const ContactNetwork& network, const MaskEnsemble& ensemble,
    std::uint32_t seed_node);

}  // namespace maskspread

#endif
