#include "maskspread/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace maskspread {

namespace {

bool is_emerged(std::uint64_t total, std::uint32_t n, double threshold,
                bool fractional) {
    if (fractional)
        return static_cast<double>(total) / static_cast<double>(n) >= threshold;
    return static_cast<double>(total) >= threshold;
}

// Raw per-trial record; aggregation happens serially after all workers join
// so the result does not depend on scheduling.
struct TrialRecord {
    std::int32_t seed_type = -1;
    bool emerged = false;
    std::uint64_t total_infected = 0;
    std::vector<std::uint64_t> infected_by_type;
    std::vector<std::uint32_t> type_counts;
    std::uint32_t redraws = 0;
};

double binomial_se(double p, std::uint64_t n) {
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

// Sample mean and standard error of the mean.
std::pair<double, double> mean_and_se(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n == 0)
        return {std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

OutbreakResult run_outbreak(const ContactNetwork& network,
                            const MaskEnsemble& ensemble,
                            std::uint32_t seed_node, Rng& rng) {
    if (!network.types_assigned())
        throw std::invalid_argument("run_outbreak: node types not assigned");
    if (seed_node >= network.n_nodes)
        throw std::invalid_argument("run_outbreak: seed node out of range");
    const std::size_t M = ensemble.num_types();
    for (std::uint32_t v = 0; v < network.n_nodes; ++v)
        if (network.node_type[v] < 0 ||
            static_cast<std::size_t>(network.node_type[v]) >= M)
            throw std::invalid_argument("run_outbreak: node type outside the ensemble's range");

    OutbreakResult result;
    result.seed_node = seed_node;
    result.seed_type = network.node_type[seed_node];
    result.infected_count_by_type.assign(M, 0);

    std::vector<std::uint8_t> infected(network.n_nodes, 0);
    std::vector<std::uint32_t> frontier, next;
    infected[seed_node] = 1;
    frontier.push_back(seed_node);
    ++result.infected_count_by_type[static_cast<std::size_t>(result.seed_type)];
    result.total_infected = 1;

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const auto& t = ensemble.t_matrix();
    while (!frontier.empty()) {
        next.clear();
        for (std::uint32_t u : frontier) {
            const auto type_u = static_cast<std::size_t>(network.node_type[u]);
            for (std::size_t e = network.offset[u]; e < network.offset[u + 1]; ++e) {
                const std::uint32_t v = network.neighbor[e];
                if (v == u || infected[v]) continue;
                const auto type_v = static_cast<std::size_t>(network.node_type[v]);
                if (u01(rng) < t[type_u][type_v]) {
                    infected[v] = 1;
                    next.push_back(v);
                    ++result.infected_count_by_type[type_v];
                    ++result.total_infected;
                }
            }
        }
        frontier.swap(next);
    }
    return result;
}

TrialAggregate monte_carlo(const DegreeModel& model, const MaskEnsemble& ensemble,
                           const MonteCarloParams& params) {
    if (params.trials < 1)
        throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (params.threshold_is_fraction &&
        !(params.emergence_threshold > 0.0 && params.emergence_threshold < 1.0))
        throw std::invalid_argument("monte_carlo: fractional threshold must lie in (0,1)");
    const std::size_t M = ensemble.num_types();
    if (params.seed_policy.kind == SeedPolicy::Kind::FixedType &&
        params.seed_policy.type >= M)
        throw std::invalid_argument("monte_carlo: fixed seed type out of range");

    // Shared network for the reuse mode; built from trial-index 0 streams.
    ContactNetwork shared;
    if (!params.regenerate_network_each_trial) {
        Rng deg = make_rng(params.master_seed, streams::degrees, 0);
        Rng match = make_rng(params.master_seed, streams::matching, 0);
        Rng types = make_rng(params.master_seed, streams::types, 0);
        shared = generate_network(model, params.n_nodes, deg, match);
        assign_types(shared, ensemble.prevalence(), types);
    }

    std::vector<TrialRecord> records(params.trials);
    std::atomic<std::uint64_t> next_trial{0};

    auto run_trial = [&](std::uint64_t trial) {
        TrialRecord& rec = records[trial];
        const ContactNetwork* net = &shared;
        ContactNetwork own;

        // Up to 100 network redraws if the fixed seed type is absent.
        for (std::uint32_t attempt = 0;; ++attempt) {
            const std::uint64_t sub = trial * 101 + attempt;
            if (params.regenerate_network_each_trial) {
                Rng deg = make_rng(params.master_seed, streams::degrees, sub);
                Rng match = make_rng(params.master_seed, streams::matching, sub);
                Rng types = make_rng(params.master_seed, streams::types, sub);
                own = generate_network(model, params.n_nodes, deg, match);
                assign_types(own, ensemble.prevalence(), types);
                net = &own;
            }

            Rng pick = make_rng(params.master_seed, streams::seed_choice, sub);
            std::uint32_t seed_node = 0;
            if (params.seed_policy.kind == SeedPolicy::Kind::UniformNode) {
                std::uniform_int_distribution<std::uint32_t> u(0, net->n_nodes - 1);
                seed_node = u(pick);
            } else {
                std::vector<std::uint32_t> candidates;
                for (std::uint32_t v = 0; v < net->n_nodes; ++v)
                    if (net->node_type[v] ==
                        static_cast<std::int32_t>(params.seed_policy.type))
                        candidates.push_back(v);
                if (candidates.empty()) {
                    if (!params.regenerate_network_each_trial || attempt >= 100)
                        throw std::runtime_error(
                            "monte_carlo: no node of the requested seed type after 100 redraws");
                    ++rec.redraws;
                    continue;
                }
                std::uniform_int_distribution<std::size_t> u(0, candidates.size() - 1);
                seed_node = candidates[u(pick)];
            }

            Rng outbreak = make_rng(params.master_seed, streams::outbreak, sub);
            OutbreakResult r = run_outbreak(*net, ensemble, seed_node, outbreak);
            rec.seed_type = r.seed_type;
            rec.total_infected = r.total_infected;
            rec.infected_by_type = std::move(r.infected_count_by_type);
            rec.emerged = is_emerged(rec.total_infected, net->n_nodes,
                                     params.emergence_threshold,
                                     params.threshold_is_fraction);
            rec.type_counts.assign(M, 0);
            for (std::uint32_t v = 0; v < net->n_nodes; ++v)
                ++rec.type_counts[static_cast<std::size_t>(net->node_type[v])];
            break;
        }
    };

    const unsigned threads = std::max(1u, params.threads);
    if (threads == 1) {
        for (std::uint64_t t = 0; t < params.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t t = next_trial.fetch_add(1);
                    if (t >= params.trials) break;
                    run_trial(t);
                }
            });
        for (auto& th : pool) th.join();
    }

    TrialAggregate agg;
    agg.trials = params.trials;
    agg.trials_by_seed_type.assign(M, 0);
    agg.emerged_by_seed_type.assign(M, 0);
    std::vector<std::vector<double>> es_samples(M);
    std::vector<std::vector<double>> indiv_samples(M);
    std::vector<double> total_es_samples;

    const double n = static_cast<double>(params.n_nodes);
    for (const TrialRecord& rec : records) {
        agg.seed_redraws += rec.redraws;
        const auto st = static_cast<std::size_t>(rec.seed_type);
        ++agg.trials_by_seed_type[st];
        if (rec.emerged) {
            ++agg.n_emerged;
            ++agg.emerged_by_seed_type[st];
            total_es_samples.push_back(static_cast<double>(rec.total_infected) / n);
            for (std::size_t i = 0; i < M; ++i) {
                const double frac = static_cast<double>(rec.infected_by_type[i]) / n;
                es_samples[i].push_back(frac);
                if (rec.type_counts[i] > 0)
                    indiv_samples[i].push_back(static_cast<double>(rec.infected_by_type[i]) /
                                               static_cast<double>(rec.type_counts[i]));
            }
        }
    }

    agg.empirical_pe_by_seed_type.assign(M, std::numeric_limits<double>::quiet_NaN());
    agg.pe_se_by_seed_type.assign(M, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < M; ++i) {
        if (agg.trials_by_seed_type[i] == 0) continue;
        const double p = static_cast<double>(agg.emerged_by_seed_type[i]) /
                         static_cast<double>(agg.trials_by_seed_type[i]);
        agg.empirical_pe_by_seed_type[i] = p;
        agg.pe_se_by_seed_type[i] = binomial_se(p, agg.trials_by_seed_type[i]);
    }
    agg.empirical_pe_random =
        static_cast<double>(agg.n_emerged) / static_cast<double>(agg.trials);
    agg.pe_random_se = binomial_se(agg.empirical_pe_random, agg.trials);

    agg.mean_es_by_type_given_emergence.resize(M);
    agg.es_se_by_type.resize(M);
    agg.individual_infection_prob.resize(M);
    agg.individual_infection_prob_se.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        std::tie(agg.mean_es_by_type_given_emergence[i], agg.es_se_by_type[i]) =
            mean_and_se(es_samples[i]);
        std::tie(agg.individual_infection_prob[i], agg.individual_infection_prob_se[i]) =
            mean_and_se(indiv_samples[i]);
    }
    std::tie(agg.mean_total_es_given_emergence, agg.total_es_se) =
        mean_and_se(total_es_samples);
    return agg;
}

std::map<std::vector<std::uint32_t>, double> exhaustive_outcome_distribution(
    const ContactNetwork& network, const MaskEnsemble& ensemble,
    std::uint32_t seed_node) {
    if (!network.types_assigned())
        throw std::invalid_argument("exhaustive_outcome_distribution: node types not assigned");

    // One directed draw per direction of every non-self-loop edge copy.
    struct Draw {
        std::uint32_t from, to;
        double p;
    };
    std::vector<Draw> draws;
    for (const auto& [u, v] : network.edges) {
        if (u == v) continue;
        const auto tu = static_cast<std::size_t>(network.node_type[u]);
        const auto tv = static_cast<std::size_t>(network.node_type[v]);
        draws.push_back({u, v, ensemble.t(tu, tv)});
        draws.push_back({v, u, ensemble.t(tv, tu)});
    }
    if (draws.size() > 24)
        throw std::invalid_argument("exhaustive_outcome_distribution: more than 24 directed draws");

    std::map<std::vector<std::uint32_t>, double> dist;
    const std::uint32_t n_configs = 1u << draws.size();
    std::vector<std::uint8_t> reached(network.n_nodes);
    for (std::uint32_t cfg = 0; cfg < n_configs; ++cfg) {
        double prob = 1.0;
        for (std::size_t d = 0; d < draws.size(); ++d)
            prob *= (cfg >> d & 1u) ? draws[d].p : 1.0 - draws[d].p;
        if (prob == 0.0) continue;

        std::fill(reached.begin(), reached.end(), 0);
        std::vector<std::uint32_t> stack{seed_node};
        reached[seed_node] = 1;
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::size_t d = 0; d < draws.size(); ++d)
                if ((cfg >> d & 1u) && draws[d].from == u && !reached[draws[d].to]) {
                    reached[draws[d].to] = 1;
                    stack.push_back(draws[d].to);
                }
        }
        std::vector<std::uint32_t> infected;
        for (std::uint32_t v = 0; v < network.n_nodes; ++v)
            if (reached[v]) infected.push_back(v);
        dist[infected] += prob;
    }
    return dist;
}

}  // namespace maskspread
