#ifndef MASKSPREAD_EXPERIMENT_HPP
#define MASKSPREAD_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maskspread/analytic.hpp"
#include "maskspread/degree_model.hpp"
#include "maskspread/mask_ensemble.hpp"
#include "maskspread/sim.hpp"

namespace maskspread {

struct DegreeSpec {
    std::string kind = "poisson";  // "poisson" | "empirical"
    double mean = 5.0;
    std::vector<std::uint32_t> degrees;
    std::vector<double> probabilities;

    DegreeModel build() const;
    bool operator==(const DegreeSpec&) const = default;
};

struct MaskSpec {
    std::vector<double> m;
    // efficiency form
    std::vector<double> eps_in, eps_out;
    double baseline_t = 0.0;
    // general-matrix form (mutually exclusive with the above)
    Matrix t_matrix;
    std::vector<std::string> labels;
    bool permissive = false;

    bool from_efficiencies() const { return t_matrix.empty(); }
    MaskEnsemble build() const;
    bool operator==(const MaskSpec&) const = default;
};

struct SweepSpec {
    // one of: mean_degree, baseline_T, mask_fraction, no_mask_fraction,
    // inout_split, none
    std::string parameter = "none";
    std::vector<double> values;
    bool operator==(const SweepSpec&) const = default;
};

struct SimulationSpec {
    std::uint32_t n_nodes = 100000;
    std::uint64_t trials = 1000;
    double emergence_threshold = 0.05;
    std::uint64_t master_seed = 1;
    // "random" or "type-K" with 1-based K
    std::vector<std::string> seed_policies = {"random"};
    bool regenerate_network_each_trial = true;
    bool operator==(const SimulationSpec&) const = default;
};

struct ExperimentConfig {
    std::string name;
    DegreeSpec degree;
    MaskSpec masks;
    SweepSpec sweep;
    SimulationSpec simulation;
    std::string output = "out.csv";
    bool analytic_only = false;
    bool sim_only = false;
    bool verbose_diagnostics = false;
    unsigned threads = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Built-in configs reproducing the published sweep families.
std::vector<std::string> list_presets();
ExperimentConfig get_preset(const std::string& name);

/// (ensemble, model) at one sweep point; applies the sweep parameter to the
/// base config. Prevalence entries driven to 0 by a sweep are floored at
/// 1e-9 to preserve positive regularity.
std::pair<MaskEnsemble, DegreeModel> materialize_point(
    const ExperimentConfig& config, double sweep_value);

struct SweepRow {
    double sweep_value = 0.0;
    AnalyticSummary analytic;
    bool has_analytic = false;
    // Aggregates per requested seed policy, in config order.
    std::vector<TrialAggregate> empirical;
};

/// CSV header for this config; fixed column order, one row per sweep point,
/// floats at 9 significant digits. Byte-identical across reruns with the
/// same master seed.
std::string csv_header(const ExperimentConfig& config);
std::string csv_row(const ExperimentConfig& config, const SweepRow& row);

/// Runs the full sweep, streaming rows to `csv` and a one-line summary per
/// point to `console` (may be null). On a solver or simulation error the
/// partial CSV receives a TRUNCATED marker row before the error propagates.
void run_experiment(const ExperimentConfig& config, std::ostream& csv,
                    std::ostream* console);

/// Convenience wrapper writing to config.output.
void run_experiment(const ExperimentConfig& config, std::ostream* console);

}  // namespace maskspread

#endif
