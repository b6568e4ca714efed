#include "maskspread/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "maskspread/errors.hpp"

namespace maskspread {

using nlohmann::json;

namespace {

constexpr double kPrevalenceFloor = 1e-9;

std::string fmt(double x) {
    if (std::isnan(x)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::string sanitize_label(std::string s) {
    for (char& c : s)
        if (c == ',' || c == ' ' || c == '"') c = '-';
    return s;
}

std::vector<double> floored_simplex(std::vector<double> m) {
    bool floored = false;
    for (double& x : m)
        if (x < kPrevalenceFloor) {
            x = kPrevalenceFloor;
            floored = true;
        }
    double total = 0.0;
    for (double x : m) total += x;
    for (double& x : m) x /= total;
    if (floored)
        std::cerr << "warning: sweep drove a prevalence to 0; clamped at 1e-9 "
                     "to preserve positive regularity\n";
    return m;
}

SeedPolicy parse_policy(const std::string& s, std::size_t num_types) {
    if (s == "random") return SeedPolicy::uniform_node();
    if (s.rfind("type-", 0) == 0) {
        const int k = std::stoi(s.substr(5));
        if (k < 1 || static_cast<std::size_t>(k) > num_types)
            throw ConfigError("seed policy '" + s + "' names a type outside 1.." +
                              std::to_string(num_types));
        return SeedPolicy::fixed_type(static_cast<std::uint32_t>(k - 1));
    }
    throw ConfigError("unknown seed policy '" + s + "' (expected 'random' or 'type-K')");
}

}  // namespace

DegreeModel DegreeSpec::build() const {
    if (kind == "poisson") return DegreeModel::poisson(mean);
    if (kind == "empirical") return DegreeModel::empirical(degrees, probabilities);
    throw ConfigError("degree.kind must be 'poisson' or 'empirical', got '" + kind + "'");
}

MaskEnsemble MaskSpec::build() const {
    if (from_efficiencies())
        return MaskEnsemble::from_efficiencies(eps_in, eps_out, baseline_t, m,
                                               labels, !permissive);
    return MaskEnsemble::from_matrix(t_matrix, m, labels, !permissive);
}

std::pair<MaskEnsemble, DegreeModel> materialize_point(
    const ExperimentConfig& config, double sweep_value) {
    DegreeSpec degree = config.degree;
    MaskSpec masks = config.masks;
    const std::string& p = config.sweep.parameter;
    const std::size_t M = masks.m.size();

    if (p == "none") {
        // base config as-is
    } else if (p == "mean_degree") {
        if (degree.kind != "poisson")
            throw ConfigError("mean_degree sweep requires a poisson degree model");
        degree.mean = sweep_value;
    } else if (p == "baseline_T") {
        if (!masks.from_efficiencies())
            throw ConfigError("baseline_T sweep requires an efficiency-built ensemble");
        masks.baseline_t = sweep_value;
    } else if (p == "mask_fraction") {
        // sweep_value = share of type-1 among mask wearers
        if (M == 2) {
            masks.m = floored_simplex({sweep_value, 1.0 - sweep_value});
        } else if (M == 3) {
            const double x = config.masks.m[2];
            masks.m = floored_simplex(
                {sweep_value * (1.0 - x), (1.0 - sweep_value) * (1.0 - x), x});
        } else {
            throw ConfigError("mask_fraction sweep requires 2 or 3 mask types");
        }
    } else if (p == "no_mask_fraction") {
        if (M != 3) throw ConfigError("no_mask_fraction sweep requires 3 mask types");
        const double wearers = config.masks.m[0] + config.masks.m[1];
        const double share = wearers > 0.0 ? config.masks.m[0] / wearers : 0.5;
        masks.m = floored_simplex({share * (1.0 - sweep_value),
                                   (1.0 - share) * (1.0 - sweep_value), sweep_value});
    } else if (p == "inout_split") {
        // sweep_value = m_2 (outward-good share) at fixed no-mask fraction
        if (M != 3) throw ConfigError("inout_split sweep requires 3 mask types");
        const double x = config.masks.m[2];
        masks.m = floored_simplex({1.0 - x - sweep_value, sweep_value, x});
    } else {
        throw ConfigError("unknown sweep parameter '" + p + "'");
    }

    return {masks.build(), degree.build()};
}

// ---------------------------------------------------------------------------
// Config (de)serialization

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    try {
        ExperimentConfig c;
        c.name = j.value("name", "");

        const json& d = j.at("degree");
        c.degree.kind = d.at("kind").get<std::string>();
        if (c.degree.kind == "poisson") {
            c.degree.mean = d.at("mean").get<double>();
        } else if (c.degree.kind == "empirical") {
            c.degree.degrees = d.at("degrees").get<std::vector<std::uint32_t>>();
            c.degree.probabilities = d.at("probabilities").get<std::vector<double>>();
        } else {
            throw ConfigError("degree.kind must be 'poisson' or 'empirical'");
        }

        const json& mk = j.at("masks");
        c.masks.m = mk.at("m").get<std::vector<double>>();
        const bool has_eps = mk.contains("eps_in") || mk.contains("eps_out") ||
                             mk.contains("baseline_T");
        const bool has_matrix = mk.contains("t_matrix");
        if (has_eps == has_matrix)
            throw ConfigError(
                "masks must contain exactly one of {eps_in/eps_out/baseline_T} or t_matrix");
        if (has_eps) {
            c.masks.eps_in = mk.at("eps_in").get<std::vector<double>>();
            c.masks.eps_out = mk.at("eps_out").get<std::vector<double>>();
            c.masks.baseline_t = mk.at("baseline_T").get<double>();
        } else {
            c.masks.t_matrix = mk.at("t_matrix").get<Matrix>();
        }
        if (mk.contains("labels"))
            c.masks.labels = mk.at("labels").get<std::vector<std::string>>();
        c.masks.permissive = mk.value("permissive", false);

        if (j.contains("sweep")) {
            const json& sw = j.at("sweep");
            c.sweep.parameter = sw.at("parameter").get<std::string>();
            if (sw.contains("values")) {
                c.sweep.values = sw.at("values").get<std::vector<double>>();
            } else {
                const double start = sw.at("start").get<double>();
                const double stop = sw.at("stop").get<double>();
                const double step = sw.at("step").get<double>();
                if (!(step > 0.0)) throw ConfigError("sweep.step must be positive");
                for (double v = start; v <= stop + 1e-12; v += step)
                    c.sweep.values.push_back(v);
            }
            if (c.sweep.values.empty())
                throw ConfigError("sweep.values must be non-empty");
        }

        if (j.contains("simulation")) {
            const json& s = j.at("simulation");
            c.simulation.n_nodes = s.value("n_nodes", c.simulation.n_nodes);
            c.simulation.trials = s.value("trials", c.simulation.trials);
            c.simulation.emergence_threshold =
                s.value("emergence_threshold", c.simulation.emergence_threshold);
            c.simulation.master_seed = s.value("master_seed", c.simulation.master_seed);
            if (s.contains("seed_policies"))
                c.simulation.seed_policies =
                    s.at("seed_policies").get<std::vector<std::string>>();
            c.simulation.regenerate_network_each_trial =
                s.value("regenerate_network_each_trial", true);
        }

        c.output = j.value("output", c.output);
        if (j.contains("flags")) {
            const json& f = j.at("flags");
            c.analytic_only = f.value("analytic_only", false);
            c.sim_only = f.value("sim_only", false);
            c.verbose_diagnostics = f.value("verbose_diagnostics", false);
        }
        c.threads = j.value("threads", 1u);
        if (c.analytic_only && c.sim_only)
            throw ConfigError("analytic_only and sim_only cannot both be set");

        // surface validation errors now, not mid-sweep
        for (const auto& s : c.simulation.seed_policies)
            parse_policy(s, c.masks.m.size());
        const double probe =
            c.sweep.parameter == "none" ? 0.0 : c.sweep.values.front();
        materialize_point(c, probe);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config validation error: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["degree"]["kind"] = c.degree.kind;
    if (c.degree.kind == "poisson") {
        j["degree"]["mean"] = c.degree.mean;
    } else {
        j["degree"]["degrees"] = c.degree.degrees;
        j["degree"]["probabilities"] = c.degree.probabilities;
    }
    j["masks"]["m"] = c.masks.m;
    if (c.masks.from_efficiencies()) {
        j["masks"]["eps_in"] = c.masks.eps_in;
        j["masks"]["eps_out"] = c.masks.eps_out;
        j["masks"]["baseline_T"] = c.masks.baseline_t;
    } else {
        j["masks"]["t_matrix"] = c.masks.t_matrix;
    }
    if (!c.masks.labels.empty()) j["masks"]["labels"] = c.masks.labels;
    if (c.masks.permissive) j["masks"]["permissive"] = true;
    if (c.sweep.parameter != "none") {
        j["sweep"]["parameter"] = c.sweep.parameter;
        j["sweep"]["values"] = c.sweep.values;
    }
    j["simulation"]["n_nodes"] = c.simulation.n_nodes;
    j["simulation"]["trials"] = c.simulation.trials;
    j["simulation"]["emergence_threshold"] = c.simulation.emergence_threshold;
    j["simulation"]["master_seed"] = c.simulation.master_seed;
    j["simulation"]["seed_policies"] = c.simulation.seed_policies;
    j["simulation"]["regenerate_network_each_trial"] =
        c.simulation.regenerate_network_each_trial;
    j["output"] = c.output;
    j["flags"]["analytic_only"] = c.analytic_only;
    j["flags"]["sim_only"] = c.sim_only;
    j["flags"]["verbose_diagnostics"] = c.verbose_diagnostics;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_header(const ExperimentConfig& config) {
    const MaskEnsemble ensemble = config.masks.build();  // default labels if unset
    std::vector<std::string> labels;
    for (const auto& l : ensemble.labels()) labels.push_back(sanitize_label(l));

    std::string h = "sweep_parameter,sweep_value,n_nodes,trials,master_seed";
    if (!config.sim_only) {
        h += ",r0,analytic_pe_random,analytic_total_es";
        for (const auto& l : labels) h += ",analytic_pe_seed_" + l;
        for (const auto& l : labels) h += ",analytic_es_" + l;
        for (const auto& l : labels) h += ",analytic_indiv_prob_" + l;
        if (config.verbose_diagnostics)
            h += ",extinction_iterations,extinction_residual,size_iterations,size_residual";
    }
    if (!config.analytic_only) {
        h += ",emp_pe_random,emp_pe_random_se,emp_n_emerged,emp_total_es,emp_total_es_se";
        for (const auto& l : labels) h += ",emp_pe_seed_" + l + ",emp_pe_seed_" + l + "_se";
        for (const auto& l : labels) h += ",emp_es_" + l + ",emp_es_" + l + "_se";
        for (const auto& l : labels)
            h += ",emp_indiv_prob_" + l + ",emp_indiv_prob_" + l + "_se";
        h += ",emp_seed_redraws";
    }
    return h;
}

std::string csv_row(const ExperimentConfig& config, const SweepRow& row) {
    const std::size_t M = config.masks.m.size();
    std::string r = config.sweep.parameter + "," + fmt(row.sweep_value) + "," +
                    std::to_string(config.simulation.n_nodes) + "," +
                    std::to_string(config.simulation.trials) + "," +
                    std::to_string(config.simulation.master_seed);

    if (!config.sim_only) {
        const AnalyticSummary& a = row.analytic;
        r += "," + fmt(a.r0) + "," + fmt(a.pe_random_seed) + "," +
             fmt(a.total_epidemic_size);
        for (std::size_t i = 0; i < M; ++i) r += "," + fmt(a.pe_by_seed_type[i]);
        for (std::size_t i = 0; i < M; ++i) r += "," + fmt(a.epidemic_size_by_type[i]);
        for (std::size_t i = 0; i < M; ++i)
            r += "," + fmt(a.individual_infection_prob[i]);
        if (config.verbose_diagnostics)
            r += "," + std::to_string(a.extinction_diag.iterations) + "," +
                 fmt(a.extinction_diag.residual) + "," +
                 std::to_string(a.size_diag.iterations) + "," +
                 fmt(a.size_diag.residual);
    }

    if (!config.analytic_only) {
        const auto& policies = config.simulation.seed_policies;
        const TrialAggregate* random_agg = nullptr;
        std::vector<const TrialAggregate*> by_type(M, nullptr);
        std::uint64_t redraws = 0;
        for (std::size_t p = 0; p < policies.size() && p < row.empirical.size(); ++p) {
            redraws += row.empirical[p].seed_redraws;
            if (policies[p] == "random")
                random_agg = &row.empirical[p];
            else
                by_type[parse_policy(policies[p], M).type] = &row.empirical[p];
        }

        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (random_agg) {
            r += "," + fmt(random_agg->empirical_pe_random) + "," +
                 fmt(random_agg->pe_random_se) + "," +
                 std::to_string(random_agg->n_emerged) + "," +
                 fmt(random_agg->mean_total_es_given_emergence) + "," +
                 fmt(random_agg->total_es_se);
        } else {
            r += "," + fmt(nan) + "," + fmt(nan) + ",," + fmt(nan) + "," + fmt(nan);
        }
        for (std::size_t i = 0; i < M; ++i) {
            const TrialAggregate* src = by_type[i] ? by_type[i] : random_agg;
            if (src) {
                r += "," + fmt(src->empirical_pe_by_seed_type[i]) + "," +
                     fmt(src->pe_se_by_seed_type[i]);
            } else {
                r += "," + fmt(nan) + "," + fmt(nan);
            }
        }
        for (std::size_t i = 0; i < M; ++i)
            r += "," + fmt(random_agg ? random_agg->mean_es_by_type_given_emergence[i] : nan) +
                 "," + fmt(random_agg ? random_agg->es_se_by_type[i] : nan);
        for (std::size_t i = 0; i < M; ++i)
            r += "," + fmt(random_agg ? random_agg->individual_infection_prob[i] : nan) +
                 "," +
                 fmt(random_agg ? random_agg->individual_infection_prob_se[i] : nan);
        r += "," + std::to_string(redraws);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Runner

void run_experiment(const ExperimentConfig& config, std::ostream& csv,
                    std::ostream* console) {
    const std::vector<double> points =
        config.sweep.parameter == "none" ? std::vector<double>{0.0}
                                         : config.sweep.values;
    csv << csv_header(config) << '\n';
    csv.flush();

    for (double value : points) {
        try {
            auto [ensemble, model] = materialize_point(config, value);
            SweepRow row;
            row.sweep_value = value;
            if (!config.sim_only) {
                row.analytic = summarize(ensemble, model);
                row.has_analytic = true;
            }
            if (!config.analytic_only) {
                for (const auto& policy_name : config.simulation.seed_policies) {
                    MonteCarloParams p;
                    p.n_nodes = config.simulation.n_nodes;
                    p.trials = config.simulation.trials;
                    p.seed_policy = parse_policy(policy_name, ensemble.num_types());
                    p.emergence_threshold = config.simulation.emergence_threshold;
                    p.master_seed = config.simulation.master_seed;
                    p.regenerate_network_each_trial =
                        config.simulation.regenerate_network_each_trial;
                    p.threads = config.threads;
                    row.empirical.push_back(monte_carlo(model, ensemble, p));
                }
            }
            csv << csv_row(config, row) << '\n';
            csv.flush();
            if (console) {
                *console << config.sweep.parameter << "=" << fmt(value);
                if (row.has_analytic)
                    *console << "  r0=" << fmt(row.analytic.r0)
                             << "  pe_random=" << fmt(row.analytic.pe_random_seed)
                             << "  total_es=" << fmt(row.analytic.total_epidemic_size);
                if (!row.empirical.empty())
                    *console << "  emp_pe=" << fmt(row.empirical.front().empirical_pe_random);
                *console << '\n';
            }
        } catch (...) {
            csv << "TRUNCATED," << fmt(value) << '\n';
            csv.flush();
            throw;
        }
    }
}

void run_experiment(const ExperimentConfig& config, std::ostream* console) {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + config.output);
    run_experiment(config, out, console);
}

}  // namespace maskspread
