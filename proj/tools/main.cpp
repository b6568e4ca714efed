#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "maskspread/errors.hpp"
#include "maskspread/experiment.hpp"

namespace {

// Exit codes: 0 ok, 1 config error, 2 solver non-convergence, 3 simulation error.
enum ExitCode { kOk = 0, kConfigError = 1, kSolverError = 2, kSimError = 3 };

unsigned env_threads(unsigned fallback) {
    if (const char* s = std::getenv("MASKSPREAD_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic and Monte Carlo predictions for viral spread on "
                 "configuration-model networks with multi-type masks"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment sweep and write a CSV");
    std::string config_path, preset_name, out_path;
    std::uint64_t seed = 0, trials = 0;
    std::uint32_t nodes = 0;
    unsigned threads = 0;
    bool analytic_only = false, sim_only = false, paper_scale = false;
    run->add_option("--config", config_path, "Path to a JSON experiment config");
    run->add_option("--preset", preset_name, "Built-in config name (see list-presets)");
    run->add_option("--out", out_path, "Output CSV path (overrides config)");
    run->add_option("--seed", seed, "Master seed (overrides config)");
    run->add_option("--trials", trials, "Monte Carlo trials per point (overrides config)");
    run->add_option("--nodes", nodes, "Network size (overrides config)");
    run->add_option("--threads", threads, "Worker threads for Monte Carlo trials");
    run->add_flag("--analytic-only", analytic_only, "Skip the simulator");
    run->add_flag("--sim-only", sim_only, "Skip the analytic solvers");
    run->add_flag("--paper-scale", paper_scale,
                  "Use the published protocol scale (10^6 nodes, 5000 trials)");

    auto* list = app.add_subcommand("list-presets", "Print built-in config names");

    auto* show = app.add_subcommand("show-preset", "Print a preset as JSON");
    std::string show_name;
    show->add_option("name", show_name, "Preset name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : maskspread::list_presets())
                std::cout << name << '\n';
            return kOk;
        }
        if (show->parsed()) {
            std::cout << maskspread::serialize_config(maskspread::get_preset(show_name));
            return kOk;
        }

        maskspread::ExperimentConfig config;
        if (!config_path.empty() && !preset_name.empty()) {
            std::cerr << "error: --config and --preset are mutually exclusive\n";
            return kConfigError;
        } else if (!config_path.empty()) {
            config = maskspread::load_config(config_path);
        } else if (!preset_name.empty()) {
            config = maskspread::get_preset(preset_name);
        } else {
            std::cerr << "error: one of --config or --preset is required\n";
            return kConfigError;
        }

        if (paper_scale) {
            config.simulation.n_nodes = 1000000;
            config.simulation.trials = 5000;
        }
        if (!out_path.empty()) config.output = out_path;
        if (run->count("--seed")) config.simulation.master_seed = seed;
        if (trials > 0) config.simulation.trials = trials;
        if (nodes > 0) config.simulation.n_nodes = nodes;
        if (analytic_only) config.analytic_only = true;
        if (sim_only) config.sim_only = true;
        config.threads = env_threads(threads > 0 ? threads : config.threads);
        if (config.analytic_only && config.sim_only) {
            std::cerr << "error: --analytic-only and --sim-only are mutually exclusive\n";
            return kConfigError;
        }

        maskspread::run_experiment(config, &std::cout);
        std::cout << "wrote " << config.output << '\n';
        return kOk;
    } catch (const maskspread::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const maskspread::NonConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kSimError;
    }
}
