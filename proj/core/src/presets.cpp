#include <algorithm>

#include "maskspread/errors.hpp"
#include "maskspread/experiment.hpp"

namespace maskspread {

namespace {

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> v;
    for (int k = 0;; ++k) {
        const double x = start + k * step;
        if (x > stop + 1e-9) break;
        v.push_back(x);
    }
    return v;
}

// Surgical/cloth/no-mask efficiencies used throughout the sweep families.
MaskSpec three_type_masks() {
    MaskSpec m;
    m.m = {0.3, 0.6, 0.1};
    m.eps_in = {0.2, 0.5, 1.0};
    m.eps_out = {0.3, 0.5, 1.0};
    m.baseline_t = 0.6;
    m.labels = {"surgical", "cloth", "no-mask"};
    return m;
}

SimulationSpec desk_scale(std::vector<std::string> policies) {
    SimulationSpec s;
    s.n_nodes = 100000;
    s.trials = 1000;
    s.emergence_threshold = 0.05;
    s.master_seed = 1;
    s.seed_policies = std::move(policies);
    return s;
}

ExperimentConfig fig2() {
    ExperimentConfig c;
    c.name = "fig2";
    c.degree = {"poisson", 5.0, {}, {}};
    c.masks = three_type_masks();
    c.sweep = {"mean_degree", grid(1.0, 10.0, 1.0)};
    c.simulation = desk_scale({"random", "type-1", "type-2", "type-3"});
    c.output = "fig2.csv";
    return c;
}

ExperimentConfig fig3() {
    ExperimentConfig c;
    c.name = "fig3";
    c.degree = {"poisson", 5.0, {}, {}};
    c.masks = three_type_masks();
    c.sweep = {"baseline_T", grid(0.1, 0.9, 0.1)};
    c.simulation = desk_scale({"random", "type-1", "type-2", "type-3"});
    c.output = "fig3.csv";
    return c;
}

ExperimentConfig fig4(double mean_degree) {
    ExperimentConfig c;
    c.name = "fig4-md" + std::to_string(static_cast<int>(mean_degree));
    c.degree = {"poisson", mean_degree, {}, {}};
    c.masks.m = {0.5, 0.5};
    c.masks.eps_in = {0.2, 0.5};
    c.masks.eps_out = {0.3, 0.5};
    c.masks.baseline_t = 0.6;
    c.masks.labels = {"surgical", "cloth"};
    c.sweep = {"mask_fraction", grid(0.1, 0.9, 0.1)};
    c.simulation = desk_scale({"random"});
    c.output = c.name + ".csv";
    return c;
}

ExperimentConfig fig5(int x_percent) {
    ExperimentConfig c;
    c.name = "fig5-x" + std::to_string(x_percent);
    c.degree = {"poisson", 10.0, {}, {}};
    c.masks = three_type_masks();
    const double x = x_percent / 100.0;
    c.masks.m = {(1.0 - x) / 2.0, (1.0 - x) / 2.0, x};
    c.sweep = {"mask_fraction", grid(0.1, 0.9, 0.1)};
    c.simulation = desk_scale({"random"});
    c.output = c.name + ".csv";
    return c;
}

ExperimentConfig fig6(int x_percent) {
    ExperimentConfig c;
    c.name = "fig6-x" + std::to_string(x_percent);
    c.degree = {"poisson", 10.0, {}, {}};
    const double x = x_percent / 100.0;
    c.masks.m = {(1.0 - x) / 2.0, (1.0 - x) / 2.0, x};
    c.masks.eps_in = {0.3, 0.7, 1.0};
    c.masks.eps_out = {0.7, 0.3, 1.0};
    c.masks.baseline_t = 0.6;
    c.masks.labels = {"inward-good", "outward-good", "no-mask"};
    // m2 sweep; stop at 1 - x - 0.1 so every type keeps positive prevalence
    c.sweep = {"inout_split", grid(0.1, 1.0 - x - 0.1, 0.1)};
    c.simulation = desk_scale({"random"});
    c.output = c.name + ".csv";
    return c;
}

}  // namespace

std::vector<std::string> list_presets() {
    return {"fig2",      "fig3",      "fig4-md8",  "fig4-md10", "fig4-md15",
            "fig4-md20", "fig5-x10",  "fig5-x20",  "fig5-x40",  "fig6-x10",
            "fig6-x20",  "fig6-x40"};
}

ExperimentConfig get_preset(const std::string& name) {
    if (name == "fig2") return fig2();
    if (name == "fig3") return fig3();
    if (name == "fig4-md8") return fig4(8);
    if (name == "fig4-md10") return fig4(10);
    if (name == "fig4-md15") return fig4(15);
    if (name == "fig4-md20") return fig4(20);
    if (name == "fig5-x10") return fig5(10);
    if (name == "fig5-x20") return fig5(20);
    if (name == "fig5-x40") return fig5(40);
    if (name == "fig6-x10") return fig6(10);
    if (name == "fig6-x20") return fig6(20);
    if (name == "fig6-x40") return fig6(40);
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace maskspread
