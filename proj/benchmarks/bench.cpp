#include <benchmark/benchmark.h>

#include "maskspread/analytic.hpp"
#include "maskspread/netgen.hpp"
#include "maskspread/sim.hpp"

using namespace maskspread;

namespace {

MaskEnsemble paper_masks() {
    return MaskEnsemble::from_efficiencies({0.2, 0.5, 1.0}, {0.3, 0.5, 1.0}, 0.6,
                                           {0.3, 0.6, 0.1});
}

void BM_GenerateNetwork(benchmark::State& state) {
    auto model = DegreeModel::poisson(static_cast<double>(state.range(1)));
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng deg = make_rng(seed, streams::degrees);
        Rng match = make_rng(seed, streams::matching);
        auto net = generate_network(model, n, deg, match);
        benchmark::DoNotOptimize(net.neighbor.data());
        ++seed;
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenerateNetwork)->Args({100000, 5})->Args({100000, 10})->Args({1000000, 5});

void BM_Outbreak(benchmark::State& state) {
    auto model = DegreeModel::poisson(5.0);
    auto ens = paper_masks();
    Rng deg = make_rng(1, streams::degrees);
    Rng match = make_rng(1, streams::matching);
    Rng types = make_rng(1, streams::types);
    auto net = generate_network(model, static_cast<std::uint32_t>(state.range(0)),
                                deg, match);
    assign_types(net, ens.prevalence(), types);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng = make_rng(seed++, streams::outbreak);
        auto r = run_outbreak(net, ens, 0, rng);
        benchmark::DoNotOptimize(r.total_infected);
    }
}
BENCHMARK(BM_Outbreak)->Arg(100000)->Arg(1000000);

void BM_Summarize(benchmark::State& state) {
    auto model = DegreeModel::poisson(8.0);
    auto ens = paper_masks();
    for (auto _ : state) {
        auto s = summarize(ens, model);
        benchmark::DoNotOptimize(s.r0);
    }
}
BENCHMARK(BM_Summarize);

void BM_SpectralRadius(benchmark::State& state) {
    const std::size_t M = static_cast<std::size_t>(state.range(0));
    Matrix a(M, std::vector<double>(M, 0.1));
    for (std::size_t i = 0; i < M; ++i) a[i][i] = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(a));
}
BENCHMARK(BM_SpectralRadius)->Arg(3)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
