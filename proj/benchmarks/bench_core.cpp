#include <benchmark/benchmark.h>

#include "ddehopf/experiments.hpp"

using namespace ddehopf;

namespace {

const ExpansionPoint kExp = expand(-0.05, 60.0);
const HopfPoint kHopf = solve_hopf(12.0);

void BM_integrate_polynomial(benchmark::State& state) {
    const auto spec = SystemSpec::polynomial(kHopf.eta_c - 0.05, kExp.kappa, kExp.nu, 12.0,
                                             state.range(0) ? 1e-5 : 0.0);
    const HistoryInit hist = HistoryInit::constant(0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(spec, hist, 10000, 0.1, 42));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_integrate_polynomial)->Arg(0)->Arg(1);

void BM_ensemble_average(benchmark::State& state) {
    const auto spec =
        SystemSpec::polynomial(kHopf.eta_c - 0.05, kExp.kappa, kExp.nu, 12.0, 1e-5);
    EnsembleOptions opts;
    opts.n_trials = static_cast<std::size_t>(state.range(0));
    opts.n_steps = 10000;
    opts.master_seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ensemble_average(spec, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ensemble_average)->Arg(16)->Arg(128);

void BM_solve_hopf(benchmark::State& state) {
    double tau = 6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_hopf(tau));
        tau = tau < 200.0 ? tau + 1.0 : 6.0;
    }
}
BENCHMARK(BM_solve_hopf);

void BM_estimate_sigma2(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_sigma2(kHopf, 1e-5, 1000.0,
                                                 static_cast<std::size_t>(state.range(0)), 3));
    }
}
BENCHMARK(BM_estimate_sigma2)->Arg(20)->Arg(100);

void BM_project_center(benchmark::State& state) {
    const auto spec = SystemSpec::linear_critical(kHopf.eta_c, 12.0, 1e-5);
    const Trajectory t = integrate(spec, HistoryInit::constant(0.0), 2000, 0.1, 11);
    const std::span<const double> seg(t.samples.data() + t.samples.size() - 121, 121);
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_center(seg, 0.1, kHopf));
    }
}
BENCHMARK(BM_project_center);

}  // namespace

BENCHMARK_MAIN();
