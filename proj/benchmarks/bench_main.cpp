#include <benchmark/benchmark.h>

#include <vector>

#include "latsym/latsym.hpp"

namespace {

using namespace latsym;

/// One explicit FKPP step over a row of `range(0)` points.
void BM_ExplicitStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const StencilEquation eq = make_fkpp(0.05, stable_dt(0.05));
    const Profile1D seed = random_profile({0, static_cast<std::int64_t>(n) - 1}, kDefaultSeed);
    std::vector<double> row(seed.values().begin(), seed.values().end());
    std::vector<double> next(n, 0.0);
    for (auto _ : state) {
        explicit_step_into(eq, row, next);
        row.swap(next);
        benchmark::DoNotOptimize(row.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ExplicitStep)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

/// Full front simulation at the acceptance resolution, shortened in time.
void BM_SimulateFront(benchmark::State& state) {
    SimConfig cfg;
    cfg.dx = 0.05;
    cfg.dt = stable_dt(cfg.dx);
    cfg.t_end = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg).fitted_speed);
}
BENCHMARK(BM_SimulateFront)->Arg(5)->Unit(benchmark::kMillisecond);

/// Newton solve of the reduced travelling-wave problem on [-M, M].
void BM_FrontBvp(benchmark::State& state) {
    const std::int64_t M = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_front_bvp(0.1, 1, 1.9, M).residual_norm);
}
BENCHMARK(BM_FrontBvp)->Arg(100)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

/// Symmetry verdict for one transform over `range(0)` random fields.
void BM_EquationInvariance(benchmark::State& state) {
    const StencilEquation eq = make_fkpp(0.1, stable_dt(0.1));
    const TransformSpec tr = transforms::rotate();
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(equation_invariance(tr, eq, trials, kDefaultSeed).max_difference);
}
BENCHMARK(BM_EquationInvariance)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
