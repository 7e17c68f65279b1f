#include "fdrift/benchmark.hpp"
#include "fdrift/bootstrap.hpp"
#include "fdrift/deviation.hpp"
#include "fdrift/dgp.hpp"
#include "fdrift/smoother.hpp"
#include "fdrift/tuning.hpp"

#include <benchmark/benchmark.h>

namespace {

fdrift::FunctionalSeries series_for(std::size_t n) {
    return fdrift::simulate_series({.n = n, .points = 101, .seed = 17});
}

void BM_BiasCorrectedSurface(benchmark::State& state) {
    const auto series = series_for(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdrift::bias_corrected_surface(series, 0.15, {0.0, 1.0}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BiasCorrectedSurface)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity();

void BM_BootstrapDraws(benchmark::State& state) {
    const auto series = series_for(500);
    const double h = 0.15;
    const auto surface = fdrift::bias_corrected_surface(series, h, {0.0, 1.0});
    const auto res = fdrift::residuals(series, surface);
    const auto dev = fdrift::deviation_surface(surface, fdrift::benchmark_initial(series, h));
    const auto ext = fdrift::extremal_set(dev, fdrift::default_rho(500, h));
    const auto plan = fdrift::make_blocks(500, 3, 2);
    const fdrift::BlockSums sums(res, ext, plan, h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sums.draws(static_cast<std::size_t>(state.range(0)), 5));
    }
    state.counters["points"] = static_cast<double>(ext.points.size());
}
BENCHMARK(BM_BootstrapDraws)->Arg(200)->Arg(1000);

void BM_CrossValidation(benchmark::State& state) {
    const auto series = series_for(static_cast<std::size_t>(state.range(0)));
    const auto grid = fdrift::default_bandwidth_grid(series.curves());
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdrift::cv_bandwidth(series, grid));
    }
}
BENCHMARK(BM_CrossValidation)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
