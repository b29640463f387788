#include <benchmark/benchmark.h>

#include <morphosim/dynamics.hpp>
#include <morphosim/growth_field.hpp>
#include <morphosim/stability.hpp>

using namespace morphosim;

namespace {

WallProfile perturbed(int m) {
  SimConfig cfg;
  cfg.m = m;
  cfg.seed = 1;
  return initial_profile(cfg);
}

void BM_Analyze(benchmark::State& state) {
  const WallProfile p = perturbed(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Analyze)->RangeMultiplier(4)->Range(100, 6400)->Complexity(benchmark::oN);

void BM_SolveMu3d(benchmark::State& state) {
  const WallProfile p = perturbed(static_cast<int>(state.range(0)));
  const ProfileGeometry geo = analyze(p);
  for (auto _ : state) benchmark::DoNotOptimize(solve_mu_3d(p, geo, 0.05));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveMu3d)->RangeMultiplier(4)->Range(100, 6400)->Complexity(benchmark::oN);

void BM_Step(benchmark::State& state) {
  SimConfig cfg;
  cfg.m = static_cast<int>(state.range(0));
  cfg.params.dim = state.range(1) == 2 ? Dimension::two : Dimension::three;
  const WallProfile p = perturbed(cfg.m);
  for (auto _ : state) benchmark::DoNotOptimize(step(p, cfg));
}
BENCHMARK(BM_Step)->ArgsProduct({{100, 400, 1600}, {2, 3}});

void BM_Simulate(benchmark::State& state) {
  // Stable parameters, one unit of time at the default grid.
  SimConfig cfg;
  cfg.params.sigma = 0.1;
  cfg.time.end_time = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_CompanionRoots(benchmark::State& state) {
  const StabilityPolynomial p = dispersion_3d(0.05, 4.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(companion_roots(p));
}
BENCHMARK(BM_CompanionRoots);

void BM_MatrixOracle(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_oracle_3d(0.05, 4.0, 0.5, K));
}
BENCHMARK(BM_MatrixOracle)->Arg(16)->Arg(32)->Arg(64);

void BM_RegionScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        region_scan(Dimension::three, 0.5, Range{2.0, 8.0, n}, Range{0.01, 0.5, n}, jobs));
  }
}
BENCHMARK(BM_RegionScan)->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
