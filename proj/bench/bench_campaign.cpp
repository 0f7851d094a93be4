// Throughput comparison of the OpenMP campaign kernels against their serial
// reference paths. Not part of ctest; build and run:
//   cmake --build build --target bench_campaign && build/bench/bench_campaign

#include <benchmark/benchmark.h>

#include "adamlab/bounds.hpp"
#include "adamlab/campaign.hpp"

namespace {

using namespace adamlab;

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionPolicy::serial : ExecutionPolicy::parallel;
}

void BM_ratio_fuzz(benchmark::State& state) {
  RatioFuzzConfig config;
  config.traces = 2000;
  config.T = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ratio_fuzz(config, policy_of(state)));
  }
}
BENCHMARK(BM_ratio_fuzz)->Arg(0)->Arg(1)->ArgNames({"parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_correction_grid(benchmark::State& state) {
  CorrectionGridConfig config;
  config.resolution = 100;
  config.t_points = 400;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_correction_grid(config, policy_of(state)));
  }
}
BENCHMARK(BM_correction_grid)->Arg(0)->Arg(1)->ArgNames({"parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_s_bound_fuzz(benchmark::State& state) {
  SBoundFuzzConfig config;
  config.traces = 2000;
  config.t_max = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_s_bound_fuzz(config, policy_of(state)));
  }
}
BENCHMARK(BM_s_bound_fuzz)->Arg(0)->Arg(1)->ArgNames({"parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_region_grid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(region_grid(300, policy_of(state)));
  }
}
BENCHMARK(BM_region_grid)->Arg(0)->Arg(1)->ArgNames({"parallel"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
