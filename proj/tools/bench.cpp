// Compares the OpenMP kernels against the serial reference path. The engine
// writes per-replicate results into preallocated slots, so both paths produce
// identical aggregates; this target measures the speedup only.

#include <benchmark/benchmark.h>

#include <cstdlib>

#include "shapestat/parallel.hpp"
#include "shapestat/rng.hpp"
#include "shapestat/simulate.hpp"
#include "shapestat/unimodal.hpp"

using namespace shapestat;

namespace {

void set_threads(int n) {
  if (n <= 0) {
    unsetenv("SHAPESTAT_THREADS");
  } else {
    setenv("SHAPESTAT_THREADS", std::to_string(n).c_str(), 1);
  }
}

Sample big_sample(std::size_t n) {
  RngStream stream(derive_seed(kDefaultSeed, 0xBEEF, 0));
  std::vector<double> v(n);
  for (auto& e : v) e = stream.normal();
  return Sample(v);
}

void run_power(benchmark::State& state, int threads) {
  set_threads(threads);
  ScenarioSpec spec;
  spec.case_id = 'a';
  spec.m = spec.n = 60;
  spec.replicates = 100;
  spec.seed = 11;
  const std::vector<TestConfig> tests{{StatKind::kMinT, Family::kLogConcave, false}};
  for (auto _ : state) {
    auto curves = power_curves(spec, {0.5}, tests);
    benchmark::DoNotOptimize(curves);
  }
  set_threads(0);
}

void run_birge(benchmark::State& state, int threads) {
  set_threads(threads);
  Sample s = big_sample(1200);
  for (auto _ : state) {
    StepDensity fit = birge_fit(s);
    benchmark::DoNotOptimize(fit);
  }
  set_threads(0);
}

void run_hellinger(benchmark::State& state, int threads) {
  set_threads(threads);
  for (auto _ : state) {
    auto pts = hellinger_experiment('b', {80}, 24, {HellFamily::kLogConcaveSmoothed}, 3);
    benchmark::DoNotOptimize(pts);
  }
  set_threads(0);
}

}  // namespace

BENCHMARK_CAPTURE(run_power, serial, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_power, openmp, 0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_birge, serial, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_birge, openmp, 0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_hellinger, serial, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_hellinger, openmp, 0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
