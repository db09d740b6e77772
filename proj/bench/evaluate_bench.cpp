#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "tsbench/harness.hpp"

using namespace tsbench;

namespace {

Dataset synthetic_monthly(int n_series, int length) {
  Dataset d;
  d.name = "synthetic_monthly";
  d.frequency = Frequency::monthly;
  d.horizon = Horizon(18);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int s = 0; s < n_series; ++s) {
    std::vector<double> v(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t)
      v[static_cast<std::size_t>(t)] = 100.0 + 0.3 * t + 8.0 * std::sin(2.0 * M_PI * t / 12.0) + 2.0 * noise(rng);
    d.series.push_back(TimeSeries::from_values("s" + std::to_string(s), std::move(v), Frequency::monthly));
  }
  d.equal_length = true;
  return d;
}

const Dataset& dataset() {
  static const Dataset d = synthetic_monthly(48, 144);
  return d;
}

const Metric kMetrics[] = {Metric{MetricKind::sMAPE}, Metric{MetricKind::MASE}};

MethodEntry method_for(int index) {
  static const Method methods[] = {Method::Theta, Method::ExponentialSmoothing, Method::AutoETS};
  return default_method(methods[index]);
}

void BM_EvaluateSerial(benchmark::State& state) {
  const MethodEntry m = method_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(m, dataset(), kMetrics, 3600.0));
  state.SetLabel(m.name);
}

void BM_EvaluateParallel(benchmark::State& state) {
  const MethodEntry m = method_for(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_parallel(m, dataset(), kMetrics, 3600.0, threads));
  state.SetLabel(m.name + " threads=" + std::to_string(threads));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateParallel)
    ->ArgsProduct({{0, 1, 2}, {2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
