#include "tsbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>

#include <omp.h>

#include "tsbench/deadline.hpp"
#include "tsbench/error.hpp"
#include "tsbench/forecast/forecaster.hpp"
#include "tsbench/tsf.hpp"

namespace tsbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

enum class Outcome { done, failed, timed_out, skipped };

struct SeriesResult {
  Outcome outcome = Outcome::skipped;
  ErrorCode error = ErrorCode::InvalidParameter;
  std::vector<std::optional<double>> scores;
  std::vector<ErrorCode> metric_errors;
};

SeriesResult evaluate_series(const ForecasterSpec& spec, const TimeSeries& series, Horizon h, int sp,
                             std::span<const Metric> metrics, const Deadline& deadline) {
  SeriesResult r;
  try {
    deadline.check();
    const auto full = TimeSeries::from_values(series.name(), locf_impute(series), series.frequency(),
                                              series.start());
    const auto [train_ts, test_ts] = temporal_train_test_split(full, h);
    const std::vector<double> train = train_ts.observed();
    const std::vector<double> test = test_ts.observed();
    const std::vector<double> forecast = fit(spec, train, deadline).predict(h);
    for (const Metric& m : metrics) {
      try {
        r.scores.emplace_back(score(m, test, forecast, train, sp));
        r.metric_errors.push_back(ErrorCode::InvalidParameter);
      } catch (const Error& e) {
        r.scores.emplace_back(std::nullopt);
        r.metric_errors.push_back(e.code());
      }
    }
    r.outcome = Outcome::done;
  } catch (const Error& e) {
    r.outcome = e.code() == ErrorCode::DeadlineExceeded ? Outcome::timed_out : Outcome::failed;
    r.error = e.code();
  }
  return r;
}

EvaluationRecord skeleton(const MethodEntry& method, const Dataset& dataset) {
  EvaluationRecord rec;
  rec.dataset = dataset.name;
  rec.method = method.name;
  rec.frequency = std::string(to_string(dataset.frequency));
  return rec;
}

ForecasterSpec effective_spec(const MethodEntry& method, const Dataset& dataset) {
  return method.period_from_data ? with_period(method.spec, seasonal_period(dataset.frequency)) : method.spec;
}

// Turns per-series results (in series order) into the record.
void merge(EvaluationRecord& rec, const std::vector<SeriesResult>& results, std::span<const Metric> metrics) {
  for (const auto& r : results) {
    if (r.outcome == Outcome::failed) {
      rec.status = Status::NA;
      rec.reason = std::string(to_string(r.error));
      rec.scores.clear();
      return;
    }
  }
  for (const auto& r : results) {
    if (r.outcome != Outcome::done) {
      rec.status = Status::Timeout;
      rec.reason.clear();
      rec.scores.clear();
      return;
    }
  }
  rec.series_evaluated = static_cast<int>(results.size());
  std::optional<ErrorCode> first_metric_error;
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    std::vector<double> values;
    for (const auto& r : results) {
      if (r.scores[k]) {
        values.push_back(*r.scores[k]);
      } else if (!first_metric_error) {
        first_metric_error = r.metric_errors[k];
      }
    }
    if (!values.empty()) rec.scores[metrics[k]] = aggregate(values);
  }
  if (rec.scores.empty()) {
    rec.status = Status::NA;
    rec.reason = std::string(to_string(first_metric_error.value_or(ErrorCode::EmptyInput)));
  } else {
    rec.status = Status::Ok;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Ok: return "Ok";
    case Status::NA: return "NA";
    case Status::Timeout: return "Timeout";
  }
  return "?";
}

Status status_from_string(std::string_view s) {
  if (s == "Ok") return Status::Ok;
  if (s == "NA") return Status::NA;
  if (s == "Timeout") return Status::Timeout;
  throw Error(ErrorCode::InvalidParameter, "unknown status '" + std::string(s) + "'");
}

MethodEntry default_method(Method method) {
  return {std::string(to_string(method)), default_spec(method, 1), true};
}

ForecasterSpec with_period(ForecasterSpec spec, int sp) {
  std::visit(overloaded{
                 [](TrendParams&) {},
                 [](PolynomialTrendParams&) {},
                 [](AutoArimaParams&) {},
                 [&](auto& p) { p.sp = sp; },
             },
             spec);
  return spec;
}

EvaluationRecord evaluate_serial(const MethodEntry& method, const Dataset& dataset,
                                 std::span<const Metric> metrics, double budget_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  EvaluationRecord rec = skeleton(method, dataset);
  const Deadline deadline = Deadline::after(std::max(budget_seconds, 0.0));
  const ForecasterSpec spec = effective_spec(method, dataset);
  const int sp = seasonal_period(dataset.frequency);

  std::vector<SeriesResult> results(dataset.series.size());
  for (std::size_t i = 0; i < dataset.series.size(); ++i) {
    results[i] = evaluate_series(spec, dataset.series[i], dataset.horizon, sp, metrics, deadline);
    if (results[i].outcome != Outcome::done) break;
  }
  merge(rec, results, metrics);
  rec.runtime_seconds = seconds_since(t0);
  return rec;
}

EvaluationRecord evaluate_parallel(const MethodEntry& method, const Dataset& dataset,
                                   std::span<const Metric> metrics, double budget_seconds, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  EvaluationRecord rec = skeleton(method, dataset);
  const Deadline deadline = Deadline::after(std::max(budget_seconds, 0.0));
  const ForecasterSpec spec = effective_spec(method, dataset);
  const int sp = seasonal_period(dataset.frequency);

  const auto n = static_cast<long long>(dataset.series.size());
  std::vector<SeriesResult> results(dataset.series.size());
  // Lowest index known to have failed; later series need not run.
  std::atomic<long long> first_stop{n};

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    if (i > first_stop.load(std::memory_order_relaxed)) continue;
    auto& r = results[static_cast<std::size_t>(i)];
    r = evaluate_series(spec, dataset.series[static_cast<std::size_t>(i)], dataset.horizon, sp, metrics,
                        deadline);
    if (r.outcome != Outcome::done) {
      long long seen = first_stop.load(std::memory_order_relaxed);
      while (i < seen && !first_stop.compare_exchange_weak(seen, i, std::memory_order_relaxed)) {
      }
    }
  }

  // Keep the prefix up to the first stop so merge sees what the serial path
  // would have seen.
  const auto stop = first_stop.load();
  if (stop < n) results.resize(static_cast<std::size_t>(stop + 1));
  merge(rec, results, metrics);
  rec.runtime_seconds = seconds_since(t0);
  return rec;
}

EvaluationRecord evaluate(const MethodEntry& method, const Dataset& dataset, std::span<const Metric> metrics,
                          const EvaluateOptions& options) {
  if (options.parallelism > 1)
    return evaluate_parallel(method, dataset, metrics, options.budget_seconds, options.parallelism);
  return evaluate_serial(method, dataset, metrics, options.budget_seconds);
}

std::vector<EvaluationRecord> run_benchmark(std::span<const Dataset> datasets,
                                            std::span<const MethodEntry> methods,
                                            std::span<const Metric> metrics, const EvaluateOptions& options) {
  std::vector<EvaluationRecord> out;
  out.reserve(datasets.size() * methods.size());
  for (const Dataset& d : datasets)
    for (const MethodEntry& m : methods) out.push_back(evaluate(m, d, metrics, options));
  std::stable_sort(out.begin(), out.end(), [](const EvaluationRecord& a, const EvaluationRecord& b) {
    return std::tie(a.dataset, a.method) < std::tie(b.dataset, b.method);
  });
  return out;
}

std::vector<EvaluationRecord> run_benchmark(const BenchmarkConfig& config) {
  std::vector<Dataset> datasets;
  datasets.reserve(config.datasets.size());
  for (const auto& path : config.datasets) {
    try {
      datasets.push_back(load_tsf(path));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DatasetLoadError) throw;
      throw Error(ErrorCode::DatasetLoadError, path.string() + ": " + e.what());
    }
  }
  return run_benchmark(datasets, config.methods, config.metrics,
                       EvaluateOptions{config.budget_seconds, config.parallelism});
}

}  // namespace tsbench
