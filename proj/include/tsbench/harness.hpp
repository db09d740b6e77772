#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tsbench/forecast/spec.hpp"
#include "tsbench/metrics.hpp"
#include "tsbench/timeseries.hpp"

namespace tsbench {

enum class Status { Ok, NA, Timeout };

std::string_view to_string(Status s) noexcept;
Status status_from_string(std::string_view s);

struct EvaluationRecord {
  std::string dataset;
  std::string method;
  std::string frequency;
  std::map<Metric, double> scores;
  Status status = Status::Ok;
  std::string reason;  // error code name for NA
  double runtime_seconds = 0.0;
  int series_evaluated = 0;
};

/// A labelled forecaster. With `period_from_data`, any `sp` field in the
/// spec is replaced by the dataset's seasonal period before fitting.
struct MethodEntry {
  std::string name;
  ForecasterSpec spec;
  bool period_from_data = true;
};

/// The entry for `method` with default parameters, labelled by its name.
MethodEntry default_method(Method method);

/// `spec` with its seasonal period set to `sp` (no-op for specs without one).
ForecasterSpec with_period(ForecasterSpec spec, int sp);

struct EvaluateOptions {
  double budget_seconds = 3600.0;
  /// 1 runs the serial reference path; more uses OpenMP over series.
  int parallelism = 1;
};

/// Split, impute, fit, predict and score every series of `dataset`. Never
/// throws for forecaster failures: they become NA, budget exhaustion becomes
/// Timeout. A series whose metric cannot be computed (e.g. MASE with a zero
/// in-sample scale) is left out of that metric's mean only.
EvaluationRecord evaluate(const MethodEntry& method, const Dataset& dataset, std::span<const Metric> metrics,
                          const EvaluateOptions& options = {});

/// Serial reference implementation; `evaluate` with parallelism 1 calls it.
EvaluationRecord evaluate_serial(const MethodEntry& method, const Dataset& dataset,
                                 std::span<const Metric> metrics, double budget_seconds);

/// OpenMP implementation over series; results are merged in series order.
EvaluationRecord evaluate_parallel(const MethodEntry& method, const Dataset& dataset,
                                   std::span<const Metric> metrics, double budget_seconds, int threads);

struct BenchmarkConfig {
  std::vector<std::filesystem::path> datasets;
  std::vector<MethodEntry> methods;
  std::vector<Metric> metrics;
  double budget_seconds = 3600.0;
  int parallelism = 1;
};

/// Loads every dataset first (DatasetLoadError on any failure, before any
/// evaluation), then evaluates datasets x methods. Records are ordered by
/// (dataset, method).
std::vector<EvaluationRecord> run_benchmark(const BenchmarkConfig& config);

/// Same over already loaded datasets.
std::vector<EvaluationRecord> run_benchmark(std::span<const Dataset> datasets,
                                            std::span<const MethodEntry> methods,
                                            std::span<const Metric> metrics, const EvaluateOptions& options);

}  // namespace tsbench
