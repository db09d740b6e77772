#include "tsbench/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

void check_pair(std::span<const double> a, std::span<const double> p) {
  if (a.size() != p.size())
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} actual vs {} predicted", a.size(), p.size()));
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no forecast points");
}

}  // namespace

std::string to_string(const Metric& m) {
  switch (m.kind) {
    case MetricKind::sMAPE: return "smape";
    case MetricKind::MASE: return "mase";
    case MetricKind::RMSE: return "rmse";
    case MetricKind::QuantileLoss: return fmt::format("ql{:g}", m.quantile);
  }
  return "?";
}

Metric metric_from_string(std::string_view s) {
  std::string key(s);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "smape") return {MetricKind::sMAPE};
  if (key == "mase") return {MetricKind::MASE};
  if (key == "rmse") return {MetricKind::RMSE};
  if (key.rfind("ql", 0) == 0 && key.size() > 2) {
    double q = 0.0;
    try {
      std::size_t used = 0;
      q = std::stod(key.substr(2), &used);
      if (used != key.size() - 2) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParameter, fmt::format("bad quantile in '{}'", s));
    }
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidQuantile, fmt::format("q = {}", q));
    return {MetricKind::QuantileLoss, q};
  }
  throw Error(ErrorCode::InvalidParameter, fmt::format("unknown metric '{}'", s));
}

double smape(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double denom = std::abs(actual[i]) + std::abs(predicted[i]);
    if (denom > 0.0) acc += std::abs(actual[i] - predicted[i]) / denom;
  }
  return 2.0 * acc / static_cast<double>(actual.size());
}

double mase(std::span<const double> actual, std::span<const double> predicted,
            std::span<const double> train, int m) {
  check_pair(actual, predicted);
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "seasonal lag must be >= 1");
  const auto lag = static_cast<std::size_t>(m);
  if (train.size() <= lag)
    throw Error(ErrorCode::SeriesTooShort, fmt::format("MASE needs more than {} training points", m));
  double scale = 0.0;
  for (std::size_t i = lag; i < train.size(); ++i) scale += std::abs(train[i] - train[i - lag]);
  scale /= static_cast<double>(train.size() - lag);
  if (scale == 0.0) throw Error(ErrorCode::ZeroDenominator, "in-sample naive error is zero");
  double err = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) err += std::abs(actual[i] - predicted[i]);
  return err / static_cast<double>(actual.size()) / scale;
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) acc += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
  return std::sqrt(acc / static_cast<double>(actual.size()));
}

double quantile_loss(double actual, double predicted, double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidQuantile, fmt::format("q = {}", q));
  const double d = actual - predicted;
  return std::max(q * d, (q - 1.0) * d);
}

double quantile_loss(std::span<const double> actual, std::span<const double> predicted, double q) {
  check_pair(actual, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) acc += quantile_loss(actual[i], predicted[i], q);
  return acc / static_cast<double>(actual.size());
}

double score(const Metric& metric, std::span<const double> actual, std::span<const double> predicted,
             std::span<const double> train, int m) {
  switch (metric.kind) {
    case MetricKind::sMAPE: return smape(actual, predicted);
    case MetricKind::MASE: return mase(actual, predicted, train, m);
    case MetricKind::RMSE: return rmse(actual, predicted);
    case MetricKind::QuantileLoss: return quantile_loss(actual, predicted, metric.quantile);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown metric");
}

double aggregate(std::span<const double> per_series) {
  if (per_series.empty()) throw Error(ErrorCode::EmptyInput, "nothing to aggregate");
  return std::accumulate(per_series.begin(), per_series.end(), 0.0) / static_cast<double>(per_series.size());
}

}  // namespace tsbench
