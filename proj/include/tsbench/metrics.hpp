#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace tsbench {

enum class MetricKind { sMAPE, MASE, RMSE, QuantileLoss };

struct Metric {
  MetricKind kind = MetricKind::sMAPE;
  double quantile = 0.5;  // only for QuantileLoss

  friend bool operator==(const Metric&, const Metric&) = default;
  friend auto operator<=>(const Metric&, const Metric&) = default;
};

/// "smape", "mase", "rmse", "ql0.9".
std::string to_string(const Metric& m);
/// Case-insensitive inverse of to_string. Throws InvalidParameter.
Metric metric_from_string(std::string_view s);

/// (2/n) sum |a - p| / (|a| + |p|); terms with a = p = 0 contribute 0.
double smape(std::span<const double> actual, std::span<const double> predicted);

/// Mean absolute error scaled by the in-sample lag-m naive error of `train`.
double mase(std::span<const double> actual, std::span<const double> predicted,
            std::span<const double> train, int m);

double rmse(std::span<const double> actual, std::span<const double> predicted);

/// Pinball loss max(q (y - yhat), (q - 1)(y - yhat)).
double quantile_loss(double actual, double predicted, double q);

/// Mean pinball loss over a forecast window.
double quantile_loss(std::span<const double> actual, std::span<const double> predicted, double q);

/// Scores one forecast window; `m` is only used by MASE.
double score(const Metric& metric, std::span<const double> actual, std::span<const double> predicted,
             std::span<const double> train, int m);

/// Unweighted mean of per-series scores.
double aggregate(std::span<const double> per_series);

}  // namespace tsbench
