#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tsbench {

enum class Method {
  Naive,
  SeasonalNaive,
  Trend,
  PolynomialTrend,
  ExponentialSmoothing,
  AutoETS,
  Theta,
  STLForecaster,
  AutoARIMA,
};

inline constexpr Method kAllMethods[] = {
    Method::Naive,         Method::SeasonalNaive, Method::Trend,
    Method::PolynomialTrend, Method::ExponentialSmoothing, Method::AutoETS,
    Method::Theta,         Method::STLForecaster, Method::AutoARIMA,
};

std::string_view to_string(Method m) noexcept;
/// Accepts the names above case-insensitively plus "STL" and "ETS"/"ARIMA"
/// shorthands. Throws InvalidParameter.
Method method_from_string(std::string_view s);

enum class NaiveStrategy { last, mean, drift };

/// With sp > 1, `last` repeats the final season and `mean` forecasts the
/// per-position seasonal means. `drift` requires sp == 1.
struct NaiveParams {
  NaiveStrategy strategy = NaiveStrategy::last;
  int sp = 1;
};

struct SeasonalNaiveParams {
  int sp = 1;
};

/// The stochastic-gradient option is served by OLS; `tree` is a
/// deterministic regression tree over the time index.
enum class Regressor { ordinary_least_squares, ridge, sgd, tree };

struct TrendParams {
  Regressor regressor = Regressor::ordinary_least_squares;
  double ridge_lambda = 1.0;
};

struct PolynomialTrendParams {
  int degree = 1;
  Regressor regressor = Regressor::ordinary_least_squares;
  double ridge_lambda = 1.0;
};

enum class ComponentMode { none, additive, multiplicative };
enum class Initialization { heuristic, legacy_heuristic, estimated };

/// Holt-Winters family. Unset smoothing parameters are estimated by
/// minimising in-sample one-step SSE.
struct ExpSmoothingParams {
  std::optional<double> alpha;  // level
  std::optional<double> beta;   // trend
  std::optional<double> phi;    // damping, only used when damped
  std::optional<double> gamma;  // seasonal
  int sp = 1;
  Initialization initialization = Initialization::estimated;
  ComponentMode trend = ComponentMode::none;
  bool damped = false;
  ComponentMode seasonal = ComponentMode::none;
};

struct AutoEtsParams {
  int sp = 1;
};

struct ThetaParams {
  int sp = 1;
  bool deseasonalize = true;
};

struct StlParams {
  int sp = 2;
  int seasonal_deg = 1;
  int trend_deg = 1;
  int seasonal_jump = 1;
  int trend_jump = 1;
  bool robust = false;
  int seasonal_window = 7;
  /// Unset: smallest odd integer >= 1.5 sp / (1 - 1.5 / seasonal_window).
  std::optional<int> trend_window;
};

enum class InformationCriterion { AIC, AICc, BIC };

struct ArimaOrder {
  int p = 0;
  int d = 0;
  int q = 0;
  bool with_constant = false;
  std::vector<double> phi_coeffs;
  std::vector<double> theta_coeffs;
  double constant = 0.0;
  double sigma2 = 0.0;
};

struct AutoArimaParams {
  InformationCriterion ic = InformationCriterion::AICc;
  /// When set, skip order selection and fit exactly this (p, d, q, constant).
  std::optional<ArimaOrder> order;
};

using ForecasterSpec =
    std::variant<NaiveParams, SeasonalNaiveParams, TrendParams, PolynomialTrendParams,
                 ExpSmoothingParams, AutoEtsParams, ThetaParams, StlParams, AutoArimaParams>;

Method method_of(const ForecasterSpec& spec) noexcept;

/// The default configuration for a method with seasonal period `sp`.
ForecasterSpec default_spec(Method method, int sp);

/// Throws InvalidParameter when params fall outside the method's schema.
void validate(const ForecasterSpec& spec);

/// Human-readable "Method(key=value, ...)" form, stable across runs.
std::string describe(const ForecasterSpec& spec);

std::string_view to_string(NaiveStrategy s) noexcept;
std::string_view to_string(Regressor r) noexcept;
std::string_view to_string(ComponentMode m) noexcept;
std::string_view to_string(Initialization i) noexcept;
std::string_view to_string(InformationCriterion ic) noexcept;

}  // namespace tsbench
