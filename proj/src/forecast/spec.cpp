#include "tsbench/forecast/spec.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:g}", *v) : "auto"; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Naive: return "Naive";
    case Method::SeasonalNaive: return "SeasonalNaive";
    case Method::Trend: return "Trend";
    case Method::PolynomialTrend: return "PolynomialTrend";
    case Method::ExponentialSmoothing: return "ExponentialSmoothing";
    case Method::AutoETS: return "AutoETS";
    case Method::Theta: return "Theta";
    case Method::STLForecaster: return "STLForecaster";
    case Method::AutoARIMA: return "AutoARIMA";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  const std::string key = lower(s);
  for (Method m : kAllMethods)
    if (lower(to_string(m)) == key) return m;
  if (key == "stl") return Method::STLForecaster;
  if (key == "ets") return Method::AutoETS;
  if (key == "arima") return Method::AutoARIMA;
  if (key == "polytrend") return Method::PolynomialTrend;
  if (key == "es") return Method::ExponentialSmoothing;
  throw Error(ErrorCode::InvalidParameter, fmt::format("unknown method '{}'", s));
}

std::string_view to_string(NaiveStrategy s) noexcept {
  switch (s) {
    case NaiveStrategy::last: return "last";
    case NaiveStrategy::mean: return "mean";
    case NaiveStrategy::drift: return "drift";
  }
  return "?";
}

std::string_view to_string(Regressor r) noexcept {
  switch (r) {
    case Regressor::ordinary_least_squares: return "ols";
    case Regressor::ridge: return "ridge";
    case Regressor::sgd: return "sgd";
    case Regressor::tree: return "tree";
  }
  return "?";
}

std::string_view to_string(ComponentMode m) noexcept {
  switch (m) {
    case ComponentMode::none: return "none";
    case ComponentMode::additive: return "add";
    case ComponentMode::multiplicative: return "mul";
  }
  return "?";
}

std::string_view to_string(Initialization i) noexcept {
  switch (i) {
    case Initialization::heuristic: return "heuristic";
    case Initialization::legacy_heuristic: return "legacy_heuristic";
    case Initialization::estimated: return "estimated";
  }
  return "?";
}

std::string_view to_string(InformationCriterion ic) noexcept {
  switch (ic) {
    case InformationCriterion::AIC: return "aic";
    case InformationCriterion::AICc: return "aicc";
    case InformationCriterion::BIC: return "bic";
  }
  return "?";
}

Method method_of(const ForecasterSpec& spec) noexcept {
  return std::visit(overloaded{
                        [](const NaiveParams&) { return Method::Naive; },
                        [](const SeasonalNaiveParams&) { return Method::SeasonalNaive; },
                        [](const TrendParams&) { return Method::Trend; },
                        [](const PolynomialTrendParams&) { return Method::PolynomialTrend; },
                        [](const ExpSmoothingParams&) { return Method::ExponentialSmoothing; },
                        [](const AutoEtsParams&) { return Method::AutoETS; },
                        [](const ThetaParams&) { return Method::Theta; },
                        [](const StlParams&) { return Method::STLForecaster; },
                        [](const AutoArimaParams&) { return Method::AutoARIMA; },
                    },
                    spec);
}

ForecasterSpec default_spec(Method method, int sp) {
  switch (method) {
    case Method::Naive: return NaiveParams{};
    case Method::SeasonalNaive: return SeasonalNaiveParams{sp};
    case Method::Trend: return TrendParams{};
    case Method::PolynomialTrend: return PolynomialTrendParams{};
    case Method::ExponentialSmoothing: return ExpSmoothingParams{};
    case Method::AutoETS: return AutoEtsParams{sp};
    case Method::Theta: return ThetaParams{sp, true};
    case Method::STLForecaster: {
      StlParams p;
      p.sp = sp;
      return p;
    }
    case Method::AutoARIMA: return AutoArimaParams{};
  }
  throw Error(ErrorCode::InvalidParameter, "unknown method");
}

void validate(const ForecasterSpec& spec) {
  auto unit = [](const std::optional<double>& v) { return !v || (*v >= 0.0 && *v <= 1.0); };
  std::visit(overloaded{
                 [](const NaiveParams& p) { require(p.sp >= 1, "sp must be >= 1"); },
                 [](const SeasonalNaiveParams& p) { require(p.sp >= 1, "sp must be >= 1"); },
                 [](const TrendParams& p) { require(p.ridge_lambda >= 0.0, "ridge lambda must be >= 0"); },
                 [](const PolynomialTrendParams& p) {
                   require(p.degree >= 1 && p.degree <= 3, "degree must be 1, 2 or 3");
                   require(p.ridge_lambda >= 0.0, "ridge lambda must be >= 0");
                 },
                 [&](const ExpSmoothingParams& p) {
                   require(p.sp >= 1, "sp must be >= 1");
                   require(unit(p.alpha) && unit(p.beta) && unit(p.gamma), "smoothing parameters must lie in [0, 1]");
                   require(!p.phi || (*p.phi > 0.0 && *p.phi <= 1.0), "damping must lie in (0, 1]");
                   require(p.seasonal == ComponentMode::none || p.sp >= 2, "seasonal smoothing needs sp >= 2");
                   require(!p.damped || p.trend != ComponentMode::none, "damping needs a trend");
                 },
                 [](const AutoEtsParams& p) { require(p.sp >= 1, "sp must be >= 1"); },
                 [](const ThetaParams& p) { require(p.sp >= 1, "sp must be >= 1"); },
                 [](const StlParams& p) {
                   require(p.seasonal_deg >= 0 && p.seasonal_deg <= 2 && p.trend_deg >= 0 && p.trend_deg <= 2,
                           "STL degrees must be 0, 1 or 2");
                   require(p.seasonal_jump >= 1 && p.seasonal_jump <= 3 && p.trend_jump >= 1 && p.trend_jump <= 3,
                           "STL jumps must be 1, 2 or 3");
                   require(p.seasonal_window >= 7 && p.seasonal_window % 2 == 1,
                           "seasonal window must be odd and >= 7");
                   require(!p.trend_window || (*p.trend_window >= 3 && *p.trend_window % 2 == 1),
                           "trend window must be odd and >= 3");
                 },
                 [](const AutoArimaParams& p) {
                   if (!p.order) return;
                   require(p.order->p >= 0 && p.order->p <= 5 && p.order->q >= 0 && p.order->q <= 5 &&
                               p.order->d >= 0 && p.order->d <= 2,
                           "ARIMA orders must satisfy p, q <= 5 and d <= 2");
                 },
             },
             spec);
}

std::string describe(const ForecasterSpec& spec) {
  const std::string body = std::visit(
      overloaded{
          [](const NaiveParams& p) { return fmt::format("strategy={}, sp={}", to_string(p.strategy), p.sp); },
          [](const SeasonalNaiveParams& p) { return fmt::format("sp={}", p.sp); },
          [](const TrendParams& p) {
            return fmt::format("regressor={}, lambda={:g}", to_string(p.regressor), p.ridge_lambda);
          },
          [](const PolynomialTrendParams& p) {
            return fmt::format("degree={}, regressor={}, lambda={:g}", p.degree, to_string(p.regressor),
                               p.ridge_lambda);
          },
          [](const ExpSmoothingParams& p) {
            return fmt::format("alpha={}, beta={}, phi={}, gamma={}, sp={}, init={}, trend={}, damped={}, seasonal={}",
                               fmt_opt(p.alpha), fmt_opt(p.beta), fmt_opt(p.phi), fmt_opt(p.gamma), p.sp,
                               to_string(p.initialization), to_string(p.trend), p.damped,
                               to_string(p.seasonal));
          },
          [](const AutoEtsParams& p) { return fmt::format("sp={}", p.sp); },
          [](const ThetaParams& p) { return fmt::format("sp={}, deseasonalize={}", p.sp, p.deseasonalize); },
          [](const StlParams& p) {
            return fmt::format(
                "sp={}, seasonal_deg={}, trend_deg={}, seasonal_jump={}, trend_jump={}, robust={}, "
                "seasonal={}, trend={}",
                p.sp, p.seasonal_deg, p.trend_deg, p.seasonal_jump, p.trend_jump, p.robust, p.seasonal_window,
                p.trend_window ? std::to_string(*p.trend_window) : std::string("auto"));
          },
          [](const AutoArimaParams& p) {
            if (!p.order) return fmt::format("ic={}", to_string(p.ic));
            return fmt::format("ic={}, order=({},{},{}), constant={}", to_string(p.ic), p.order->p, p.order->d,
                               p.order->q, p.order->with_constant);
          },
      },
      spec);
  return fmt::format("{}({})", to_string(method_of(spec)), body);
}

}  // namespace tsbench
