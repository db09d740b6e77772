#include "tsbench/forecast/forecaster.hpp"

#include <cmath>

#include "tsbench/error.hpp"
#include "tsbench/forecast/arima.hpp"
#include "tsbench/forecast/ets.hpp"
#include "tsbench/forecast/exp_smoothing.hpp"
#include "tsbench/forecast/naive.hpp"
#include "tsbench/forecast/stl.hpp"
#include "tsbench/forecast/theta.hpp"
#include "tsbench/forecast/trend.hpp"

namespace tsbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::vector<double> FittedModel::predict(Horizon h) const {
  std::vector<double> out = state_->forecast(h.steps());
  if (out.size() != static_cast<std::size_t>(h.steps()))
    throw Error(ErrorCode::NonFinitePrediction, "forecast has the wrong length");
  for (double v : out)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinitePrediction, "forecast contains a non-finite value");
  return out;
}

FittedModel fit(const ForecasterSpec& spec, std::span<const double> train, const Deadline& deadline) {
  validate(spec);
  if (train.empty()) throw Error(ErrorCode::SeriesTooShort, "empty training series");
  deadline.check();
  std::shared_ptr<const ModelState> state = std::visit(
      overloaded{
          [&](const NaiveParams& p) -> std::shared_ptr<const ModelState> { return fit_naive(train, p); },
          [&](const SeasonalNaiveParams& p) -> std::shared_ptr<const ModelState> {
            return fit_seasonal_naive(train, p);
          },
          [&](const TrendParams& p) -> std::shared_ptr<const ModelState> { return fit_trend(train, p); },
          [&](const PolynomialTrendParams& p) -> std::shared_ptr<const ModelState> {
            return fit_poly_trend(train, p);
          },
          [&](const ExpSmoothingParams& p) -> std::shared_ptr<const ModelState> {
            return fit_exp_smoothing(train, p, deadline);
          },
          [&](const AutoEtsParams& p) -> std::shared_ptr<const ModelState> {
            return fit_auto_ets(train, p, deadline);
          },
          [&](const ThetaParams& p) -> std::shared_ptr<const ModelState> { return fit_theta(train, p, deadline); },
          [&](const StlParams& p) -> std::shared_ptr<const ModelState> { return fit_stl(train, p); },
          [&](const AutoArimaParams& p) -> std::shared_ptr<const ModelState> {
            return fit_auto_arima(train, p, deadline);
          },
      },
      spec);
  return FittedModel(spec, std::move(state), train.size());
}

FittedModel fit(const ForecasterSpec& spec, const TimeSeries& train, const Deadline& deadline) {
  const std::vector<double> values = train.observed();
  return fit(spec, values, deadline);
}

std::vector<double> fit_predict(const ForecasterSpec& spec, std::span<const double> train, Horizon h,
                                const Deadline& deadline) {
  return fit(spec, train, deadline).predict(h);
}

}  // namespace tsbench
