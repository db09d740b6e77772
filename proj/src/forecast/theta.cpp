#include "tsbench/forecast/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "tsbench/error.hpp"
#include "tsbench/forecast/exp_smoothing.hpp"
#include "tsbench/forecast/trend.hpp"

namespace tsbench {

namespace {

class ThetaState final : public ModelState {
 public:
  std::shared_ptr<const HoltWintersState> ses;
  double intercept = 0.0, slope = 0.0;
  std::size_t n = 0;
  std::vector<double> indices;  // empty when no seasonal adjustment

  std::vector<double> forecast(int h) const override {
    std::vector<double> out = ses->forecast(h);
    for (int j = 0; j < h; ++j) {
      const auto t = n + static_cast<std::size_t>(j);
      const double line = intercept + slope * static_cast<double>(t);
      double v = 0.5 * (out[static_cast<std::size_t>(j)] + line);
      if (!indices.empty()) v *= indices[t % indices.size()];
      out[static_cast<std::size_t>(j)] = v;
    }
    return out;
  }
};

}  // namespace

std::vector<double> theta_line(std::span<const double> y, double theta) {
  const auto [a, b] = ols_line(y);
  std::vector<double> out(y.size());
  for (std::size_t t = 0; t < y.size(); ++t)
    out[t] = theta * y[t] + (1.0 - theta) * (a + b * static_cast<double>(t));
  return out;
}

bool seasonality_detected(std::span<const double> y, int sp) {
  const auto n = y.size();
  if (sp < 2 || n < 3 * static_cast<std::size_t>(sp)) return false;
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double denom = 0.0;
  for (double v : y) denom += (v - mean) * (v - mean);
  if (denom == 0.0) return false;
  auto acf = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = lag; t < n; ++t) s += (y[t] - mean) * (y[t - lag] - mean);
    return s / denom;
  };
  double acc = 1.0;
  for (int k = 1; k < sp; ++k) acc += 2.0 * std::pow(acf(static_cast<std::size_t>(k)), 2);
  const double limit = 1.645 * std::sqrt(acc / static_cast<double>(n));
  return std::abs(acf(static_cast<std::size_t>(sp))) > limit;
}

std::vector<double> multiplicative_seasonal_indices(std::span<const double> y, int sp) {
  const auto n = y.size();
  const auto m = static_cast<std::size_t>(sp);
  if (n < 2 * m) throw Error(ErrorCode::SeriesTooShort, "decomposition needs two full seasons");
  // Centred moving average: 2 x m for even m, m for odd m.
  const std::size_t half = m / 2;
  std::vector<double> sums(m, 0.0), counts(m, 0.0);
  for (std::size_t t = half; t + half < n; ++t) {
    double ma = 0.0;
    if (m % 2 == 1) {
      for (std::size_t i = t - half; i <= t + half; ++i) ma += y[i];
      ma /= static_cast<double>(m);
    } else {
      ma = 0.5 * (y[t - half] + y[t + half]);
      for (std::size_t i = t - half + 1; i < t + half; ++i) ma += y[i];
      ma /= static_cast<double>(m);
    }
    sums[t % m] += y[t] / ma;
    counts[t % m] += 1.0;
  }
  std::vector<double> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = sums[k] / counts[k];
  const double avg = std::accumulate(idx.begin(), idx.end(), 0.0) / static_cast<double>(m);
  for (double& v : idx) v /= avg;
  return idx;
}

std::shared_ptr<const ModelState> fit_theta(std::span<const double> train, const ThetaParams& params,
                                            const Deadline& deadline) {
  if (train.size() < 3) throw Error(ErrorCode::SeriesTooShort, "theta needs at least 3 observations");
  if (params.sp < 1) throw Error(ErrorCode::InvalidParameter, "sp must be >= 1");
  if (params.deseasonalize &&
      std::any_of(train.begin(), train.end(), [](double v) { return v <= 0.0; }))
    throw Error(ErrorCode::NonPositiveData, "multiplicative deseasonalisation needs positive data");

  auto state = std::make_shared<ThetaState>();
  state->n = train.size();
  std::vector<double> y(train.begin(), train.end());
  if (params.deseasonalize && seasonality_detected(y, params.sp)) {
    state->indices = multiplicative_seasonal_indices(y, params.sp);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] /= state->indices[t % state->indices.size()];
  }
  std::tie(state->intercept, state->slope) = ols_line(y);
  state->ses = fit_ses(theta_line(y, 2.0), deadline);
  return state;
}

std::vector<double> theta_predict(std::span<const double> train, int h, const ThetaParams& params) {
  return fit_theta(train, params)->forecast(h);
}

}  // namespace tsbench
