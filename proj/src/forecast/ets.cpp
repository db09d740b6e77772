#include "tsbench/forecast/ets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tsbench/error.hpp"
#include "tsbench/forecast/optimize.hpp"
#include "tsbench/forecast/trend.hpp"

namespace tsbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSeasonalPeriod = 24;

struct Params {
  double alpha = 0.5, beta = 0.0, gamma = 0.0, phi = 1.0;
  double level = 0.0, trend = 0.0;
};

struct Pass {
  double objective = kInf;  // -2 log-likelihood
  double level = 0.0, trend = 0.0;
  std::vector<double> seasonals;
};

// Innovations state-space recursion; the update equations do not depend on
// the error type, only the likelihood does.
Pass run(std::span<const double> y, const EtsModel& m, const Params& p,
         const std::vector<double>& initial_seasonals) {
  Pass out;
  double l = p.level, b = p.trend;
  std::vector<double> s = initial_seasonals;
  const std::size_t sp = s.empty() ? 1 : s.size();
  const bool trended = m.trend != EtsTrend::none;
  const double phi = m.trend == EtsTrend::damped ? p.phi : 1.0;
  double sse = 0.0, log_scale = 0.0;

  for (std::size_t t = 0; t < y.size(); ++t) {
    const std::size_t k = t % sp;
    const double q = trended ? l + phi * b : l;
    double f = q;
    if (m.season == EtsSeason::additive) f = q + s[k];
    if (m.season == EtsSeason::multiplicative) f = q * s[k];

    double e;
    if (m.error == EtsError::additive) {
      e = y[t] - f;
    } else {
      if (!(f > 0.0)) return out;
      e = (y[t] - f) / f;
      log_scale += std::log(f);
    }
    sse += e * e;

    double deseasonalized = y[t];
    if (m.season == EtsSeason::additive) deseasonalized = y[t] - s[k];
    if (m.season == EtsSeason::multiplicative) deseasonalized = y[t] / s[k];
    const double prev = l;
    l = q + p.alpha * (deseasonalized - q);
    if (trended) b = phi * b + (p.beta / p.alpha) * (l - prev - phi * b);
    if (m.season == EtsSeason::additive) s[k] += p.gamma * (y[t] - q - s[k]);
    if (m.season == EtsSeason::multiplicative) {
      if (!(q > 0.0)) return out;
      s[k] += p.gamma * (y[t] / q - s[k]);
    }
    if (!std::isfinite(l) || !std::isfinite(b) || !std::isfinite(sse)) return out;
  }

  const double n = static_cast<double>(y.size());
  if (!(sse > 0.0)) sse = std::numeric_limits<double>::min() * n;
  out.objective = n * (std::log(2.0 * std::numbers::pi * sse / n) + 1.0) + 2.0 * log_scale;
  out.level = l;
  out.trend = b;
  if (!s.empty()) {
    out.seasonals.resize(sp);
    const std::size_t offset = y.size() % sp;
    for (std::size_t k = 0; k < sp; ++k) out.seasonals[k] = s[(offset + k) % sp];
  }
  return out;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Seasonal indices from up to four complete seasons, each detrended by its
// own mean, then normalised.
std::vector<double> initial_seasonals(std::span<const double> y, EtsSeason season, std::size_t sp) {
  const std::size_t cycles = std::min<std::size_t>(4, y.size() / sp);
  std::vector<double> s(sp, season == EtsSeason::additive ? 0.0 : 1.0);
  if (season == EtsSeason::none) return {};
  std::fill(s.begin(), s.end(), 0.0);
  for (std::size_t c = 0; c < cycles; ++c) {
    const auto block = y.subspan(c * sp, sp);
    const double avg = mean_of(block);
    for (std::size_t k = 0; k < sp; ++k)
      s[k] += (season == EtsSeason::additive ? block[k] - avg : block[k] / avg) / static_cast<double>(cycles);
  }
  const double centre = mean_of(s);
  for (double& v : s) v = season == EtsSeason::additive ? v - centre : v / centre;
  return s;
}

int parameter_count(const EtsModel& m, std::size_t sp) {
  int k = 2;  // alpha, initial level
  if (m.trend != EtsTrend::none) k += 2;
  if (m.trend == EtsTrend::damped) k += 1;
  if (m.season != EtsSeason::none) k += 1 + static_cast<int>(sp) - 1;
  return k + 1;  // innovation variance
}

}  // namespace

std::string to_string(const EtsModel& m) {
  std::string out = "(";
  out += m.error == EtsError::additive ? "A" : "M";
  out += ", ";
  out += m.trend == EtsTrend::none ? "N" : m.trend == EtsTrend::additive ? "A" : "Ad";
  out += ", ";
  out += m.season == EtsSeason::none ? "N" : m.season == EtsSeason::additive ? "A" : "M";
  return out + ")";
}

std::vector<double> EtsState::forecast(int h) const {
  std::vector<double> out(static_cast<std::size_t>(h));
  double damp = 0.0, power = 1.0;
  for (int i = 1; i <= h; ++i) {
    power *= model.trend == EtsTrend::damped ? phi : 1.0;
    damp += power;
    double v = model.trend == EtsTrend::none ? level : level + damp * trend;
    if (!seasonals.empty()) {
      const double s = seasonals[static_cast<std::size_t>(i - 1) % seasonals.size()];
      v = model.season == EtsSeason::additive ? v + s : v * s;
    }
    out[static_cast<std::size_t>(i - 1)] = v;
  }
  return out;
}

std::shared_ptr<const EtsState> fit_ets_model(std::span<const double> y, const EtsModel& m, int sp,
                                              const Deadline& deadline) {
  const bool seasonal = m.season != EtsSeason::none;
  if (y.size() < 3) throw Error(ErrorCode::SeriesTooShort, "ETS needs at least 3 observations");
  if (seasonal && sp < 2) throw Error(ErrorCode::PeriodTooSmall, "seasonal ETS needs sp >= 2");
  const auto period = static_cast<std::size_t>(std::max(sp, 1));
  if (seasonal && y.size() < 2 * period)
    throw Error(ErrorCode::SeriesTooShort, "seasonal ETS needs two full seasons");
  const bool positive = std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
  if (!positive && (m.error == EtsError::multiplicative || m.season == EtsSeason::multiplicative))
    throw Error(ErrorCode::NonPositiveData, "multiplicative ETS components need positive data");

  const std::vector<double> seasons = initial_seasonals(y, m.season, period);
  Params start;
  if (seasonal) {
    start.level = mean_of(y.first(period));
    start.trend = (mean_of(y.subspan(period, period)) - start.level) / static_cast<double>(period);
  } else {
    const auto head = y.first(std::min<std::size_t>(10, y.size()));
    const auto [intercept, slope] = ols_line(head);
    start.level = m.trend == EtsTrend::none ? mean_of(head) : intercept;
    start.trend = slope;
  }

  const bool trended = m.trend != EtsTrend::none;
  const bool damped = m.trend == EtsTrend::damped;
  // Layout: alpha, beta/alpha, gamma/(1-alpha), phi, level, trend. The
  // fractions keep the usual admissibility region (beta < alpha,
  // gamma < 1 - alpha) a box.
  std::vector<double> x0{0.5}, lo{1e-4}, hi{0.9999};
  auto push = [&](double v, double l, double u) {
    x0.push_back(v);
    lo.push_back(l);
    hi.push_back(u);
  };
  if (trended) push(0.1, 1e-4, 0.9999);
  if (seasonal) push(0.1, 1e-4, 0.9999);
  if (damped) push(0.95, 0.8, 0.98);
  push(start.level, -kInf, kInf);
  if (trended) push(start.trend, -kInf, kInf);

  auto unpack = [&](std::span<const double> x) {
    Params p;
    std::size_t i = 0;
    p.alpha = x[i++];
    if (trended) p.beta = p.alpha * x[i++];
    if (seasonal) p.gamma = (1.0 - p.alpha) * x[i++];
    p.phi = damped ? x[i++] : 1.0;
    p.level = x[i++];
    if (trended) p.trend = x[i++];
    return p;
  };
  auto objective = [&](std::span<const double> x) { return run(y, m, unpack(x), seasons).objective; };

  double best = kInf;
  double best_alpha = x0[0];
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    x0[0] = a;
    const double v = objective(x0);
    if (v < best) {
      best = v;
      best_alpha = a;
    }
  }
  x0[0] = best_alpha;

  optimize::Options options;
  options.tolerance = 1e-6;
  options.max_evaluations = 500;
  options.deadline = &deadline;
  const auto result = optimize::nelder_mead(objective, x0, lo, hi, options);
  const Params p = unpack(result.x);
  const Pass fit = run(y, m, p, seasons);
  if (!std::isfinite(fit.objective))
    throw Error(ErrorCode::NonConvergence, "ETS " + to_string(m) + " likelihood is not finite");

  const int k = parameter_count(m, period);
  const double n = static_cast<double>(y.size());
  if (n - k - 1 <= 0) throw Error(ErrorCode::SeriesTooShort, "too few observations for ETS " + to_string(m));

  auto state = std::make_shared<EtsState>();
  state->model = m;
  state->alpha = p.alpha;
  state->beta = p.beta;
  state->gamma = p.gamma;
  state->phi = p.phi;
  state->level = fit.level;
  state->trend = fit.trend;
  state->seasonals = fit.seasonals;
  state->log_likelihood = -0.5 * fit.objective;
  state->aicc = fit.objective + 2.0 * k + 2.0 * k * (k + 1) / (n - k - 1);
  state->candidates.push_back({m, state->log_likelihood, state->aicc, k});
  return state;
}

std::shared_ptr<const EtsState> fit_auto_ets(std::span<const double> y, const AutoEtsParams& params,
                                             const Deadline& deadline) {
  if (y.size() < 3) throw Error(ErrorCode::SeriesTooShort, "ETS needs at least 3 observations");
  const bool positive = std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
  const bool seasonal_ok = params.sp >= 2 && params.sp <= kMaxSeasonalPeriod &&
                           y.size() >= 2 * static_cast<std::size_t>(params.sp);

  std::vector<EtsCandidate> fitted;
  std::shared_ptr<const EtsState> best;
  for (EtsError e : {EtsError::additive, EtsError::multiplicative}) {
    if (e == EtsError::multiplicative && !positive) continue;
    for (EtsTrend t : {EtsTrend::none, EtsTrend::additive, EtsTrend::damped}) {
      for (EtsSeason s : {EtsSeason::none, EtsSeason::additive, EtsSeason::multiplicative}) {
        if (s != EtsSeason::none && !seasonal_ok) continue;
        if (s == EtsSeason::multiplicative && !positive) continue;
        deadline.check();
        std::shared_ptr<const EtsState> candidate;
        try {
          candidate = fit_ets_model(y, {e, t, s}, params.sp, deadline);
        } catch (const Error& err) {
          if (err.code() == ErrorCode::DeadlineExceeded) throw;
          continue;
        }
        fitted.push_back(candidate->candidates.front());
        if (!best || candidate->aicc < best->aicc) best = candidate;
      }
    }
  }
  if (!best) throw Error(ErrorCode::NonConvergence, "no ETS candidate could be fitted");
  auto out = std::make_shared<EtsState>(*best);
  out->candidates = std::move(fitted);
  return out;
}

std::vector<double> ets_auto_predict(std::span<const double> train, int h, const AutoEtsParams& params) {
  return fit_auto_ets(train, params)->forecast(h);
}

}  // namespace tsbench
