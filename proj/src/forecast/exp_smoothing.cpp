#include "tsbench/forecast/exp_smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsbench/error.hpp"
#include "tsbench/forecast/optimize.hpp"

namespace tsbench {

namespace {

constexpr double kLowerBound = 1e-4;
constexpr double kUpperBound = 0.9999;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Components {
  double alpha, beta, gamma, phi;
  double level, trend;
  std::vector<double> seasonals;  // initial: sp values preceding the data
};

struct Recursion {
  double sse = kInf;
  double level = 0.0, trend = 0.0;
  std::vector<double> seasonals;
};

double damped_sum(double phi, int h) {
  double acc = 0.0, p = 1.0;
  for (int i = 0; i < h; ++i) {
    p *= phi;
    acc += p;
  }
  return acc;
}

// One pass of the smoothing equations over y; returns the one-step SSE and
// final states.
Recursion run(std::span<const double> y, ComponentMode trend_mode, ComponentMode seasonal_mode,
              const Components& c) {
  Recursion r;
  double l = c.level, b = c.trend;
  std::vector<double> s = c.seasonals;
  const std::size_t m = s.empty() ? 1 : s.size();
  const bool has_season = seasonal_mode != ComponentMode::none;
  double sse = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    double base = l;
    if (trend_mode == ComponentMode::additive) base = l + c.phi * b;
    if (trend_mode == ComponentMode::multiplicative) base = l * std::pow(b, c.phi);
    const std::size_t k = t % m;
    const double season = has_season ? s[k] : 0.0;
    double fitted = base;
    if (seasonal_mode == ComponentMode::additive) fitted = base + season;
    if (seasonal_mode == ComponentMode::multiplicative) fitted = base * season;
    const double e = y[t] - fitted;
    sse += e * e;
    if (!std::isfinite(sse)) return r;

    double deseasonalized = y[t];
    if (seasonal_mode == ComponentMode::additive) deseasonalized = y[t] - season;
    if (seasonal_mode == ComponentMode::multiplicative) deseasonalized = y[t] / season;
    const double prev_level = l;
    l = c.alpha * deseasonalized + (1.0 - c.alpha) * base;
    if (trend_mode == ComponentMode::additive)
      b = c.beta * (l - prev_level) + (1.0 - c.beta) * c.phi * b;
    if (trend_mode == ComponentMode::multiplicative)
      b = c.beta * (l / prev_level) + (1.0 - c.beta) * std::pow(b, c.phi);
    if (seasonal_mode == ComponentMode::additive)
      s[k] = c.gamma * (y[t] - base) + (1.0 - c.gamma) * season;
    if (seasonal_mode == ComponentMode::multiplicative)
      s[k] = c.gamma * (y[t] / base) + (1.0 - c.gamma) * season;
  }
  r.sse = sse;
  r.level = l;
  r.trend = b;
  // Rotate so seasonals[0] is the state for the first forecast step.
  if (has_season) {
    const std::size_t offset = y.size() % m;
    r.seasonals.resize(m);
    for (std::size_t k = 0; k < m; ++k) r.seasonals[k] = s[(offset + k) % m];
  }
  return r;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Components heuristic_start(std::span<const double> y, const ExpSmoothingParams& p) {
  Components c{};
  const bool seasonal = p.seasonal != ComponentMode::none;
  const auto sp = static_cast<std::size_t>(std::max(p.sp, 1));
  const std::size_t n = y.size();

  if (p.initialization == Initialization::legacy_heuristic) {
    c.level = y[0];
  } else if (seasonal) {
    c.level = mean_of(y.first(sp));
  } else {
    c.level = mean_of(y.first(std::min<std::size_t>(10, n)));
  }

  if (p.trend == ComponentMode::additive) {
    c.trend = (seasonal && n >= 2 * sp) ? (mean_of(y.subspan(sp, sp)) - mean_of(y.first(sp))) /
                                              static_cast<double>(sp)
                                        : y[1] - y[0];
  } else if (p.trend == ComponentMode::multiplicative) {
    c.trend = (seasonal && n >= 2 * sp)
                  ? std::pow(mean_of(y.subspan(sp, sp)) / mean_of(y.first(sp)), 1.0 / static_cast<double>(sp))
                  : y[1] / y[0];
  }

  if (seasonal) {
    // Average the within-season deviations over up to four complete seasons.
    const bool additive = p.seasonal == ComponentMode::additive;
    const std::size_t cycles = std::min<std::size_t>(4, n / sp);
    c.seasonals.assign(sp, 0.0);
    for (std::size_t cyc = 0; cyc < cycles; ++cyc) {
      const auto block = y.subspan(cyc * sp, sp);
      const double avg = mean_of(block);
      for (std::size_t k = 0; k < sp; ++k)
        c.seasonals[k] += (additive ? block[k] - avg : block[k] / avg) / static_cast<double>(cycles);
    }
  }
  return c;
}

// Named slots in the optimisation vector.
enum class Slot { alpha, beta, gamma, phi, level, trend };

}  // namespace

std::vector<double> HoltWintersState::forecast(int h) const {
  std::vector<double> out(static_cast<std::size_t>(h));
  for (int i = 1; i <= h; ++i) {
    double base = level;
    if (trend_mode == ComponentMode::additive) base = level + damped_sum(phi, i) * trend;
    if (trend_mode == ComponentMode::multiplicative) base = level * std::pow(trend, damped_sum(phi, i));
    double v = base;
    if (!seasonals.empty()) {
      const double s = seasonals[static_cast<std::size_t>(i - 1) % seasonals.size()];
      v = seasonal_mode == ComponentMode::additive ? base + s : base * s;
    }
    out[static_cast<std::size_t>(i - 1)] = v;
  }
  return out;
}

std::shared_ptr<const HoltWintersState> fit_exp_smoothing(std::span<const double> y,
                                                          const ExpSmoothingParams& p,
                                                          const Deadline& deadline) {
  const bool seasonal = p.seasonal != ComponentMode::none;
  const bool trended = p.trend != ComponentMode::none;
  if (seasonal && p.sp < 2) throw Error(ErrorCode::PeriodTooSmall, "seasonal smoothing needs sp >= 2");
  if (y.size() < 2 || (trended && y.size() < 3))
    throw Error(ErrorCode::SeriesTooShort, "exponential smoothing needs more observations");
  if (seasonal && y.size() < 2 * static_cast<std::size_t>(p.sp))
    throw Error(ErrorCode::SeriesTooShort, "seasonal smoothing needs two full seasons");
  if (p.trend == ComponentMode::multiplicative || p.seasonal == ComponentMode::multiplicative) {
    if (std::any_of(y.begin(), y.end(), [](double v) { return v <= 0.0; }))
      throw Error(ErrorCode::NonPositiveData, "multiplicative smoothing needs positive data");
  }

  const Components start = heuristic_start(y, p);
  const bool damped = trended && p.damped;

  std::vector<Slot> slots;
  std::vector<double> x0, lo, hi;
  auto add = [&](Slot s, double v, double l, double u) {
    slots.push_back(s);
    x0.push_back(std::clamp(v, l, u));
    lo.push_back(l);
    hi.push_back(u);
  };
  if (!p.alpha) add(Slot::alpha, 0.5, kLowerBound, kUpperBound);
  if (trended && !p.beta) add(Slot::beta, 0.1, kLowerBound, kUpperBound);
  if (seasonal && !p.gamma) add(Slot::gamma, 0.1, kLowerBound, kUpperBound);
  if (damped && !p.phi) add(Slot::phi, 0.98, kLowerBound, kUpperBound);
  if (p.initialization == Initialization::estimated) {
    add(Slot::level, start.level, -kInf, kInf);
    if (p.trend == ComponentMode::additive) add(Slot::trend, start.trend, -kInf, kInf);
    if (p.trend == ComponentMode::multiplicative) add(Slot::trend, start.trend, 1e-6, kInf);
  }

  auto assemble = [&](std::span<const double> x) {
    Components c = start;
    c.alpha = p.alpha.value_or(0.5);
    c.beta = p.beta.value_or(0.1);
    c.gamma = p.gamma.value_or(0.1);
    c.phi = damped ? p.phi.value_or(0.98) : 1.0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      switch (slots[i]) {
        case Slot::alpha: c.alpha = x[i]; break;
        case Slot::beta: c.beta = x[i]; break;
        case Slot::gamma: c.gamma = x[i]; break;
        case Slot::phi: c.phi = x[i]; break;
        case Slot::level: c.level = x[i]; break;
        case Slot::trend: c.trend = x[i]; break;
      }
    }
    return c;
  };
  auto objective = [&](std::span<const double> x) {
    return run(y, p.trend, p.seasonal, assemble(x)).sse;
  };

  optimize::Options options;
  options.tolerance = 1e-6;
  options.max_evaluations = 500;
  options.deadline = &deadline;

  std::vector<double> best_x = x0;
  int evaluations = 0;
  if (slots.size() == 1 && slots[0] == Slot::alpha) {
    auto r = optimize::golden_section([&](double a) { return objective(std::span<const double>(&a, 1)); },
                                      kLowerBound, kUpperBound, options);
    best_x = r.x;
    evaluations = r.evaluations;
  } else if (!slots.empty()) {
    // Seed alpha from a coarse grid; the SSE surface is often flat near the
    // default start.
    if (slots[0] == Slot::alpha) {
      double best = kInf;
      for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto trial = x0;
        trial[0] = a;
        const double v = objective(trial);
        ++evaluations;
        if (v < best) {
          best = v;
          x0[0] = a;
        }
      }
    }
    auto r = optimize::nelder_mead(objective, x0, lo, hi, options);
    best_x = r.x;
    evaluations += r.evaluations;
  }

  const Components c = assemble(best_x);
  const Recursion fit = run(y, p.trend, p.seasonal, c);
  if (!std::isfinite(fit.sse))
    throw Error(ErrorCode::NonConvergence, "smoothing recursion diverged after " +
                                               std::to_string(evaluations) + " evaluations");

  auto state = std::make_shared<HoltWintersState>();
  state->alpha = c.alpha;
  state->beta = trended ? c.beta : 0.0;
  state->gamma = seasonal ? c.gamma : 0.0;
  state->phi = c.phi;
  state->initial_level = c.level;
  state->level = fit.level;
  state->trend = fit.trend;
  state->seasonals = fit.seasonals;
  state->trend_mode = p.trend;
  state->seasonal_mode = p.seasonal;
  state->sse = fit.sse;
  state->evaluations = evaluations;
  return state;
}

std::vector<double> exp_smoothing_predict(std::span<const double> train, int h,
                                          const ExpSmoothingParams& params) {
  return fit_exp_smoothing(train, params)->forecast(h);
}

std::shared_ptr<const HoltWintersState> fit_ses(std::span<const double> train, const Deadline& deadline) {
  return fit_exp_smoothing(train, ExpSmoothingParams{}, deadline);
}

}  // namespace tsbench
