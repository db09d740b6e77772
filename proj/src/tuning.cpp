#include "tsbench/tuning.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "tsbench/error.hpp"
#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad(const std::string& name, const std::string& value) {
  throw Error(ErrorCode::InvalidParameter, fmt::format("invalid value '{}' for '{}'", value, name));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

int as_int(const std::string& name, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(name, v);
  return out;
}

double as_double(const std::string& name, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) bad(name, v);
  return out;
}

bool as_bool(const std::string& name, const std::string& v) {
  const std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad(name, v);
}

Regressor as_regressor(const std::string& name, const std::string& v) {
  const std::string s = lower(v);
  if (s == "ols" || s == "linearregression()" || s == "linearregression") return Regressor::ordinary_least_squares;
  if (s == "ridge" || s == "ridge()") return Regressor::ridge;
  if (s == "sgd" || s == "sgdregressor()" || s == "sgdregressor") return Regressor::sgd;
  if (s == "tree" || s == "randomforestregressor()" || s == "randomforestregressor") return Regressor::tree;
  bad(name, v);
}

ComponentMode as_mode(const std::string& name, const std::string& v) {
  const std::string s = lower(v);
  if (s == "none" || s == "n") return ComponentMode::none;
  if (s == "add" || s == "additive" || s == "a") return ComponentMode::additive;
  if (s == "mul" || s == "multiplicative" || s == "m") return ComponentMode::multiplicative;
  bad(name, v);
}

struct Scaling {
  double mean = 0.0, scale = 1.0;
};

}  // namespace

std::vector<double> box_cox(std::span<const double> x, double lambda) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw Error(ErrorCode::NonPositiveData, "Box-Cox needs positive data");
    out[i] = lambda == 0.0 ? std::log(x[i]) : (std::pow(x[i], lambda) - 1.0) / lambda;
  }
  return out;
}

std::vector<double> inverse_box_cox(std::span<const double> y, double lambda) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = lambda == 0.0 ? std::exp(y[i]) : std::pow(lambda * y[i] + 1.0, 1.0 / lambda);
  return out;
}

double estimate_box_cox_lambda(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::EmptyInput, "no data for Box-Cox");
  double log_sum = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveData, "Box-Cox needs positive data");
    log_sum += std::log(v);
  }
  const double n = static_cast<double>(x.size());
  double best_lambda = 1.0, best_ll = -kInf;
  for (int i = 0; i <= 60; ++i) {
    const double lambda = -1.0 + 0.05 * i;
    const std::vector<double> y = box_cox(x, lambda);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= n;
    if (!(var > 0.0)) continue;
    const double ll = (lambda - 1.0) * log_sum - 0.5 * n * std::log(var);
    if (ll > best_ll) {
      best_ll = ll;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

std::vector<double> pipeline_fit_predict(const Pipeline& pipeline, std::span<const double> train, int h,
                                         const Deadline& deadline) {
  std::vector<double> y(train.begin(), train.end());
  std::vector<std::pair<Transform, Scaling>> applied;
  for (Transform step : pipeline.steps) {
    Scaling s;
    if (step == Transform::standardize) {
      const double n = static_cast<double>(y.size());
      s.mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
      double var = 0.0;
      for (double v : y) var += (v - s.mean) * (v - s.mean);
      s.scale = var > 0.0 ? std::sqrt(var / n) : 1.0;
      for (double& v : y) v = (v - s.mean) / s.scale;
    } else {
      s.mean = pipeline.lambda ? *pipeline.lambda : estimate_box_cox_lambda(y);
      y = box_cox(y, s.mean);
    }
    applied.emplace_back(step, s);
  }
  std::vector<double> f = fit(pipeline.inner, y, deadline).predict(Horizon(h));
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
    if (it->first == Transform::standardize) {
      for (double& v : f) v = v * it->second.scale + it->second.mean;
    } else {
      f = inverse_box_cox(f, it->second.mean);
    }
  }
  for (double v : f)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinitePrediction, "inverse transform left the domain");
  return f;
}

void apply_parameter(ForecasterSpec& spec, const std::string& name, const std::string& value) {
  auto unknown = [&]() {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("{} has no parameter '{}'", to_string(method_of(spec)), name));
  };
  std::visit(
      overloaded{
          [&](NaiveParams& p) {
            if (name == "sp") {
              p.sp = as_int(name, value);
            } else if (name == "strategy") {
              const std::string s = lower(value);
              if (s == "last") p.strategy = NaiveStrategy::last;
              else if (s == "mean") p.strategy = NaiveStrategy::mean;
              else if (s == "drift") p.strategy = NaiveStrategy::drift;
              else bad(name, value);
            } else {
              unknown();
            }
          },
          [&](SeasonalNaiveParams& p) {
            if (name == "sp") p.sp = as_int(name, value);
            else unknown();
          },
          [&](TrendParams& p) {
            if (name == "regressor") p.regressor = as_regressor(name, value);
            else if (name == "ridge_lambda") p.ridge_lambda = as_double(name, value);
            else unknown();
          },
          [&](PolynomialTrendParams& p) {
            if (name == "regressor") p.regressor = as_regressor(name, value);
            else if (name == "degree") p.degree = as_int(name, value);
            else if (name == "ridge_lambda") p.ridge_lambda = as_double(name, value);
            else unknown();
          },
          [&](ExpSmoothingParams& p) {
            if (name == "sp") {
              p.sp = as_int(name, value);
            } else if (name == "smoothing_level" || name == "alpha") {
              p.alpha = as_double(name, value);
            } else if (name == "smoothing_trend" || name == "beta") {
              p.beta = as_double(name, value);
            } else if (name == "smoothing_seasonal" || name == "gamma") {
              p.gamma = as_double(name, value);
            } else if (name == "damping_trend" || name == "phi") {
              p.phi = as_double(name, value);
              p.damped = true;
            } else if (name == "initialization_method") {
              const std::string s = lower(value);
              if (s == "heuristic") p.initialization = Initialization::heuristic;
              else if (s == "legacy-heuristic" || s == "legacy_heuristic") p.initialization = Initialization::legacy_heuristic;
              else if (s == "estimated") p.initialization = Initialization::estimated;
              else bad(name, value);
            } else if (name == "trend") {
              p.trend = as_mode(name, value);
            } else if (name == "seasonal") {
              p.seasonal = as_mode(name, value);
            } else if (name == "damped" || name == "damped_trend") {
              p.damped = as_bool(name, value);
            } else {
              unknown();
            }
          },
          [&](AutoEtsParams& p) {
            if (name == "sp") p.sp = as_int(name, value);
            else unknown();
          },
          [&](ThetaParams& p) {
            if (name == "sp") p.sp = as_int(name, value);
            else if (name == "deseasonalize") p.deseasonalize = as_bool(name, value);
            else unknown();
          },
          [&](StlParams& p) {
            if (name == "sp") p.sp = as_int(name, value);
            else if (name == "seasonal_deg") p.seasonal_deg = as_int(name, value);
            else if (name == "trend_deg") p.trend_deg = as_int(name, value);
            else if (name == "seasonal_jump") p.seasonal_jump = as_int(name, value);
            else if (name == "trend_jump") p.trend_jump = as_int(name, value);
            else if (name == "robust") p.robust = as_bool(name, value);
            else if (name == "seasonal" || name == "seasonal_window") p.seasonal_window = as_int(name, value);
            else if (name == "trend" || name == "trend_window") p.trend_window = as_int(name, value);
            else unknown();
          },
          [&](AutoArimaParams& p) {
            if (name == "ic" || name == "information_criterion") {
              const std::string s = lower(value);
              if (s == "aic") p.ic = InformationCriterion::AIC;
              else if (s == "aicc") p.ic = InformationCriterion::AICc;
              else if (s == "bic") p.ic = InformationCriterion::BIC;
              else bad(name, value);
            } else {
              unknown();
            }
          },
      },
      spec);
}

ForecasterSpec apply_configuration(ForecasterSpec spec, const Configuration& config) {
  for (const auto& [name, value] : config) apply_parameter(spec, name, value);
  validate(spec);
  return spec;
}

SearchSpace default_search_space(Method method) {
  const std::vector<std::string> regressors{"LinearRegression()", "Ridge()", "SGDRegressor()",
                                            "RandomForestRegressor()"};
  switch (method) {
    case Method::Naive:
      return {{{"strategy", {"last", "mean", "drift"}}}};
    case Method::STLForecaster:
      return {{{"seasonal_deg", {"0", "1", "2"}},
               {"trend_deg", {"0", "1", "2"}},
               {"seasonal_jump", {"1", "2", "3"}},
               {"trend_jump", {"1", "2", "3"}},
               {"robust", {"true", "false"}}}};
    case Method::Theta:
      return {{{"deseasonalize", {"true", "false"}}}};
    case Method::Trend:
      return {{{"regressor", regressors}}};
    case Method::PolynomialTrend:
      return {{{"regressor", regressors}, {"degree", {"1", "2", "3"}}}};
    case Method::ExponentialSmoothing:
      return {{{"smoothing_level", {"0.1", "0.2", "0.3"}},
               {"smoothing_trend", {"0.1", "0.2", "0.3"}},
               {"damping_trend", {"0.2", "0.3", "0.4"}},
               {"initialization_method", {"heuristic", "legacy-heuristic", "estimated"}}}};
    default:
      return {};
  }
}

Pipeline default_tuning_template(Method method, int sp) {
  Pipeline p;
  p.steps = {Transform::boxcox, Transform::standardize};
  p.inner = default_spec(method, sp);
  if (auto* es = std::get_if<ExpSmoothingParams>(&p.inner)) {
    // The grid tunes trend smoothing and damping, so the model carries a
    // damped additive trend.
    es->trend = ComponentMode::additive;
    es->damped = true;
  }
  return p;
}

TuningResult random_search(const SearchSpace& space, const Pipeline& pipeline_template,
                           std::span<const double> train, int h, const SearchOptions& options,
                           const Deadline& deadline) {
  if (options.n_iter < 1) throw Error(ErrorCode::InvalidParameter, "n_iter must be >= 1");
  if (h < 1) throw Error(ErrorCode::InvalidParameter, "horizon must be >= 1");
  if (train.size() <= 2 * static_cast<std::size_t>(h))
    throw Error(ErrorCode::SeriesTooShort, "tuning needs more than 2h training points");
  for (const auto& [name, values] : space.parameters)
    if (values.empty()) throw Error(ErrorCode::InvalidParameter, fmt::format("no candidates for '{}'", name));

  const auto fit_part = train.first(train.size() - static_cast<std::size_t>(h));
  const auto holdout = train.last(static_cast<std::size_t>(h));

  TuningResult result;
  result.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  for (int it = 0; it < options.n_iter; ++it) {
    Trial trial;
    for (const auto& [name, values] : space.parameters) {
      std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
      trial.configuration[name] = values[pick(rng)];
    }
    deadline.check();
    try {
      Pipeline p = pipeline_template;
      p.inner = apply_configuration(p.inner, trial.configuration);
      const std::vector<double> f = pipeline_fit_predict(p, fit_part, h, deadline);
      trial.score = score(options.scoring, holdout, f, fit_part, options.mase_period);
      if (!std::isfinite(trial.score)) trial.score = kInf;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DeadlineExceeded) throw;
      trial.score = kInf;
      trial.error = std::string(to_string(e.code()));
    }
    result.trials.push_back(std::move(trial));
  }

  double best = kInf;
  bool found = false;
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    if (result.trials[i].score < best) {
      best = result.trials[i].score;
      result.best_index = i;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::AllTrialsFailed, "every sampled configuration failed");

  result.best = result.trials[result.best_index].configuration;
  result.best_pipeline = pipeline_template;
  result.best_pipeline.inner = apply_configuration(pipeline_template.inner, result.best);
  result.forecast = pipeline_fit_predict(result.best_pipeline, train, h, deadline);
  return result;
}

}  // namespace tsbench
