#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "tsbench/error.hpp"
#include "tsbench/forecast/exp_smoothing.hpp"
#include "tsbench/forecast/forecaster.hpp"
#include "tsbench/forecast/naive.hpp"
#include "tsbench/forecast/theta.hpp"
#include "tsbench/forecast/trend.hpp"

using namespace tsbench;
using V = std::vector<double>;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

void check_abs(const V& a, const V& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(a[i] - b[i]) <= tol);
  }
}

V noisy_series(std::size_t n, std::uint64_t seed, double level = 50.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  V v(n);
  for (std::size_t t = 0; t < n; ++t)
    v[t] = level + 0.4 * static_cast<double>(t) + 5.0 * std::sin(2.0 * M_PI * static_cast<double>(t) / 12.0) + noise(rng);
  return v;
}

}  // namespace

TEST_CASE("naive strategies") {
  CHECK(naive_predict(V{1, 4, 5}, 3, {}) == V{5, 5, 5});
  check_abs(naive_predict(V{1, 3, 5}, 2, {NaiveStrategy::drift, 1}), V{7, 9}, 1e-12);
  check_abs(naive_predict(V{1, 2, 3}, 2, {NaiveStrategy::mean, 1}), V{2, 2}, 1e-12);
  // Seasonal variants: last repeats the final season, mean averages by position.
  CHECK(naive_predict(V{1, 2, 3, 4}, 3, {NaiveStrategy::last, 2}) == V{3, 4, 3});
  check_abs(naive_predict(V{1, 2, 3, 4}, 2, {NaiveStrategy::mean, 2}), V{2, 3}, 1e-12);
  CHECK(code_of([] { naive_predict(V{1, 2, 3, 4}, 2, {NaiveStrategy::drift, 2}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("seasonal naive") {
  CHECK(seasonal_naive_predict(V{1, 2, 3, 4}, 2, 2) == V{3, 4});
  CHECK(seasonal_naive_predict(V{1, 2, 3, 4}, 3, 2) == V{3, 4, 3});
  const V y = noisy_series(30, 1);
  CHECK(seasonal_naive_predict(y, 7, 1) == naive_predict(y, 7, {}));
  CHECK(code_of([] { seasonal_naive_predict(V{1, 2}, 2, 3); }) == ErrorCode::SeriesTooShort);
}

TEST_CASE("trend regression") {
  check_abs(trend_predict(V{1, 2, 3, 4, 5}, 2, {}), V{6, 7}, 1e-9);
  check_abs(trend_predict(V{3.5, 3.5, 3.5}, 1, {}), V{3.5}, 1e-12);

  TrendParams ridge0{Regressor::ridge, 0.0};
  check_abs(trend_predict(V{1, 2, 3}, 1, ridge0), trend_predict(V{1, 2, 3}, 1, {}), 1e-9);

  // Closed-form ridge with an unpenalised intercept on x = 1..n.
  const V y{2.0, 3.1, 3.9, 5.2, 5.8, 7.1};
  const double lambda = 1.0;
  const double n = static_cast<double>(y.size());
  const double xbar = (n + 1.0) / 2.0;
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    sxy += (x - xbar) * (y[i] - ybar);
    sxx += (x - xbar) * (x - xbar);
  }
  const double slope = sxy / (sxx + lambda);
  const double intercept = ybar - slope * xbar;
  check_abs(trend_predict(y, 2, {Regressor::ridge, lambda}), V{intercept + slope * 7, intercept + slope * 8}, 1e-9);

  // The stochastic-gradient option is served by OLS.
  check_abs(trend_predict(y, 3, {Regressor::sgd, 1.0}), trend_predict(y, 3, {}), 1e-12);
  const auto tree = trend_predict(y, 3, {Regressor::tree, 1.0});
  CHECK(tree.size() == 3);
  for (double v : tree) CHECK(std::isfinite(v));
}

TEST_CASE("polynomial trend") {
  check_abs(poly_trend_predict(V{1, 4, 9, 16}, 1, {2, Regressor::ordinary_least_squares, 1.0}), V{25}, 1e-6);
  const V y = noisy_series(40, 2);
  for (auto reg : {Regressor::ordinary_least_squares, Regressor::ridge}) {
    check_abs(poly_trend_predict(y, 5, {1, reg, 1.0}), trend_predict(y, 5, {reg, 1.0}), 1e-9);
  }
  CHECK(code_of([] { poly_trend_predict(V{1, 2, 3}, 1, {3, Regressor::ordinary_least_squares, 1.0}); }) ==
        ErrorCode::SeriesTooShort);
}

TEST_CASE("simple exponential smoothing") {
  const V y = noisy_series(25, 3);
  ExpSmoothingParams alpha1;
  alpha1.alpha = 1.0;
  check_abs(exp_smoothing_predict(y, 4, alpha1), naive_predict(y, 4, {}), 1e-12);

  ExpSmoothingParams half;
  half.alpha = 0.5;
  half.initialization = Initialization::legacy_heuristic;
  check_abs(exp_smoothing_predict(V{0, 10}, 3, half), V{5, 5, 5}, 1e-12);

  ExpSmoothingParams frozen;
  frozen.alpha = 0.0;
  frozen.initialization = Initialization::legacy_heuristic;
  check_abs(exp_smoothing_predict(y, 3, frozen), V(3, y.front()), 1e-12);

  // Heuristic start is the mean of the first ten values.
  ExpSmoothingParams heur;
  heur.alpha = 0.0;
  heur.initialization = Initialization::heuristic;
  const double mean10 = std::accumulate(y.begin(), y.begin() + 10, 0.0) / 10.0;
  check_abs(exp_smoothing_predict(y, 2, heur), V{mean10, mean10}, 1e-12);
}

TEST_CASE("estimated SES recovers the generating alpha") {
  const double alpha = 0.3;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> innovation(0.0, 1.0);
  V y;
  double level = 100.0;
  for (int t = 0; t < 400; ++t) {
    const double e = innovation(rng);
    y.push_back(level + e);
    level += alpha * e;
  }
  const auto state = fit_ses(y);
  CHECK(std::abs(state->alpha - alpha) < 0.1);
}

TEST_CASE("Holt-Winters smoothing") {
  const V y = noisy_series(60, 4);
  ExpSmoothingParams p;
  p.trend = ComponentMode::additive;
  p.seasonal = ComponentMode::additive;
  p.sp = 12;
  const auto f = exp_smoothing_predict(y, 12, p);
  // A fit that captures trend and season beats repeating the last value.
  const V truth = [&] {
    V v;
    for (int t = 60; t < 72; ++t) v.push_back(50.0 + 0.4 * t + 5.0 * std::sin(2.0 * M_PI * t / 12.0));
    return v;
  }();
  double err_hw = 0.0, err_naive = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    err_hw += std::abs(f[i] - truth[i]);
    err_naive += std::abs(y.back() - truth[i]);
  }
  CHECK(err_hw < err_naive);

  ExpSmoothingParams mult = p;
  mult.seasonal = ComponentMode::multiplicative;
  V with_zero = y;
  with_zero[5] = 0.0;
  CHECK(code_of([&] { exp_smoothing_predict(with_zero, 3, mult); }) == ErrorCode::NonPositiveData);
  CHECK(code_of([&] { exp_smoothing_predict(V(20, 1.0), 3, p); }) == ErrorCode::SeriesTooShort);
  ExpSmoothingParams bad = p;
  bad.sp = 1;
  CHECK(code_of([&] { exp_smoothing_predict(y, 3, bad); }) == ErrorCode::PeriodTooSmall);
}

TEST_CASE("theta lines") {
  const V y = noisy_series(30, 5);
  check_abs(theta_line(y, 1.0), y, 1e-9);
  // theta = 0 is the least-squares line; lines average back to the data.
  const auto [a, b] = ols_line(y);
  const V zero = theta_line(y, 0.0);
  const V two = theta_line(y, 2.0);
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(std::abs(zero[t] - (a + b * static_cast<double>(t))) < 1e-9);
    CHECK(std::abs(0.5 * (zero[t] + two[t]) - y[t]) < 1e-9);
  }
  // Second differences scale by theta.
  for (std::size_t t = 2; t < y.size(); ++t) {
    const double d2 = y[t] - 2 * y[t - 1] + y[t - 2];
    const double d2_two = two[t] - 2 * two[t - 1] + two[t - 2];
    CHECK(std::abs(d2_two - 2.0 * d2) < 1e-9);
  }
}

TEST_CASE("theta on a straight line") {
  // theta = 2 line equals the data, whose SES forecast sits at the last
  // value (alpha at its upper bound); the theta = 0 line extrapolates
  // exactly. The forecast is their average.
  const V y{2, 4, 6, 8, 10};
  const auto f = theta_predict(y, 2, {1, false});
  const V oracle{0.5 * (10.0 + 12.0), 0.5 * (10.0 + 14.0)};
  check_abs(f, oracle, 1e-2);
}

TEST_CASE("theta seasonality and errors") {
  CHECK(code_of([] { theta_predict(V{3, -1, 4, 5, 6}, 2, {1, true}); }) == ErrorCode::NonPositiveData);
  CHECK(code_of([] { theta_predict(V{3, 0, 4, 5, 6}, 2, {4, true}); }) == ErrorCode::NonPositiveData);
  CHECK_NOTHROW(theta_predict(V{3, -1, 4, 5, 6}, 2, {1, false}));
  CHECK(code_of([] { theta_predict(V{1, 2}, 2, {1, false}); }) == ErrorCode::SeriesTooShort);

  V seasonal;
  for (int t = 0; t < 72; ++t) seasonal.push_back(100.0 * (1.0 + 0.3 * std::sin(2.0 * M_PI * t / 12.0)));
  CHECK(seasonality_detected(seasonal, 12));
  const V flat(72, 5.0);
  CHECK_FALSE(seasonality_detected(flat, 12));
  const auto idx = multiplicative_seasonal_indices(seasonal, 12);
  CHECK(std::accumulate(idx.begin(), idx.end(), 0.0) == doctest::Approx(12.0));
  // Deseasonalised theta reproduces a pure seasonal pattern.
  const auto f = theta_predict(seasonal, 12, {12, true});
  for (int j = 0; j < 12; ++j) CHECK(std::abs(f[static_cast<std::size_t>(j)] - seasonal[static_cast<std::size_t>(60 + j)]) < 1.0);
}

TEST_CASE("fit contract") {
  const V y = noisy_series(48, 6);
  CHECK(code_of([&] { fit(StlParams{.sp = 1}, y); }) == ErrorCode::PeriodTooSmall);
  V with_zero = y;
  with_zero[3] = 0.0;
  CHECK(code_of([&] { fit(ThetaParams{12, true}, with_zero); }) == ErrorCode::NonPositiveData);
  CHECK(code_of([&] { fit(NaiveParams{}, V{}); }) == ErrorCode::SeriesTooShort);

  const FittedModel m = fit(NaiveParams{}, y);
  CHECK(m.train_length() == y.size());
  CHECK(m.predict(Horizon(3)) == V(3, y.back()));
}

TEST_CASE("every method is deterministic and returns h finite values") {
  const V y = noisy_series(60, 7);
  for (Method method : kAllMethods) {
    CAPTURE(to_string(method));
    const ForecasterSpec spec = default_spec(method, 12);
    const FittedModel a = fit(spec, y);
    const FittedModel b = fit(spec, y);
    for (int h : {1, 7, 18}) {
      const auto fa = a.predict(Horizon(h));
      const auto fb = b.predict(Horizon(h));
      REQUIRE(fa.size() == static_cast<std::size_t>(h));
      CHECK(fa == fb);  // bit-identical
      for (double v : fa) CHECK(std::isfinite(v));
    }
    // Repeated prediction from one fitted model agrees with itself.
    CHECK(a.predict(Horizon(5)) == a.predict(Horizon(5)));
  }
}

TEST_CASE("method names") {
  for (Method m : kAllMethods) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("stl") == Method::STLForecaster);
  CHECK(method_from_string("ETS") == Method::AutoETS);
  CHECK(method_from_string("arima") == Method::AutoARIMA);
  CHECK(code_of([] { method_from_string("prophet"); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(PolynomialTrendParams{.degree = 0}); }) == ErrorCode::InvalidParameter);
  CHECK(describe(default_spec(Method::Naive, 1)).rfind("Naive(", 0) == 0);
}
