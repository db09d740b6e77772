#include <doctest.h>

#include <cmath>
#include <random>

#include "tsbench/error.hpp"
#include "tsbench/metrics.hpp"

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

// Textbook definitions written out term by term.
double smape_oracle(const V& a, const V& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double den = std::fabs(a[i]) + std::fabs(p[i]);
    if (den != 0.0) total += std::fabs(a[i] - p[i]) / den;
  }
  return 2.0 * total / static_cast<double>(a.size());
}

double mase_oracle(const V& a, const V& p, const V& train, std::size_t m) {
  double mae = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mae += std::fabs(a[i] - p[i]);
  mae /= static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = m; i < train.size(); ++i) d += std::fabs(train[i] - train[i - m]);
  d /= static_cast<double>(train.size() - m);
  return mae / d;
}

V random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::bernoulli_distribution zero(0.1);
  V v(n);
  for (double& x : v) x = zero(rng) ? 0.0 : u(rng);
  return v;
}

}  // namespace

TEST_CASE("sMAPE examples") {
  CHECK(smape(V{3, -4, 5}, V{3, -4, 5}) == 0.0);
  CHECK(smape(V{100}, V{110}) == doctest::Approx(20.0 / 210.0).epsilon(1e-12));
  CHECK(smape(V{0}, V{0}) == 0.0);
  CHECK(smape(V{0, 5}, V{0, -5}) == doctest::Approx(1.0));
  CHECK(code_of([] { smape(V{1, 2}, V{1}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { smape(V{}, V{}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("sMAPE symmetry and range on random vectors") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> len(1, 20);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = len(rng);
    const V a = random_vector(rng, n);
    const V p = random_vector(rng, n);
    const double s = smape(a, p);
    REQUIRE(s == smape(p, a));
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 2.0);
    REQUIRE(s == doctest::Approx(smape_oracle(a, p)).epsilon(1e-12));
  }
}

TEST_CASE("MASE examples") {
  const V train{1, 2, 3, 4, 5};
  CHECK(mase(V{6, 7}, V{6, 7}, train, 1) == 0.0);
  CHECK(mase(V{6, 7}, V{7, 8}, train, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(code_of([] { mase(V{6}, V{6}, V{5, 5, 5, 5}, 1); }) == ErrorCode::ZeroDenominator);
  // Seasonal scaling uses lag-m differences.
  CHECK(mase(V{0}, V{3}, V{1, 5, 2, 7, 3, 9}, 2) == doctest::Approx(3.0 / ((1.0 + 2.0 + 1.0 + 2.0) / 4.0)));
  CHECK(code_of([] { mase(V{1}, V{1}, V{1, 2}, 2); }) == ErrorCode::SeriesTooShort);
  CHECK(code_of([] { mase(V{1, 2}, V{1}, V{1, 2, 3}, 1); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("MASE matches the oracle and is scale invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    const V train = random_vector(rng, 30);
    const V a = random_vector(rng, 6);
    const V p = random_vector(rng, 6);
    for (int m : {1, 4, 12}) {
      const double base = mase(a, p, train, m);
      REQUIRE(base == doctest::Approx(mase_oracle(a, p, train, static_cast<std::size_t>(m))).epsilon(1e-12));
      const double s = scale(rng);
      V as = a, ps = p, ts = train;
      for (double& v : as) v *= s;
      for (double& v : ps) v *= s;
      for (double& v : ts) v *= s;
      REQUIRE(std::fabs(mase(as, ps, ts, m) - base) <= 1e-12 * std::fabs(base));
    }
  }
}

TEST_CASE("RMSE") {
  CHECK(rmse(V{1, 2}, V{1, 2}) == 0.0);
  CHECK(rmse(V{0, 0}, V{3, 4}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
  CHECK(rmse(V{2.5}, V{-1.0}) == doctest::Approx(3.5));
  CHECK(code_of([] { rmse(V{}, V{}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("quantile loss") {
  CHECK(quantile_loss(3.0, 3.0, 0.3) == 0.0);
  CHECK(quantile_loss(2.0, 0.0, 0.5) == doctest::Approx(1.0));
  CHECK(quantile_loss(0.0, 2.0, 0.9) == doctest::Approx(0.2));
  CHECK(quantile_loss(2.0, 0.0, 0.9) == doctest::Approx(1.8));
  CHECK(code_of([] { quantile_loss(1.0, 1.0, 0.0); }) == ErrorCode::InvalidQuantile);
  CHECK(code_of([] { quantile_loss(1.0, 1.0, 1.0); }) == ErrorCode::InvalidQuantile);

  // The median loss is half the absolute error, and nonnegative everywhere.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0), q(0.01, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double y = u(rng), yhat = u(rng);
    REQUIRE(quantile_loss(y, yhat, 0.5) == doctest::Approx(0.5 * std::fabs(y - yhat)));
    REQUIRE(quantile_loss(y, yhat, q(rng)) >= 0.0);
  }
  CHECK(quantile_loss(V{2, 0}, V{0, 2}, 0.9) == doctest::Approx((1.8 + 0.2) / 2.0));
}

TEST_CASE("aggregation") {
  CHECK(aggregate(V{0.1, 0.3}) == doctest::Approx(0.2));
  CHECK(aggregate(V{0.7}) == 0.7);
  CHECK(code_of([] { aggregate(V{}); }) == ErrorCode::EmptyInput);

  // Three series of equal horizon: the mean of per-series sMAPE equals the
  // flat sMAPE over the concatenated windows.
  const V a1{1, 2, 3}, p1{1.5, 2, 2}, a2{10, 20, 30}, p2{12, 18, 33}, a3{-1, 0, 4}, p3{1, 0, 3};
  V a_all, p_all;
  for (const V* v : {&a1, &a2, &a3}) a_all.insert(a_all.end(), v->begin(), v->end());
  for (const V* v : {&p1, &p2, &p3}) p_all.insert(p_all.end(), v->begin(), v->end());
  const V per{smape(a1, p1), smape(a2, p2), smape(a3, p3)};
  CHECK(aggregate(per) == doctest::Approx(smape_oracle(a_all, p_all)).epsilon(1e-12));
}

TEST_CASE("metric names and dispatch") {
  for (const char* name : {"smape", "mase", "rmse", "ql0.9"}) CHECK(to_string(metric_from_string(name)) == name);
  CHECK(metric_from_string("sMAPE") == Metric{MetricKind::sMAPE});
  CHECK(metric_from_string("ql0.25").quantile == 0.25);
  CHECK_THROWS_AS(metric_from_string("mape"), Error);
  CHECK_THROWS_AS(metric_from_string("ql1.5"), Error);

  const V train{1, 2, 3, 4, 5}, a{6, 7}, p{7, 8};
  CHECK(score(Metric{MetricKind::sMAPE}, a, p, train, 1) == smape(a, p));
  CHECK(score(Metric{MetricKind::MASE}, a, p, train, 1) == mase(a, p, train, 1));
  CHECK(score(Metric{MetricKind::RMSE}, a, p, train, 1) == rmse(a, p));
  CHECK(score(Metric{MetricKind::QuantileLoss, 0.3}, a, p, train, 1) == quantile_loss(a, p, 0.3));
}
