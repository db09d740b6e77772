#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tsbench/error.hpp"
#include "tsbench/forecast/arima.hpp"
#include "tsbench/forecast/ets.hpp"
#include "tsbench/forecast/naive.hpp"

using namespace tsbench;
using V = std::vector<double>;

namespace {

// ARMA(1,1) around 5 driven by a deterministic pseudo-noise sequence that is
// easy to regenerate elsewhere.
V arma_series() {
  const int n = 150;
  V e(n), y(n, 0.0);
  for (int t = 0; t < n; ++t)
    e[t] = 2.0 * std::fmod(t * 0.6180339887498949 + 0.5 * std::sin(t * t * 0.37), 1.0) - 1.0;
  for (int t = 1; t < n; ++t) y[t] = 0.6 * y[t - 1] + e[t] + 0.3 * e[t - 1];
  for (double& v : y) v += 5.0;
  return y;
}

V seasonal_positive(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.5);
  V y;
  for (std::size_t t = 0; t < n; ++t)
    y.push_back(20.0 + 0.1 * t + 4.0 * std::sin(2.0 * M_PI * static_cast<double>(t) / 4.0) + noise(rng));
  return y;
}

double aicc(double loglik, int k, double n) { return -2.0 * loglik + 2.0 * k + 2.0 * k * (k + 1) / (n - k - 1); }

}  // namespace

TEST_CASE("ETS selection is the AICc argmin over fitted candidates") {
  const V y = seasonal_positive(48, 1);
  const auto s = fit_auto_ets(y, {4});
  REQUIRE_FALSE(s->candidates.empty());
  CHECK(s->candidates.size() == 18);
  for (const auto& c : s->candidates) {
    CAPTURE(to_string(c.model));
    CHECK(s->aicc <= c.aicc);
    CHECK(c.aicc == doctest::Approx(aicc(c.log_likelihood, c.parameters, 48.0)));
  }
  const auto winner = std::find_if(s->candidates.begin(), s->candidates.end(),
                                   [&](const EtsCandidate& c) { return c.model == s->model; });
  REQUIRE(winner != s->candidates.end());
  CHECK(winner->aicc == s->aicc);
  // A clear period-4 pattern is picked up.
  CHECK(s->model.season != EtsSeason::none);
}

TEST_CASE("ETS parameter counts") {
  const V y = seasonal_positive(48, 2);
  // alpha, level, sigma
  CHECK(fit_ets_model(y, {EtsError::additive, EtsTrend::none, EtsSeason::none}, 1)->candidates[0].parameters == 3);
  // + beta, trend, phi
  CHECK(fit_ets_model(y, {EtsError::additive, EtsTrend::damped, EtsSeason::none}, 1)->candidates[0].parameters == 6);
  // alpha, beta, level, trend, sigma, gamma and sp - 1 seasonal states
  CHECK(fit_ets_model(y, {EtsError::additive, EtsTrend::additive, EtsSeason::additive}, 4)->candidates[0].parameters ==
        5 + 1 + 3);
}

TEST_CASE("ETS on a noisy constant picks neither trend nor season") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1e-3);
  V y;
  for (int t = 0; t < 60; ++t) y.push_back(10.0 + noise(rng));
  const auto s = fit_auto_ets(y, {12});
  CHECK(s->model.trend == EtsTrend::none);
  CHECK(s->model.season == EtsSeason::none);
  for (double v : s->forecast(5)) CHECK(v == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("ETS skips multiplicative components on non-positive data") {
  V y = seasonal_positive(48, 3);
  y[10] = -1.0;
  const auto s = fit_auto_ets(y, {4});
  CHECK(s->candidates.size() == 6);  // A error x 3 trends x {N, A}
  for (const auto& c : s->candidates) {
    CHECK(c.model.error == EtsError::additive);
    CHECK(c.model.season != EtsSeason::multiplicative);
  }
}

TEST_CASE("ETS without seasonal candidates for long or unit periods") {
  const V y = seasonal_positive(120, 4);
  for (int sp : {1, 52}) {
    const auto s = fit_auto_ets(y, {sp});
    CHECK(s->candidates.size() == 6);
    for (const auto& c : s->candidates) CHECK(c.model.season == EtsSeason::none);
  }
}

TEST_CASE("KPSS statistic matches a reference implementation") {
  const V y = arma_series();
  CHECK(kpss_statistic(y) == doctest::Approx(0.24049637867606105).epsilon(1e-9));
  V walk(y.size());
  std::partial_sum(y.begin(), y.end(), walk.begin());
  CHECK(kpss_statistic(walk) == doctest::Approx(5.0826813133729205).epsilon(1e-9));
  CHECK(kpss_ndiffs(y) == 0);
  CHECK(kpss_ndiffs(walk) >= 1);
}

TEST_CASE("ARIMA likelihood matches a reference implementation") {
  // Exact Gaussian log-likelihoods from statsmodels' state-space ARIMA.
  const V y = arma_series();
  CHECK(fit_arima(y, 1, 0, 1, true)->log_likelihood == doctest::Approx(-132.05188571811948).epsilon(1e-5));
  CHECK(fit_arima(y, 2, 0, 0, true)->log_likelihood == doctest::Approx(-132.00155034396386).epsilon(1e-5));
  CHECK(fit_arima(y, 0, 1, 1, false)->log_likelihood == doctest::Approx(-147.0288848012027).epsilon(1e-5));
  const auto m = fit_arima(y, 1, 0, 1, true);
  CHECK(m->order.phi_coeffs[0] == doctest::Approx(0.54615285).epsilon(1e-3));
  CHECK(m->order.theta_coeffs[0] == doctest::Approx(0.36856833).epsilon(1e-3));
  CHECK(m->order.constant == doctest::Approx(5.09507574).epsilon(1e-3));
}

TEST_CASE("ARIMA special cases") {
  const V y = arma_series();
  // Random walk: every forecast is the last value.
  const auto rw = fit_arima(y, 0, 1, 0, false)->forecast(4);
  for (double v : rw) CHECK(v == doctest::Approx(y.back()).epsilon(1e-12));
  CHECK(rw == naive_predict(y, 4, {}));

  // White noise with a constant: the mean.
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  for (double v : fit_arima(y, 0, 0, 0, true)->forecast(3)) CHECK(v == doctest::Approx(mean).epsilon(1e-12));

  // AR(1) forecasts decay geometrically to the mean.
  const auto ar = fit_arima(y, 1, 0, 0, true);
  const double phi = ar->order.phi_coeffs[0];
  const double mu = ar->order.constant;
  const auto f = ar->forecast(5);
  double prev = y.back();
  for (double v : f) {
    CHECK(v - mu == doctest::Approx(phi * (prev - mu)).epsilon(1e-9));
    prev = v;
  }
}

TEST_CASE("ARIMA information criteria") {
  const V y = arma_series();
  const double n = static_cast<double>(y.size());
  const double ll = fit_arima(y, 1, 0, 1, true, InformationCriterion::AIC)->log_likelihood;
  // k = p + q + constant + variance
  CHECK(fit_arima(y, 1, 0, 1, true, InformationCriterion::AIC)->ic == doctest::Approx(-2 * ll + 8));
  CHECK(fit_arima(y, 1, 0, 1, true, InformationCriterion::AICc)->ic == doctest::Approx(aicc(ll, 4, n)));
  CHECK(fit_arima(y, 1, 0, 1, true, InformationCriterion::BIC)->ic == doctest::Approx(-2 * ll + 4 * std::log(n)));
}

TEST_CASE("ARIMA search returns the IC argmin over evaluated candidates") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const V y = seed == 1 ? arma_series() : seasonal_positive(80, seed);
    const auto s = fit_auto_arima(y, {});
    REQUIRE(s->candidates.size() >= 6);
    for (const auto& c : s->candidates) CHECK(s->ic <= c.ic);
    CHECK(s->order.d == kpss_ndiffs(y));
  }
  // A fixed order bypasses the search.
  AutoArimaParams fixed;
  fixed.order = ArimaOrder{.p = 0, .d = 1, .q = 0};
  const auto s = fit_auto_arima(arma_series(), fixed);
  CHECK(s->candidates.size() == 1);
  CHECK(s->order.d == 1);
  CHECK_THROWS_AS(fit_auto_arima(V{1, 2, 3, 4}, {}), Error);
}
