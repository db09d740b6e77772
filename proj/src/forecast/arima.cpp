#include "tsbench/forecast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

#include <Eigen/Dense>

#include "tsbench/error.hpp"
#include "tsbench/forecast/optimize.hpp"

namespace tsbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxOrder = 5;
constexpr double kKpssCritical = 0.463;

std::vector<double> difference(std::span<const double> y) {
  std::vector<double> out;
  if (y.size() < 2) return out;
  out.reserve(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) out.push_back(y[i] - y[i - 1]);
  return out;
}

// Roots of z^k - c_1 z^(k-1) - ... - c_k all strictly inside the unit circle.
bool roots_inside(std::span<const double> c) {
  const auto k = static_cast<Eigen::Index>(c.size());
  if (k == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) companion(0, j) = c[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd ev = companion.eigenvalues();
  for (Eigen::Index i = 0; i < k; ++i)
    if (std::abs(ev[i]) >= 1.0 - 1e-6) return false;
  return true;
}

struct Coeffs {
  std::vector<double> phi, theta;
  double mean = 0.0;
};

bool admissible(const Coeffs& c) {
  std::vector<double> neg(c.theta.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.theta[i];
  return roots_inside(c.phi) && roots_inside(neg);
}

double css(std::span<const double> x, const Coeffs& c) {
  const std::size_t p = c.phi.size(), q = c.theta.size();
  std::vector<double> e(x.size(), 0.0);
  double sse = 0.0;
  for (std::size_t t = p; t < x.size(); ++t) {
    double v = x[t] - c.mean;
    for (std::size_t i = 0; i < p; ++i) v -= c.phi[i] * (x[t - 1 - i] - c.mean);
    for (std::size_t j = 0; j < q && j < t; ++j) v -= c.theta[j] * e[t - 1 - j];
    e[t] = v;
    sse += v * v;
  }
  return sse;
}

struct Filtered {
  double minus2ll = kInf;
  double sigma2 = 0.0;
  Eigen::VectorXd state;  // a_{n+1|n}
};

// Exact Gaussian likelihood via the Kalman filter on the Harvey state-space
// form, with the innovation variance concentrated out.
Filtered kalman(std::span<const double> x, const Coeffs& c) {
  Filtered out;
  const std::size_t p = c.phi.size(), q = c.theta.size();
  const auto r = static_cast<Eigen::Index>(std::max(p, q + 1));
  Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(r, r);
  for (std::size_t i = 0; i < p; ++i) tm(static_cast<Eigen::Index>(i), 0) = c.phi[i];
  for (Eigen::Index i = 0; i + 1 < r; ++i) tm(i, i + 1) = 1.0;
  Eigen::VectorXd rv = Eigen::VectorXd::Zero(r);
  rv[0] = 1.0;
  for (std::size_t j = 0; j < q; ++j) rv[static_cast<Eigen::Index>(j + 1)] = c.theta[j];
  const Eigen::MatrixXd rr = rv * rv.transpose();

  // Stationary covariance: vec(P) = (I - T (x) T)^-1 vec(R R').
  const Eigen::Index r2 = r * r;
  Eigen::MatrixXd kron(r2, r2);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) kron.block(i * r, j * r, r, r) = tm(i, j) * tm;
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(r2, r2) - kron;
  const Eigen::VectorXd vec_rr = Eigen::Map<const Eigen::VectorXd>(rr.data(), r2);
  const Eigen::VectorXd vec_p = lhs.partialPivLu().solve(vec_rr);
  Eigen::MatrixXd pm = Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), r, r);
  pm = 0.5 * (pm + pm.transpose());

  Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
  double sumsq = 0.0, sumlog = 0.0;
  bool steady = false;
  for (double xt : x) {
    const double v = xt - c.mean - a[0];
    const double f = steady ? 1.0 : pm(0, 0);
    if (!(f > 0.0) || !std::isfinite(f)) return out;
    sumsq += v * v / f;
    sumlog += std::log(f);
    if (steady) {
      a = tm * (a + rv * v);
      continue;
    }
    const Eigen::VectorXd k = tm * pm.col(0) / f;
    a = tm * a + k * v;
    pm = tm * pm * tm.transpose() + rr - k * k.transpose() * f;
    if ((pm - rr).cwiseAbs().maxCoeff() < 1e-12) steady = true;
  }
  const double n = static_cast<double>(x.size());
  out.sigma2 = std::max(sumsq / n, std::numeric_limits<double>::min());
  out.minus2ll = n * (std::log(2.0 * std::numbers::pi * out.sigma2) + 1.0) + sumlog;
  out.state = a;
  return out;
}

double criterion(InformationCriterion ic, double minus2ll, int k, double n) {
  switch (ic) {
    case InformationCriterion::AIC:
      return minus2ll + 2.0 * k;
    case InformationCriterion::AICc:
      return n - k - 1 > 0 ? minus2ll + 2.0 * k + 2.0 * k * (k + 1) / (n - k - 1) : kInf;
    case InformationCriterion::BIC:
      return minus2ll + k * std::log(n);
  }
  return kInf;
}

Coeffs unpack(std::span<const double> v, int p, int q, bool constant, double fixed_mean) {
  Coeffs c;
  c.phi.assign(v.begin(), v.begin() + p);
  c.theta.assign(v.begin() + p, v.begin() + p + q);
  c.mean = constant ? v[static_cast<std::size_t>(p + q)] : fixed_mean;
  return c;
}

}  // namespace

double kpss_statistic(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = y[i] - mean;
  double partial = 0.0, eta = 0.0, s2 = 0.0;
  for (double v : e) {
    partial += v;
    eta += partial * partial;
    s2 += v * v;
  }
  const auto lags = static_cast<std::size_t>(std::trunc(3.0 * std::sqrt(static_cast<double>(n)) / 13.0));
  for (std::size_t l = 1; l <= lags && l < n; ++l) {
    double acc = 0.0;
    for (std::size_t t = l; t < n; ++t) acc += e[t] * e[t - l];
    s2 += 2.0 * (1.0 - static_cast<double>(l) / static_cast<double>(lags + 1)) * acc;
  }
  s2 /= static_cast<double>(n);
  if (!(s2 > 0.0)) return 0.0;
  return eta / (static_cast<double>(n) * static_cast<double>(n) * s2);
}

int kpss_ndiffs(std::span<const double> y, int max_d) {
  std::vector<double> x(y.begin(), y.end());
  int d = 0;
  while (d < max_d && x.size() > 2 && kpss_statistic(x) > kKpssCritical) {
    x = difference(x);
    ++d;
  }
  return d;
}

std::vector<double> ArimaState::forecast(int h) const {
  const std::size_t p = order.phi_coeffs.size();
  const auto r = static_cast<std::size_t>(predicted_state.size());
  std::vector<double> a = predicted_state;
  const double mean = order.with_constant ? order.constant : 0.0;
  std::vector<double> out(static_cast<std::size_t>(h));
  for (int j = 0; j < h; ++j) {
    out[static_cast<std::size_t>(j)] = mean + (r ? a[0] : 0.0);
    std::vector<double> next(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      next[i] = (i < p ? order.phi_coeffs[i] * a[0] : 0.0) + (i + 1 < r ? a[i + 1] : 0.0);
    }
    a = std::move(next);
  }
  for (std::size_t level = tails.size(); level-- > 0;) {
    double prev = tails[level];
    for (double& v : out) {
      v += prev;
      prev = v;
    }
  }
  return out;
}

std::shared_ptr<const ArimaState> fit_arima(std::span<const double> y, int p, int d, int q,
                                            bool with_constant, InformationCriterion ic,
                                            const Deadline& deadline) {
  if (p < 0 || q < 0 || d < 0 || p > kMaxOrder || q > kMaxOrder || d > 2)
    throw Error(ErrorCode::InvalidParameter, "ARIMA orders must satisfy p, q <= 5 and d <= 2");
  if (y.size() < static_cast<std::size_t>(d + p + q + 2))
    throw Error(ErrorCode::SeriesTooShort, "too few observations for the ARIMA order");

  auto state = std::make_shared<ArimaState>();
  std::vector<double> x(y.begin(), y.end());
  for (int k = 0; k < d; ++k) {
    state->tails.push_back(x.back());
    x = difference(x);
  }
  const double n = static_cast<double>(x.size());
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const int k = p + q + (with_constant ? 1 : 0) + 1;

  Coeffs best;
  best.phi.assign(static_cast<std::size_t>(p), 0.0);
  best.theta.assign(static_cast<std::size_t>(q), 0.0);
  best.mean = with_constant ? xbar : 0.0;

  const auto dim = static_cast<std::size_t>(p + q + (with_constant ? 1 : 0));
  if (p + q > 0) {
    std::vector<double> start(dim, 0.0), lo(dim, -kInf), hi(dim, kInf);
    if (with_constant) start.back() = xbar;
    optimize::Options options;
    options.deadline = &deadline;
    options.max_evaluations = 500;
    options.tolerance = 1e-8;

    auto css_objective = [&](std::span<const double> v) {
      const Coeffs c = unpack(v, p, q, with_constant, 0.0);
      if (!admissible(c)) return kInf;
      return css(x, c);
    };
    const auto first = optimize::nelder_mead(css_objective, start, lo, hi, options);
    if (std::isfinite(first.value)) start = first.x;

    auto ml_objective = [&](std::span<const double> v) {
      const Coeffs c = unpack(v, p, q, with_constant, 0.0);
      if (!admissible(c)) return kInf;
      return kalman(x, c).minus2ll;
    };
    options.tolerance = 1e-6;
    const auto second = optimize::nelder_mead(ml_objective, start, lo, hi, options);
    if (!std::isfinite(second.value))
      throw Error(ErrorCode::NonConvergence, "no admissible ARIMA coefficients found");
    best = unpack(second.x, p, q, with_constant, 0.0);
  }

  const Filtered f = kalman(x, best);
  if (!std::isfinite(f.minus2ll)) throw Error(ErrorCode::NonConvergence, "ARIMA likelihood is not finite");

  state->order.p = p;
  state->order.d = d;
  state->order.q = q;
  state->order.with_constant = with_constant;
  state->order.phi_coeffs = best.phi;
  state->order.theta_coeffs = best.theta;
  state->order.constant = best.mean;
  state->order.sigma2 = f.sigma2;
  state->log_likelihood = -0.5 * f.minus2ll;
  state->ic = criterion(ic, f.minus2ll, k, n);
  state->predicted_state.assign(f.state.data(), f.state.data() + f.state.size());
  state->candidates.push_back({p, d, q, with_constant, state->ic});
  return state;
}

std::shared_ptr<const ArimaState> fit_auto_arima(std::span<const double> y, const AutoArimaParams& params,
                                                 const Deadline& deadline) {
  if (params.order) {
    const ArimaOrder& o = *params.order;
    return fit_arima(y, o.p, o.d, o.q, o.with_constant, params.ic, deadline);
  }
  if (y.size() < 10) throw Error(ErrorCode::SeriesTooShort, "auto ARIMA needs at least 10 observations");

  const int d = kpss_ndiffs(y);
  const bool constant_allowed = d <= 1;

  using Key = std::tuple<int, int, bool>;
  std::map<Key, std::shared_ptr<const ArimaState>> fitted;
  std::vector<ArimaCandidate> history;
  std::shared_ptr<const ArimaState> best;

  auto better = [](const ArimaState& a, const ArimaState& b) {
    if (a.ic != b.ic) return a.ic < b.ic;
    const int sa = a.order.p + a.order.q, sb = b.order.p + b.order.q;
    if (sa != sb) return sa < sb;
    if (a.order.p != b.order.p) return a.order.p < b.order.p;
    return !a.order.with_constant && b.order.with_constant;
  };
  auto attempt = [&](int p, int q, bool c) -> std::shared_ptr<const ArimaState> {
    if (p < 0 || q < 0 || p > kMaxOrder || q > kMaxOrder || (c && !constant_allowed)) return nullptr;
    const Key key{p, q, c};
    if (auto it = fitted.find(key); it != fitted.end()) return it->second;
    deadline.check();
    std::shared_ptr<const ArimaState> s;
    try {
      s = fit_arima(y, p, d, q, c, params.ic, deadline);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DeadlineExceeded) throw;
    }
    fitted.emplace(key, s);
    if (s && std::isfinite(s->ic)) {
      history.push_back(s->candidates.front());
      if (!best || better(*s, *best)) best = s;
    }
    return s;
  };

  for (auto [p, q] : {std::pair{2, 2}, {0, 0}, {1, 0}, {0, 1}, {1, 1}}) attempt(p, q, constant_allowed);
  if (constant_allowed) attempt(0, 0, false);
  if (!best) throw Error(ErrorCode::NonConvergence, "no ARIMA candidate could be fitted");

  for (bool moved = true; moved;) {
    moved = false;
    const auto current = best;
    const int p = current->order.p, q = current->order.q;
    const bool c = current->order.with_constant;
    const std::tuple<int, int, bool> moves[] = {
        {p - 1, q, c},     {p + 1, q, c},     {p, q - 1, c},     {p, q + 1, c},
        {p - 1, q - 1, c}, {p + 1, q + 1, c}, {p - 1, q + 1, c}, {p + 1, q - 1, c},
        {p, q, !c},
    };
    for (const auto& [np, nq, nc] : moves) attempt(np, nq, nc);
    if (best != current) moved = true;
  }

  auto out = std::make_shared<ArimaState>(*best);
  out->candidates = std::move(history);
  return out;
}

std::vector<double> arima_auto_predict(std::span<const double> train, int h, const AutoArimaParams& params) {
  return fit_auto_arima(train, params)->forecast(h);
}

}  // namespace tsbench
