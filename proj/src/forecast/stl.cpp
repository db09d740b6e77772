#include "tsbench/forecast/stl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "tsbench/error.hpp"
#include "tsbench/forecast/loess.hpp"
#include "tsbench/forecast/loess_detail.hpp"
#include "tsbench/forecast/trend.hpp"

namespace tsbench {

namespace {

struct Smoother {
  int window;
  int degree;
  int jump;
};

// Local fit at abscissa xs (1-based, like the positions) over [left, right].
bool estimate(std::span<const double> y, double xs, int left, int right, int window, int degree,
              const std::vector<double>* robustness, double& value) {
  const int n = static_cast<int>(y.size());
  double h = std::max(xs - left, right - xs);
  if (window > n) h += static_cast<double>((window - n) / 2);
  const double h9 = 0.999 * h, h1 = 0.001 * h;

  std::vector<double> dx, ys, w;
  for (int j = left; j <= right; ++j) {
    const double r = std::abs(j - xs);
    if (r > h9) continue;
    double wj = r <= h1 ? 1.0 : tricube(r / h);
    if (robustness) wj *= (*robustness)[static_cast<std::size_t>(j - 1)];
    if (wj <= 0.0) continue;
    dx.push_back(j - xs);
    ys.push_back(y[static_cast<std::size_t>(j - 1)]);
    w.push_back(wj);
  }
  if (w.empty()) return false;
  return detail::weighted_poly_fit(dx, ys, w, h > 0.0 ? degree : 0, value);
}

// LOESS over positions 1..n with every jump-th point fitted and the rest
// linearly interpolated.
std::vector<double> smooth(std::span<const double> y, const Smoother& s,
                           const std::vector<double>* robustness) {
  const int n = static_cast<int>(y.size());
  std::vector<double> out(y.begin(), y.end());
  if (n < 2) return out;
  const int jump = std::min(s.jump, n - 1);
  const int half = (s.window + 1) / 2;

  auto fit_at = [&](int i, int left, int right) {
    double v;
    if (estimate(y, i, left, right, s.window, s.degree, robustness, v)) out[static_cast<std::size_t>(i - 1)] = v;
  };

  if (s.window >= n) {
    for (int i = 1; i <= n; i += jump) fit_at(i, 1, n);
  } else if (jump == 1) {
    int left = 1, right = s.window;
    for (int i = 1; i <= n; ++i) {
      if (i > half && right != n) {
        ++left;
        ++right;
      }
      fit_at(i, left, right);
    }
  } else {
    for (int i = 1; i <= n; i += jump) {
      int left, right;
      if (i < half) {
        left = 1;
        right = s.window;
      } else if (i >= n - half + 1) {
        left = n - s.window + 1;
        right = n;
      } else {
        left = i - half + 1;
        right = s.window + i - half;
      }
      fit_at(i, left, right);
    }
  }

  if (jump != 1) {
    for (int i = 1; i + jump <= n; i += jump) {
      const double a = out[static_cast<std::size_t>(i - 1)];
      const double b = out[static_cast<std::size_t>(i + jump - 1)];
      for (int j = 1; j < jump; ++j)
        out[static_cast<std::size_t>(i + j - 1)] = a + (b - a) * j / static_cast<double>(jump);
    }
    const int last = ((n - 1) / jump) * jump + 1;
    if (last != n) {
      const int left = std::max(1, n - s.window + 1);
      fit_at(n, left, n);
      const double a = out[static_cast<std::size_t>(last - 1)];
      const double b = out[static_cast<std::size_t>(n - 1)];
      for (int j = last + 1; j < n; ++j)
        out[static_cast<std::size_t>(j - 1)] = a + (b - a) * (j - last) / static_cast<double>(n - last);
    }
  }
  return out;
}

// Smooths each cycle-subseries and extends it by one point at either end;
// the result has length n + 2 sp.
std::vector<double> cycle_subseries(std::span<const double> y, int sp, const Smoother& s,
                                    const std::vector<double>* robustness) {
  const int n = static_cast<int>(y.size());
  std::vector<double> out(static_cast<std::size_t>(n + 2 * sp), 0.0);
  std::vector<double> sub, sub_rw;
  for (int phase = 0; phase < sp; ++phase) {
    sub.clear();
    sub_rw.clear();
    for (int i = phase; i < n; i += sp) {
      sub.push_back(y[static_cast<std::size_t>(i)]);
      if (robustness) sub_rw.push_back((*robustness)[static_cast<std::size_t>(i)]);
    }
    const int k = static_cast<int>(sub.size());
    const std::vector<double>* rw = robustness ? &sub_rw : nullptr;
    const std::vector<double> fitted = smooth(sub, s, rw);

    double before = fitted.front();
    estimate(sub, 0.0, 1, std::min(s.window, k), s.window, s.degree, rw, before);
    double after = fitted.back();
    estimate(sub, k + 1.0, std::max(1, k - s.window + 1), k, s.window, s.degree, rw, after);

    out[static_cast<std::size_t>(phase)] = before;
    for (int m = 0; m < k; ++m) out[static_cast<std::size_t>((m + 1) * sp + phase)] = fitted[static_cast<std::size_t>(m)];
    out[static_cast<std::size_t>((k + 1) * sp + phase)] = after;
  }
  return out;
}

std::vector<double> moving_average(std::span<const double> x, int len) {
  const std::size_t m = static_cast<std::size_t>(len);
  std::vector<double> out(x.size() - m + 1);
  double acc = std::accumulate(x.begin(), x.begin() + len, 0.0);
  out[0] = acc / len;
  for (std::size_t i = 1; i < out.size(); ++i) {
    acc += x[i + m - 1] - x[i - 1];
    out[i] = acc / len;
  }
  return out;
}

std::vector<double> robustness_weights(std::span<const double> y, std::span<const double> fit) {
  const std::size_t n = y.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(y[i] - fit[i]);
  std::vector<double> sorted = r;
  std::sort(sorted.begin(), sorted.end());
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double cmad = 6.0 * median;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] <= 0.001 * cmad) {
      w[i] = 1.0;
    } else if (r[i] <= 0.999 * cmad) {
      const double u = r[i] / cmad;
      w[i] = (1.0 - u * u) * (1.0 - u * u);
    } else {
      w[i] = 0.0;
    }
  }
  return w;
}

class StlState final : public ModelState {
 public:
  std::vector<double> last_season;
  double intercept = 0.0, slope = 0.0;
  int sp = 1;

  std::vector<double> forecast(int h) const override {
    std::vector<double> out(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j)
      out[static_cast<std::size_t>(j)] = intercept + slope * (sp + j) +
                                         last_season[static_cast<std::size_t>(j % sp)];
    return out;
  }
};

void check(const StlParams& p) {
  auto odd = [](int v) { return v % 2 == 1; };
  auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(p.seasonal_deg, 0, 2) || !in(p.trend_deg, 0, 2))
    throw Error(ErrorCode::InvalidParameter, "STL degrees must be 0, 1 or 2");
  if (!in(p.seasonal_jump, 1, 3) || !in(p.trend_jump, 1, 3))
    throw Error(ErrorCode::InvalidParameter, "STL jumps must be 1, 2 or 3");
  if (p.seasonal_window < 7 || !odd(p.seasonal_window))
    throw Error(ErrorCode::InvalidParameter, "seasonal window must be odd and >= 7");
  if (p.trend_window && (*p.trend_window < 3 || !odd(*p.trend_window)))
    throw Error(ErrorCode::InvalidParameter, "trend window must be odd and >= 3");
}

}  // namespace

int default_trend_window(int sp, int seasonal_window) {
  const double bound = 1.5 * sp / (1.0 - 1.5 / seasonal_window);
  int w = static_cast<int>(std::ceil(bound - 1e-12));
  if (w % 2 == 0) ++w;
  return std::max(w, 3);
}

StlDecomposition stl_decompose(std::span<const double> y, const StlParams& params) {
  if (params.sp < 2) throw Error(ErrorCode::PeriodTooSmall, "STL needs a seasonal period >= 2");
  check(params);
  const int sp = params.sp;
  const int n = static_cast<int>(y.size());
  if (n < 2 * sp) throw Error(ErrorCode::SeriesTooShort, "STL needs two full seasons");

  const Smoother seasonal{params.seasonal_window, params.seasonal_deg, params.seasonal_jump};
  const Smoother trend_s{params.trend_window.value_or(default_trend_window(sp, params.seasonal_window)),
                         params.trend_deg, params.trend_jump};
  const Smoother low_pass{sp % 2 ? sp : sp + 1, params.trend_deg, 1};
  const int inner = params.robust ? 2 : 5;
  const int outer = params.robust ? 2 : 0;

  std::vector<double> trend(static_cast<std::size_t>(n), 0.0), season(static_cast<std::size_t>(n), 0.0);
  std::vector<double> work(static_cast<std::size_t>(n)), rw;

  for (int pass = 0; pass <= outer; ++pass) {
    const std::vector<double>* weights = pass > 0 ? &rw : nullptr;
    for (int it = 0; it < inner; ++it) {
      for (int i = 0; i < n; ++i) work[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] - trend[static_cast<std::size_t>(i)];
      const std::vector<double> c = cycle_subseries(work, sp, seasonal, weights);
      std::vector<double> low = moving_average(moving_average(moving_average(c, sp), sp), 3);
      low = smooth(low, low_pass, nullptr);
      for (int i = 0; i < n; ++i)
        season[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(sp + i)] - low[static_cast<std::size_t>(i)];
      for (int i = 0; i < n; ++i) work[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] - season[static_cast<std::size_t>(i)];
      trend = smooth(work, trend_s, weights);
    }
    if (pass < outer) {
      for (int i = 0; i < n; ++i) work[static_cast<std::size_t>(i)] = trend[static_cast<std::size_t>(i)] + season[static_cast<std::size_t>(i)];
      rw = robustness_weights(y, work);
    }
  }

  StlDecomposition out;
  out.trend = std::move(trend);
  out.seasonal = std::move(season);
  out.residual.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.residual.size(); ++i)
    out.residual[i] = y[i] - out.trend[i] - out.seasonal[i];
  return out;
}

std::shared_ptr<const ModelState> fit_stl(std::span<const double> train, const StlParams& params) {
  const StlDecomposition d = stl_decompose(train, params);
  const auto sp = static_cast<std::size_t>(params.sp);
  auto state = std::make_shared<StlState>();
  state->sp = params.sp;
  state->last_season.assign(d.seasonal.end() - static_cast<std::ptrdiff_t>(sp), d.seasonal.end());
  std::tie(state->intercept, state->slope) =
      ols_line(std::span<const double>(d.trend).last(sp));
  return state;
}

std::vector<double> stl_predict(std::span<const double> train, int h, const StlParams& params) {
  return fit_stl(train, params)->forecast(h);
}

}  // namespace tsbench
