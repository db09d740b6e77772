#include "tsbench/forecast/loess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "tsbench/error.hpp"
#include "tsbench/forecast/loess_detail.hpp"

namespace tsbench {

double tricube(double u) noexcept {
  const double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  const double c = 1.0 - a * a * a;
  return c * c * c;
}

namespace detail {

bool weighted_poly_fit(std::span<const double> dx, std::span<const double> y, std::span<const double> w,
                       int degree, double& value) {
  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0)) return false;
  if (degree == 0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += w[i] * y[i];
    value = acc / total;
    return true;
  }
  if (degree == 1) {
    // Weighted line evaluated at dx = 0 (Cleveland's closed form).
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      mx += w[i] * dx[i];
      my += w[i] * y[i];
    }
    mx /= total;
    my /= total;
    double sxx = 0.0, sxy = 0.0, range = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      sxx += w[i] * (dx[i] - mx) * (dx[i] - mx);
      sxy += w[i] * (dx[i] - mx) * (y[i] - my);
      range = std::max(range, std::abs(dx[i]));
    }
    if (sxx <= 1e-6 * range * range * total) {
      value = my;
      return true;
    }
    value = my - (sxy / sxx) * mx;
    return true;
  }
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  double scale = 0.0;
  for (double d : dx) scale = std::max(scale, std::abs(d));
  if (scale == 0.0) scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sw = std::sqrt(w[static_cast<std::size_t>(i)]);
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      a(i, k) = sw * p;
      p *= dx[static_cast<std::size_t>(i)] / scale;
    }
    b[i] = sw * y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < degree + 1) return weighted_poly_fit(dx, y, w, degree - 1, value);
  value = qr.solve(b)[0];
  return true;
}

}  // namespace detail

std::vector<double> loess_smooth(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> weights, std::span<const double> at,
                                 int degree, int span) {
  if (x.size() != y.size() || x.size() != weights.size())
    throw Error(ErrorCode::LengthMismatch, "x, y and weights must have equal length");
  if (degree < 0 || degree > 2) throw Error(ErrorCode::InvalidParameter, "degree must be 0, 1 or 2");
  if (span < degree + 1 || static_cast<std::size_t>(span) > x.size())
    throw Error(ErrorCode::InvalidParameter, "span must lie in [degree + 1, number of points]");

  const std::size_t n = x.size();
  std::vector<double> dist(n), sorted(n), dx(n), w(n), out;
  out.reserve(at.size());
  for (double q : at) {
    for (std::size_t i = 0; i < n; ++i) {
      dx[i] = x[i] - q;
      dist[i] = std::abs(dx[i]);
    }
    sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + (span - 1), sorted.end());
    const double h = sorted[static_cast<std::size_t>(span - 1)];
    for (std::size_t i = 0; i < n; ++i) {
      const double k = h > 0.0 ? tricube(dist[i] / h) : (dist[i] == 0.0 ? 1.0 : 0.0);
      w[i] = k * weights[i];
    }
    // Exact local fits need degree + 1 distinct supported abscissae.
    std::vector<double> support;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] > 0.0) support.push_back(x[i]);
    std::sort(support.begin(), support.end());
    const auto distinct = std::unique(support.begin(), support.end()) - support.begin();
    if (distinct < degree + 1) throw Error(ErrorCode::SingularDesign, "local fit has too little support");
    double v = 0.0;
    detail::weighted_poly_fit(dx, y, w, degree, v);
    out.push_back(v);
  }
  return out;
}

}  // namespace tsbench
