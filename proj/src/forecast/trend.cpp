#include "tsbench/forecast/trend.hpp"

#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

// Polynomial in the scaled index u = i / T; the scaling keeps the design
// well conditioned for long series and does not change the OLS fit.
class PolynomialState final : public ModelState {
 public:
  PolynomialState(Eigen::VectorXd coeffs, double scale, std::size_t n)
      : coeffs_(std::move(coeffs)), scale_(scale), n_(n) {}

  std::vector<double> forecast(int h) const override {
    std::vector<double> out(static_cast<std::size_t>(h));
    for (int j = 1; j <= h; ++j) {
      const double u = static_cast<double>(n_ + static_cast<std::size_t>(j)) / scale_;
      double v = 0.0;
      for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) v = v * u + coeffs_[k];
      out[static_cast<std::size_t>(j - 1)] = v;
    }
    return out;
  }

 private:
  Eigen::VectorXd coeffs_;
  double scale_;
  std::size_t n_;
};

class ConstantState final : public ModelState {
 public:
  explicit ConstantState(double value) : value_(value) {}
  std::vector<double> forecast(int h) const override {
    return std::vector<double>(static_cast<std::size_t>(h), value_);
  }

 private:
  double value_;
};

Eigen::MatrixXd design(std::size_t n, int degree, double scale) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), degree + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i + 1) / scale;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      x(static_cast<Eigen::Index>(i), k) = p;
      p *= u;
    }
  }
  return x;
}

std::shared_ptr<const ModelState> fit_least_squares(std::span<const double> train, int degree) {
  const auto n = train.size();
  const double scale = static_cast<double>(n);
  const Eigen::MatrixXd x = design(n, degree, scale);
  const Eigen::Map<const Eigen::VectorXd> y(train.data(), static_cast<Eigen::Index>(n));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < degree + 1) throw Error(ErrorCode::SingularDesign, "rank-deficient trend design");
  return std::make_shared<PolynomialState>(qr.solve(y), scale, n);
}

// Ridge on the raw features (i, i^2, ...) with an unpenalised intercept,
// solved as an augmented least-squares problem on centred data.
std::shared_ptr<const ModelState> fit_ridge(std::span<const double> train, int degree, double lambda) {
  const auto n = train.size();
  const auto rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd x = design(n, degree, 1.0).rightCols(degree);
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const Eigen::Map<const Eigen::VectorXd> y(train.data(), rows);
  const double y_mean = y.mean();

  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(rows + degree, degree);
  aug.topRows(rows) = x.rowwise() - x_mean;
  aug.bottomRows(degree) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(degree, degree);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + degree);
  rhs.head(rows) = y.array() - y_mean;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aug);
  if (qr.rank() < degree) throw Error(ErrorCode::SingularDesign, "rank-deficient ridge design");
  const Eigen::VectorXd beta = qr.solve(rhs);
  Eigen::VectorXd coeffs(degree + 1);
  coeffs[0] = y_mean - x_mean.dot(beta);
  coeffs.tail(degree) = beta;
  return std::make_shared<PolynomialState>(std::move(coeffs), 1.0, n);
}

// Stand-in for a tree ensemble: a depth-limited regression tree on the
// index. Every future index lands in the right-most leaf, so only that path
// is grown.
std::shared_ptr<const ModelState> fit_tree(std::span<const double> train) {
  constexpr int kMaxDepth = 3;
  std::size_t lo = 0;
  const std::size_t hi = train.size();
  for (int depth = 0; depth < kMaxDepth && hi - lo >= 2; ++depth) {
    const auto seg = train.subspan(lo, hi - lo);
    const double total = std::accumulate(seg.begin(), seg.end(), 0.0);
    const double total_sq = std::inner_product(seg.begin(), seg.end(), seg.begin(), 0.0);
    const double base_sse = total_sq - total * total / static_cast<double>(seg.size());
    double best_sse = base_sse;
    std::size_t best_split = 0;
    double left = 0.0, left_sq = 0.0;
    for (std::size_t s = 1; s < seg.size(); ++s) {
      left += seg[s - 1];
      left_sq += seg[s - 1] * seg[s - 1];
      const double nl = static_cast<double>(s), nr = static_cast<double>(seg.size() - s);
      const double right = total - left, right_sq = total_sq - left_sq;
      const double sse = (left_sq - left * left / nl) + (right_sq - right * right / nr);
      if (sse < best_sse - 1e-12 * (1.0 + std::abs(base_sse))) {
        best_sse = sse;
        best_split = s;
      }
    }
    if (best_split == 0) break;
    lo += best_split;
  }
  const auto leaf = train.subspan(lo, hi - lo);
  return std::make_shared<ConstantState>(std::accumulate(leaf.begin(), leaf.end(), 0.0) /
                                         static_cast<double>(leaf.size()));
}

std::shared_ptr<const ModelState> fit_regression(std::span<const double> train, int degree,
                                                 Regressor regressor, double lambda) {
  switch (regressor) {
    case Regressor::ordinary_least_squares:
    case Regressor::sgd:
      return fit_least_squares(train, degree);
    case Regressor::ridge:
      return fit_ridge(train, degree, lambda);
    case Regressor::tree:
      return fit_tree(train);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown regressor");
}

}  // namespace

std::shared_ptr<const ModelState> fit_trend(std::span<const double> train, const TrendParams& params) {
  if (train.size() < 2) throw Error(ErrorCode::SeriesTooShort, "trend needs two observations");
  return fit_regression(train, 1, params.regressor, params.ridge_lambda);
}

std::shared_ptr<const ModelState> fit_poly_trend(std::span<const double> train,
                                                 const PolynomialTrendParams& params) {
  if (params.degree < 1 || params.degree > 3)
    throw Error(ErrorCode::InvalidParameter, "degree must be 1, 2 or 3");
  if (train.size() <= static_cast<std::size_t>(params.degree) || train.size() < 2)
    throw Error(ErrorCode::SeriesTooShort, "polynomial trend needs more points than its degree");
  return fit_regression(train, params.degree, params.regressor, params.ridge_lambda);
}

std::vector<double> trend_predict(std::span<const double> train, int h, const TrendParams& params) {
  return fit_trend(train, params)->forecast(h);
}

std::vector<double> poly_trend_predict(std::span<const double> train, int h,
                                       const PolynomialTrendParams& params) {
  return fit_poly_trend(train, params)->forecast(h);
}

std::pair<double, double> ols_line(std::span<const double> y) {
  const auto n = static_cast<double>(y.size());
  if (y.size() < 2) return {y.empty() ? 0.0 : y[0], 0.0};
  const double t_mean = (n - 1.0) / 2.0;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dt = static_cast<double>(i) - t_mean;
    sxy += dt * (y[i] - y_mean);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;
  return {y_mean - slope * t_mean, slope};
}

}  // namespace tsbench
