#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

/// Regression of v_i on the index i = 1..T, extrapolated to T + j.
std::vector<double> trend_predict(std::span<const double> train, int h, const TrendParams& params);

/// Same, on polynomial features (i, i^2, ..., i^degree) plus an intercept.
std::vector<double> poly_trend_predict(std::span<const double> train, int h,
                                       const PolynomialTrendParams& params);

std::shared_ptr<const ModelState> fit_trend(std::span<const double> train, const TrendParams& params);
std::shared_ptr<const ModelState> fit_poly_trend(std::span<const double> train,
                                                 const PolynomialTrendParams& params);

/// Least-squares line through (i, y_i), i = 0..n-1: {intercept, slope}.
std::pair<double, double> ols_line(std::span<const double> y);

}  // namespace tsbench
