#pragma once

#include <span>
#include <vector>

namespace tsbench {

/// (1 - u^3)^3 for |u| < 1, else 0.
double tricube(double u) noexcept;

/// Local polynomial regression. At each query point a weighted polynomial of
/// `degree` (0, 1 or 2) is fitted over the `span` nearest points, with
/// tricube distance weights multiplied by `weights`. Throws InvalidParameter
/// on bad span/degree and SingularDesign when a local fit has no support.
std::vector<double> loess_smooth(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> weights, std::span<const double> at,
                                 int degree, int span);

}  // namespace tsbench
