#pragma once

#include <span>

namespace tsbench::detail {

/// Value at dx = 0 of the weighted least-squares polynomial through
/// (dx_i, y_i). Falls back to a lower degree when the design is singular;
/// false when the weights sum to zero.
bool weighted_poly_fit(std::span<const double> dx, std::span<const double> y, std::span<const double> w,
                       int degree, double& value);

}  // namespace tsbench::detail
