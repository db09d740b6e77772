#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

struct StlDecomposition {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> residual;
};

/// Odd trend window used when StlParams::trend_window is unset.
int default_trend_window(int sp, int seasonal_window);

StlDecomposition stl_decompose(std::span<const double> train, const StlParams& params);

/// Linear extrapolation of the trend over its last season, the final
/// seasonal cycle repeated, and a zero residual.
std::shared_ptr<const ModelState> fit_stl(std::span<const double> train, const StlParams& params);

std::vector<double> stl_predict(std::span<const double> train, int h, const StlParams& params);

}  // namespace tsbench
