#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

/// theta * y + (1 - theta) * (least-squares line through y). Second
/// differences scale by theta; theta = 1 returns y.
std::vector<double> theta_line(std::span<const double> y, double theta);

/// Two-sided check of the lag-sp autocorrelation at the 90% level.
bool seasonality_detected(std::span<const double> y, int sp);

/// Classical multiplicative decomposition indices; index[k] applies to
/// positions t with t % sp == k. Mean of the indices is 1.
std::vector<double> multiplicative_seasonal_indices(std::span<const double> y, int sp);

std::shared_ptr<const ModelState> fit_theta(std::span<const double> train, const ThetaParams& params,
                                            const Deadline& deadline = Deadline::none());

std::vector<double> theta_predict(std::span<const double> train, int h, const ThetaParams& params);

}  // namespace tsbench
