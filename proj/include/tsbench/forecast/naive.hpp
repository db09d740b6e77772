#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

std::vector<double> naive_predict(std::span<const double> train, int h, const NaiveParams& params);

/// forecast[i] = train[n - sp + (i mod sp)]. Throws SeriesTooShort if n < sp.
std::vector<double> seasonal_naive_predict(std::span<const double> train, int h, int sp);

std::shared_ptr<const ModelState> fit_naive(std::span<const double> train, const NaiveParams& params);
std::shared_ptr<const ModelState> fit_seasonal_naive(std::span<const double> train,
                                                     const SeasonalNaiveParams& params);

}  // namespace tsbench
