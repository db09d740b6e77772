#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

/// Fitted Holt-Winters model. `seasonals` holds the last sp seasonal states in
/// time order, so seasonals[k] applies to forecast steps congruent to k.
class HoltWintersState final : public ModelState {
 public:
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double phi = 1.0;
  double initial_level = 0.0;
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> seasonals;
  ComponentMode trend_mode = ComponentMode::none;
  ComponentMode seasonal_mode = ComponentMode::none;
  double sse = 0.0;
  int evaluations = 0;

  std::vector<double> forecast(int h) const override;
};

std::shared_ptr<const HoltWintersState> fit_exp_smoothing(std::span<const double> train,
                                                          const ExpSmoothingParams& params,
                                                          const Deadline& deadline = Deadline::none());

std::vector<double> exp_smoothing_predict(std::span<const double> train, int h,
                                          const ExpSmoothingParams& params);

/// Simple exponential smoothing with alpha and the initial level both
/// estimated by SSE minimisation. Shared by the Theta forecaster.
std::shared_ptr<const HoltWintersState> fit_ses(std::span<const double> train,
                                                const Deadline& deadline = Deadline::none());

}  // namespace tsbench
