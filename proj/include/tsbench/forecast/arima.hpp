#pragma once

#include <span>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

/// Level-stationarity KPSS statistic with Bartlett lag trunc(3 sqrt(n) / 13).
double kpss_statistic(std::span<const double> y);

/// Differences until the KPSS statistic drops below the 5% critical value
/// (0.463), at most `max_d` times.
int kpss_ndiffs(std::span<const double> y, int max_d = 2);

struct ArimaCandidate {
  int p = 0, d = 0, q = 0;
  bool with_constant = false;
  double ic = 0.0;
};

class ArimaState final : public ModelState {
 public:
  ArimaOrder order;
  double log_likelihood = 0.0;
  double ic = 0.0;
  /// Every model fitted during the search, in evaluation order.
  std::vector<ArimaCandidate> candidates;

  std::vector<double> forecast(int h) const override;

  // Filter state at the end of the sample and the values needed to undo
  // differencing; filled by the fitting routines.
  std::vector<double> predicted_state;
  std::vector<double> tails;  // last value of each differencing level, level 0 first
};

/// Fits ARIMA(p, d, q) by conditional sum of squares followed by exact
/// Gaussian likelihood. Throws NonConvergence when no admissible fit exists.
std::shared_ptr<const ArimaState> fit_arima(std::span<const double> train, int p, int d, int q,
                                            bool with_constant,
                                            InformationCriterion ic = InformationCriterion::AICc,
                                            const Deadline& deadline = Deadline::none());

/// Stepwise order search, or the fixed order in params.order when set.
std::shared_ptr<const ArimaState> fit_auto_arima(std::span<const double> train,
                                                 const AutoArimaParams& params,
                                                 const Deadline& deadline = Deadline::none());

std::vector<double> arima_auto_predict(std::span<const double> train, int h,
                                       const AutoArimaParams& params);

}  // namespace tsbench
