#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsbench/forecast/forecaster.hpp"

namespace tsbench {

enum class EtsError { additive, multiplicative };
enum class EtsTrend { none, additive, damped };
enum class EtsSeason { none, additive, multiplicative };

struct EtsModel {
  EtsError error = EtsError::additive;
  EtsTrend trend = EtsTrend::none;
  EtsSeason season = EtsSeason::none;

  friend bool operator==(const EtsModel&, const EtsModel&) = default;
};

/// "(A, Ad, M)" style label.
std::string to_string(const EtsModel& m);

/// One fitted candidate of the automatic search.
struct EtsCandidate {
  EtsModel model;
  double log_likelihood = 0.0;
  double aicc = 0.0;
  int parameters = 0;  // includes the innovation variance
};

class EtsState final : public ModelState {
 public:
  EtsModel model;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, phi = 1.0;
  double level = 0.0, trend = 0.0;
  std::vector<double> seasonals;  // seasonals[k] applies to forecast step k+1 (mod sp)
  double log_likelihood = 0.0;
  double aicc = 0.0;
  /// Every candidate that fitted, in search order (winner included).
  std::vector<EtsCandidate> candidates;

  std::vector<double> forecast(int h) const override;
};

/// Fits one ETS model by maximum likelihood.
std::shared_ptr<const EtsState> fit_ets_model(std::span<const double> train, const EtsModel& model,
                                              int sp, const Deadline& deadline = Deadline::none());

/// Fits every admissible model and keeps the AICc minimiser.
std::shared_ptr<const EtsState> fit_auto_ets(std::span<const double> train, const AutoEtsParams& params,
                                             const Deadline& deadline = Deadline::none());

std::vector<double> ets_auto_predict(std::span<const double> train, int h, const AutoEtsParams& params);

}  // namespace tsbench
