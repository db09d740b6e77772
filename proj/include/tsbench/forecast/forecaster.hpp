#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tsbench/deadline.hpp"
#include "tsbench/forecast/spec.hpp"
#include "tsbench/timeseries.hpp"

namespace tsbench {

/// Method-specific fitted state.
class ModelState {
 public:
  virtual ~ModelState() = default;
  virtual std::vector<double> forecast(int h) const = 0;
};

class FittedModel {
 public:
  FittedModel(ForecasterSpec spec, std::shared_ptr<const ModelState> state,
              std::size_t train_length)
      : spec_(std::move(spec)), state_(std::move(state)), train_length_(train_length) {}

  const ForecasterSpec& spec() const noexcept { return spec_; }
  std::size_t train_length() const noexcept { return train_length_; }

  /// Exactly h finite values; throws NonFinitePrediction otherwise.
  std::vector<double> predict(Horizon h) const;

  template <class State>
  const State* state_as() const noexcept {
    return dynamic_cast<const State*>(state_.get());
  }

 private:
  ForecasterSpec spec_;
  std::shared_ptr<const ModelState> state_;
  std::size_t train_length_;
};

/// Deterministic: the same (spec, train) always yields a bit-identical model.
FittedModel fit(const ForecasterSpec& spec, std::span<const double> train,
                const Deadline& deadline = Deadline::none());

/// Throws MissingValues when the series has gaps.
FittedModel fit(const ForecasterSpec& spec, const TimeSeries& train,
                const Deadline& deadline = Deadline::none());

std::vector<double> fit_predict(const ForecasterSpec& spec, std::span<const double> train,
                                Horizon h, const Deadline& deadline = Deadline::none());

}  // namespace tsbench
