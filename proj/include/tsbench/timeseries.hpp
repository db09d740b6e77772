#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsbench {

enum class Frequency {
  yearly,
  quarterly,
  monthly,
  weekly,
  daily,
  hourly,
  half_hourly,
  minutely,
  four_seconds,
};

inline constexpr Frequency kAllFrequencies[] = {
    Frequency::yearly, Frequency::quarterly,   Frequency::monthly,
    Frequency::weekly, Frequency::daily,       Frequency::hourly,
    Frequency::half_hourly, Frequency::minutely, Frequency::four_seconds,
};

/// Observations per seasonal cycle; used as `sp` for forecasters and as the
/// MASE lag.
constexpr int seasonal_period(Frequency f) noexcept {
  switch (f) {
    case Frequency::yearly: return 1;
    case Frequency::quarterly: return 4;
    case Frequency::monthly: return 12;
    case Frequency::weekly: return 52;
    case Frequency::daily: return 7;
    case Frequency::hourly: return 24;
    case Frequency::half_hourly: return 48;
    case Frequency::minutely: return 1440;
    case Frequency::four_seconds: return 21600;
  }
  return 1;
}

/// Spelling used in `.tsf` headers ("4_seconds" for four_seconds).
std::string_view to_string(Frequency f) noexcept;

/// Case-insensitive inverse of to_string. Throws UnknownFrequency.
Frequency frequency_from_string(std::string_view s);

class Horizon {
 public:
  /// Throws InvalidParameter when steps < 1.
  explicit Horizon(int steps);
  int steps() const noexcept { return steps_; }
  friend bool operator==(Horizon, Horizon) = default;

 private:
  int steps_;
};

using Timestamp = std::chrono::sys_seconds;

/// Equally spaced observations; element i sits at start + i frequency steps.
/// Missing observations are std::nullopt, present ones are always finite.
class TimeSeries {
 public:
  using Value = std::optional<double>;

  TimeSeries(std::string name, std::optional<Timestamp> start,
             std::vector<Value> values, Frequency frequency);

  /// Convenience for fully observed data.
  static TimeSeries from_values(std::string name, std::vector<double> values,
                                Frequency frequency,
                                std::optional<Timestamp> start = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const std::optional<Timestamp>& start() const noexcept { return start_; }
  Frequency frequency() const noexcept { return frequency_; }
  std::span<const Value> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool has_missing() const noexcept;

  /// Values as plain doubles. Throws MissingValues if any element is missing.
  std::vector<double> observed() const;

 private:
  std::string name_;
  std::optional<Timestamp> start_;
  std::vector<Value> values_;
  Frequency frequency_;
};

enum class HorizonSource { file, table, frequency_fallback };

struct Dataset {
  std::string name;
  std::vector<TimeSeries> series;
  Frequency frequency = Frequency::yearly;
  Horizon horizon{1};
  HorizonSource horizon_source = HorizonSource::file;
  bool contains_missing = false;
  bool equal_length = false;
};

/// Throws InvalidParameter when a series disagrees with the dataset frequency
/// or equal_length is violated.
void validate(const Dataset& dataset);

/// Forecast horizon for a Monash dataset name; falls back to a per-frequency
/// default unless `strict`, in which case an unlisted name throws
/// UnknownDataset.
Horizon default_horizon(std::string_view dataset_name, Frequency frequency,
                        bool strict = false);

/// The per-frequency fallback horizon alone.
Horizon frequency_fallback_horizon(Frequency frequency) noexcept;

/// True when `dataset_name` is in the bundled horizon table.
bool has_listed_horizon(std::string_view dataset_name);

/// Test window is the last h observations. Throws SeriesTooShort if
/// size() <= h.
std::pair<TimeSeries, TimeSeries> temporal_train_test_split(
    const TimeSeries& series, Horizon horizon);

/// Last observation carried forward; leading gaps take the first observed
/// value. Throws MissingValues if nothing is observed.
std::vector<double> locf_impute(const TimeSeries& series);

/// Timestamp `steps` frequency-steps after `start`.
Timestamp advance(Timestamp start, Frequency frequency, long long steps);

}  // namespace tsbench
