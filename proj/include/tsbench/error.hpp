#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsbench {

enum class ErrorCode {
  SeriesTooShort,
  PeriodTooSmall,
  NonPositiveData,
  NonConvergence,
  SingularDesign,
  NonFinitePrediction,
  InvalidParameter,
  MissingValues,
  LengthMismatch,
  EmptyInput,
  ZeroDenominator,
  InvalidQuantile,
  UnknownDataset,
  UnknownFrequency,
  MissingDataSection,
  AttributeCountMismatch,
  UnparsableValue,
  AllTrialsFailed,
  DegenerateInput,
  InvalidP,
  AllDifferencesZero,
  ZeroVariance,
  DatasetLoadError,
  DeadlineExceeded,
  ConfigError,
  ManifestNotFound,
  MetricAbsent,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every declared failure in the toolkit is reported through this type; the
/// code is what the harness records as the NA reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(ErrorCode code) : Error(code, {}) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsbench
