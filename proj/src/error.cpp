#include "tsbench/error.hpp"

namespace tsbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::PeriodTooSmall: return "PeriodTooSmall";
    case ErrorCode::NonPositiveData: return "NonPositiveData";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NonFinitePrediction: return "NonFinitePrediction";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::MissingValues: return "MissingValues";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidQuantile: return "InvalidQuantile";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::UnknownFrequency: return "UnknownFrequency";
    case ErrorCode::MissingDataSection: return "MissingDataSection";
    case ErrorCode::AttributeCountMismatch: return "AttributeCountMismatch";
    case ErrorCode::UnparsableValue: return "UnparsableValue";
    case ErrorCode::AllTrialsFailed: return "AllTrialsFailed";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::AllDifferencesZero: return "AllDifferencesZero";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::DatasetLoadError: return "DatasetLoadError";
    case ErrorCode::DeadlineExceeded: return "DeadlineExceeded";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ManifestNotFound: return "ManifestNotFound";
    case ErrorCode::MetricAbsent: return "MetricAbsent";
  }
  return "Unknown";
}

}  // namespace tsbench
