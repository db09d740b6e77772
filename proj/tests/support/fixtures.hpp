#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsbench/harness.hpp"

namespace tsbench::testing {

std::filesystem::path fixture(const std::string& name);

/// Reads a transcribed results table (dataset,frequency,<method>...) into
/// one record per cell. "N/A" cells become NA, "Timeout" cells Timeout.
/// Only the listed methods are kept (all when empty).
std::vector<EvaluationRecord> table_records(const std::filesystem::path& csv, const Metric& metric,
                                            const std::vector<std::string>& methods = {});

/// The nine non-AutoML methods of the transcribed tables.
const std::vector<std::string>& classical_methods();

}  // namespace tsbench::testing
