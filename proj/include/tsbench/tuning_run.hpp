#pragma once

#include <span>

#include "tsbench/config.hpp"
#include "tsbench/harness.hpp"
#include "tsbench/manifest.hpp"

namespace tsbench {

struct TuneOutcome {
  TuningRecord tuning;
  /// Test-window scores of the tuned pipelines, labelled "<method>-tuned".
  EvaluationRecord tuned;
};

/// Search space for an entry: a [space.<entry>] or [space.<Method>] override,
/// else the default grid. Throws ConfigError when the method has no grid.
SearchSpace search_space_for(const MethodEntry& entry, const TuneSettings& settings);

/// Random search on every series of `dataset` (training segment only),
/// then scores each refitted best pipeline on the test window. `before` is
/// the default-configuration record for the same pair. Failures follow the
/// harness rules: any failed series makes the tuned record NA, an exhausted
/// budget makes it Timeout.
TuneOutcome tune_dataset(const MethodEntry& entry, const Dataset& dataset, const TuneSettings& settings,
                         std::span<const Metric> metrics, double budget_seconds, const EvaluationRecord& before);

}  // namespace tsbench
