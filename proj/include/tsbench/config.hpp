#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tsbench/harness.hpp"
#include "tsbench/tuning.hpp"

namespace tsbench {

struct TuneSettings {
  /// Method entry names to tune; empty means every entry in the run.
  std::vector<std::string> methods;
  int n_iter = 20;
  std::uint64_t seed = 0;
  Metric scoring{MetricKind::sMAPE};
  /// Search spaces by entry name, overriding the default grid.
  std::map<std::string, SearchSpace> spaces;
};

/// A run configuration read from an INI file:
///
///   [run]
///   datasets = m1_yearly_dataset.tsf, nn5_weekly_dataset.tsf
///   methods = Naive, Theta, NaiveMean
///   metrics = smape, mase
///   budget = 3600
///   parallelism = 4
///
///   [method.NaiveMean]
///   method = Naive
///   strategy = mean
///
///   [tune]
///   methods = Naive
///   n_iter = 20
///   seed = 0
///   scoring = smape
///
///   [space.Naive]
///   strategy = last, mean, drift
struct RunConfig {
  std::vector<std::filesystem::path> datasets;
  std::vector<MethodEntry> methods;
  std::vector<Metric> metrics{Metric{MetricKind::sMAPE}, Metric{MetricKind::MASE}};
  double budget_seconds = 3600.0;
  int parallelism = 1;
  TuneSettings tune;
};

/// Relative dataset paths resolve against TSBENCH_DATA_DIR when set, else
/// against `base_dir`. Throws ConfigError on malformed content.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

/// Throws ConfigError when the file is missing or malformed.
RunConfig load_config(const std::filesystem::path& path);

std::filesystem::path resolve_dataset_path(const std::string& entry, const std::filesystem::path& base_dir);

/// Built-in method by name with default parameters. Throws InvalidParameter.
MethodEntry method_entry(const std::string& name);

/// Stable text form of everything that affects results.
std::string canonical_text(const RunConfig& config);

/// FNV-1a hash of canonical_text.
std::string config_hash(const RunConfig& config);

/// Splits on commas and trims whitespace; empty items are dropped.
std::vector<std::string> split_list(std::string_view text);

}  // namespace tsbench
