#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tsbench/harness.hpp"
#include "tsbench/tuning.hpp"

namespace tsbench {

inline constexpr int kManifestSchemaVersion = 1;

/// Tuning outcome for one series.
struct SeriesTuning {
  std::string series;
  std::vector<Trial> trials;
  std::size_t best_index = 0;
  Configuration best;
};

/// Tuning of one method on one dataset, with dataset-level scores of the
/// default configuration (`before`) and of the per-series tuned pipelines
/// (`after`).
struct TuningRecord {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  int n_iter = 0;
  Metric scoring;
  Status status = Status::Ok;
  std::string reason;
  std::vector<SeriesTuning> series;
  std::map<Metric, double> before;
  std::map<Metric, double> after;
};

struct RunManifest {
  int schema_version = kManifestSchemaVersion;
  std::string config_hash;
  std::string version;
  std::string timestamp;
  std::vector<EvaluationRecord> records;
  std::vector<TuningRecord> tuning;
};

/// Toolkit version string baked in at build time.
std::string toolkit_version();

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Reals are written as strings with 10 significant digits so the document
/// round-trips byte for byte. Throws InvalidParameter on duplicate
/// (dataset, method) records.
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
/// Throws ManifestNotFound when the file cannot be opened or parsed.
RunManifest read_manifest(const std::filesystem::path& path);

/// "%.10g" formatting used for every real in the manifest.
std::string format_real(double v);

}  // namespace tsbench
