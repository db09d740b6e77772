#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsbench/timeseries.hpp"

namespace tsbench {

enum class AttributeType { string, date, numeric };

struct TsfAttribute {
  std::string name;
  AttributeType type = AttributeType::string;
};

struct TsfHeader {
  std::string relation;
  std::vector<TsfAttribute> attributes;
  std::string frequency;
  std::optional<int> horizon;
  bool missing = false;
  bool equal_length = false;
};

/// A parsed file: the Dataset plus the header and raw attribute values, which
/// a writer needs to reproduce the file.
struct TsfFile {
  TsfHeader header;
  Dataset dataset;
  std::vector<std::vector<std::string>> attribute_values;
};

/// Streaming reader for the Monash `.tsf` format. `dataset_name` overrides
/// `@relation` as the Dataset name (and as the horizon-table key when the
/// file has no `@horizon`).
TsfFile read_tsf(std::istream& in, std::optional<std::string> dataset_name = std::nullopt);

Dataset parse_tsf(std::istream& in, std::optional<std::string> dataset_name = std::nullopt);

/// Opens `path` and names the dataset after the file stem. Throws
/// DatasetLoadError when the file cannot be opened.
Dataset load_tsf(const std::filesystem::path& path);

/// "YYYY-MM-DD HH-MM-SS", "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DD".
std::optional<Timestamp> parse_tsf_timestamp(std::string_view text);
std::string format_tsf_timestamp(Timestamp t);

}  // namespace tsbench
