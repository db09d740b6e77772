#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsbench/harness.hpp"
#include "tsbench/manifest.hpp"
#include "tsbench/stats.hpp"

namespace tsbench {

/// One metric across datasets (rows, sorted) and methods (columns, sorted).
/// Cells are empty for NA/Timeout records, records without the metric and
/// (dataset, method) pairs that were never run.
struct ResultTable {
  Metric metric;
  std::vector<std::string> datasets;
  std::vector<std::string> frequencies;  // per dataset
  std::vector<std::string> methods;
  std::vector<std::vector<std::optional<double>>> cells;
};

/// Throws MetricAbsent when no record carries `metric`.
ResultTable result_table(const std::vector<EvaluationRecord>& records, const Metric& metric);

/// Rows without any empty cell, as a matrix for ranking.
ScoreMatrix complete_rows(const ResultTable& table);

/// method,wins,losses,ties,failures
std::string wins_losses_csv(const ResultTable& table);

/// Average ranks, Friedman test, pairwise tests and cliques over complete
/// rows. Tests are null when fewer than two methods or no complete rows.
std::string ranks_json(const ResultTable& table, double alpha = 0.05);

/// Critical-difference diagram: axis over [1, k], one labelled tick per
/// method at its average rank, one bar per clique of two or more methods.
std::string cd_diagram_svg(const std::vector<std::string>& methods, const std::vector<double>& avg_rank,
                           const std::vector<std::vector<std::size_t>>& cliques);

/// dataset,<method>... with each complete row rescaled to [0, 1].
std::string rescaled_csv(const ResultTable& table);

/// Dataset name to domain, matched on a normalised form of the name.
class DomainMap {
 public:
  DomainMap() = default;
  /// CSV with header "dataset,domain".
  static DomainMap parse(std::istream& in);
  static DomainMap load(const std::filesystem::path& path);

  std::optional<std::string> domain_of(std::string_view dataset) const;
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::map<std::string, std::string> map_;
};

/// Lowercase alphanumerics with "dataset" and "with(out) missing values"
/// removed, so "m1_yearly_dataset" and "M1 Yearly" agree.
std::string normalize_dataset_name(std::string_view name);

struct GroupSummaryTable {
  std::vector<std::string> groups;  // sorted
  std::vector<std::string> methods;
  std::vector<std::vector<Summary>> summaries;  // groups x methods
};

/// Mean and sample std of available scores per (group, method). Datasets
/// for which `group_of` yields nothing are skipped.
GroupSummaryTable group_summaries(const ResultTable& table,
                                  const std::function<std::optional<std::string>(std::size_t row)>& group_of);
GroupSummaryTable frequency_summaries(const ResultTable& table);
GroupSummaryTable domain_summaries(const ResultTable& table, const DomainMap& domains);

/// group,<method>_mean,<method>_std,... with empty cells for groups a method
/// has no scores in.
std::string group_summary_csv(const GroupSummaryTable& summary);

struct ReportOptions {
  Metric metric;
  double alpha = 0.05;
  DomainMap domains;
};

/// Writes wins_losses.csv, ranks.json, cd_diagram.svg, rescaled.csv,
/// summary_frequency.csv and summary_domain.csv into `out_dir`; returns the
/// paths written.
std::vector<std::filesystem::path> write_report(const RunManifest& manifest, const ReportOptions& options,
                                                const std::filesystem::path& out_dir);

}  // namespace tsbench
