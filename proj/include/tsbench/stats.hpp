#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsbench {

/// N datasets (rows) by k methods (columns), no missing cells.
struct ScoreMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> scores;
  bool lower_is_better = true;
};

struct RankTable {
  std::vector<std::vector<double>> ranks;  // fractional, 1 = best
  std::vector<double> avg_rank;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

RankTable rank_rows(const ScoreMatrix& matrix);

/// Friedman chi-square with tie correction; p from chi-square with k - 1
/// degrees of freedom. Throws DegenerateInput when k < 2 or N < 1.
TestResult friedman_test(const RankTable& ranks);

/// Holm step-down adjustment, original order preserved. Throws InvalidP.
std::vector<double> holm_adjust(std::span<const double> p_values);

/// Two-sided signed-rank test on x - y (zero differences dropped). Exact
/// null distribution up to 25 non-zero pairs, normal approximation with
/// continuity and tie correction beyond. Statistic is min(W+, W-).
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Two-sided paired t-test. Throws ZeroVariance.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Groups of methods, contiguous in average-rank order, whose members are
/// pairwise not significantly different (adjusted p >= alpha). Groups inside
/// a larger group are dropped. `adjusted_p` is k x k and symmetric. Members
/// are method indices listed in rank order.
std::vector<std::vector<std::size_t>> cd_cliques(std::span<const double> avg_rank,
                                                 const std::vector<std::vector<double>>& adjusted_p,
                                                 double alpha);

struct PairwiseResult {
  std::size_t i = 0, j = 0;
  double raw_p = 1.0;
  double adjusted_p = 1.0;
};

struct SignificanceReport {
  RankTable ranks;
  TestResult friedman;
  std::vector<PairwiseResult> pairwise;  // i < j, row-major
  std::vector<std::vector<std::size_t>> cliques;
};

/// Friedman test, pairwise Wilcoxon with Holm correction, and CD groups.
SignificanceReport significance_report(const ScoreMatrix& matrix, double alpha = 0.05);

/// Row-wise (x - min) / (max - min); constant rows become zeros.
ScoreMatrix rescale_per_dataset(const ScoreMatrix& matrix);

struct WinLoss {
  int wins = 0;
  int losses = 0;
  int ties = 0;
  int failures = 0;
};

/// Per dataset the best available score wins; methods sharing the best score
/// each record a tie; missing cells (NA/Timeout) are failures.
std::vector<WinLoss> wins_losses(const std::vector<std::vector<std::optional<double>>>& scores,
                                 bool lower_is_better = true);

/// Mean and sample standard deviation (ddof = 1; 0 for a single value).
struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;
};
Summary summarize(std::span<const double> values);

}  // namespace tsbench
