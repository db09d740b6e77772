#include "tsbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

// Average ranks (1-based) of v in ascending order; ties share the mean rank.
std::vector<double> fractional_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

// Sum over tie groups of t^3 - t.
double tie_term(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    acc += t * t * t - t;
    i = j + 1;
  }
  return acc;
}

}  // namespace

RankTable rank_rows(const ScoreMatrix& matrix) {
  RankTable t;
  const std::size_t k = matrix.methods.size();
  t.avg_rank.assign(k, 0.0);
  for (const auto& row : matrix.scores) {
    if (row.size() != k) throw Error(ErrorCode::LengthMismatch, "score row width differs from method count");
    std::vector<double> key(row);
    if (!matrix.lower_is_better)
      for (double& v : key) v = -v;
    t.ranks.push_back(fractional_ranks(key));
    for (std::size_t j = 0; j < k; ++j) t.avg_rank[j] += t.ranks.back()[j];
  }
  if (!t.ranks.empty())
    for (double& v : t.avg_rank) v /= static_cast<double>(t.ranks.size());
  return t;
}

TestResult friedman_test(const RankTable& ranks) {
  const std::size_t n = ranks.ranks.size();
  const std::size_t k = ranks.avg_rank.size();
  if (k < 2 || n < 1) throw Error(ErrorCode::DegenerateInput, "Friedman test needs k >= 2 and N >= 1");
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  double numerator = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double dev = ranks.avg_rank[j] * nn - nn * (kk + 1.0) / 2.0;
    numerator += dev * dev;
  }
  double ties = 0.0;
  for (const auto& row : ranks.ranks) ties += tie_term(row);
  const double denominator = nn * kk * (kk + 1.0) - ties / (kk - 1.0);
  TestResult r;
  if (denominator <= 1e-12 * nn * kk * (kk + 1.0)) return r;  // every row fully tied
  r.statistic = 12.0 * numerator / denominator;
  const boost::math::chi_squared dist(kk - 1.0);
  r.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, r.statistic)), 0.0, 1.0);
  return r;
}

std::vector<double> holm_adjust(std::span<const double> p) {
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidP, "p-values must lie in [0, 1]");
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  std::vector<double> out(m);
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    running = std::max(running, static_cast<double>(m - i) * p[order[i]]);
    out[order[i]] = std::min(1.0, running);
  }
  return out;
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
  if (x.empty()) throw Error(ErrorCode::EmptyInput, "no pairs");
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) d.push_back(x[i] - y[i]);
  if (d.empty()) throw Error(ErrorCode::AllDifferencesZero, "every paired difference is zero");

  const std::size_t n = d.size();
  std::vector<double> mags(n);
  for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(d[i]);
  const std::vector<double> ranks = fractional_ranks(mags);
  double w_plus = 0.0, w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) (d[i] > 0 ? w_plus : w_minus) += ranks[i];

  TestResult r;
  r.statistic = std::min(w_plus, w_minus);
  if (n <= 25) {
    // Null distribution of the doubled positive-rank sum; doubling keeps
    // tied half-ranks integral.
    std::vector<int> doubled(n);
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    for (int v : doubled)
      for (int s = total; s >= v; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - v)];
    const auto observed = static_cast<int>(std::lround(2.0 * r.statistic));
    double tail = 0.0;
    for (int s = 0; s <= observed; ++s) tail += counts[static_cast<std::size_t>(s)];
    r.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term(mags) / 48.0;
    if (!(var > 0.0)) {
      r.p_value = 1.0;
      return r;
    }
    const double z = std::max(0.0, std::abs(r.statistic - mean) - 0.5) / std::sqrt(var);
    const boost::math::normal normal;
    r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(normal, z)));
  }
  return r;
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
  if (x.size() < 2) throw Error(ErrorCode::DegenerateInput, "paired t-test needs two pairs");
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw Error(ErrorCode::ZeroVariance, "paired differences have zero variance");
  TestResult r;
  r.statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.statistic))));
  return r;
}

std::vector<std::vector<std::size_t>> cd_cliques(std::span<const double> avg_rank,
                                                 const std::vector<std::vector<double>>& adjusted_p,
                                                 double alpha) {
  const std::size_t k = avg_rank.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return avg_rank[a] < avg_rank[b]; });

  auto together = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a <= hi; ++a)
      for (std::size_t b = a + 1; b <= hi; ++b)
        if (adjusted_p[order[a]][order[b]] < alpha) return false;
    return true;
  };

  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i;
    while (j + 1 < k && together(i, j + 1)) ++j;
    spans.emplace_back(i, j);
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < spans.size(); ++s) {
    const auto [i, j] = spans[s];
    bool contained = false;
    for (std::size_t t = 0; t < spans.size() && !contained; ++t)
      contained = t != s && spans[t].first <= i && j <= spans[t].second && spans[t] != spans[s];
    if (contained) continue;
    std::vector<std::size_t> members;
    for (std::size_t m = i; m <= j; ++m) members.push_back(order[m]);
    out.push_back(std::move(members));
  }
  return out;
}

SignificanceReport significance_report(const ScoreMatrix& matrix, double alpha) {
  SignificanceReport rep;
  rep.ranks = rank_rows(matrix);
  rep.friedman = friedman_test(rep.ranks);
  const std::size_t k = matrix.methods.size();
  std::vector<double> raw;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<double> a, b;
      for (const auto& row : matrix.scores) {
        a.push_back(row[i]);
        b.push_back(row[j]);
      }
      PairwiseResult pr{i, j, 1.0, 1.0};
      try {
        pr.raw_p = wilcoxon_signed_rank(a, b).p_value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AllDifferencesZero) throw;
      }
      raw.push_back(pr.raw_p);
      rep.pairwise.push_back(pr);
    }
  }
  const std::vector<double> adj = holm_adjust(raw);
  std::vector<std::vector<double>> p(k, std::vector<double>(k, 1.0));
  for (std::size_t idx = 0; idx < rep.pairwise.size(); ++idx) {
    auto& pr = rep.pairwise[idx];
    pr.adjusted_p = adj[idx];
    p[pr.i][pr.j] = p[pr.j][pr.i] = adj[idx];
  }
  rep.cliques = cd_cliques(rep.ranks.avg_rank, p, alpha);
  return rep;
}

ScoreMatrix rescale_per_dataset(const ScoreMatrix& matrix) {
  ScoreMatrix out = matrix;
  for (auto& row : out.scores) {
    if (row.empty()) continue;
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    const double min = *lo, range = *hi - *lo;
    for (double& v : row) v = range > 0.0 ? (v - min) / range : 0.0;
  }
  return out;
}

std::vector<WinLoss> wins_losses(const std::vector<std::vector<std::optional<double>>>& scores,
                                 bool lower_is_better) {
  const std::size_t k = scores.empty() ? 0 : scores.front().size();
  std::vector<WinLoss> out(k);
  for (const auto& row : scores) {
    if (row.size() != k) throw Error(ErrorCode::LengthMismatch, "ragged score table");
    std::optional<double> best;
    for (const auto& v : row)
      if (v && (!best || (lower_is_better ? *v < *best : *v > *best))) best = v;
    const auto leaders = std::count_if(row.begin(), row.end(), [&](const auto& v) { return v && *v == *best; });
    for (std::size_t j = 0; j < k; ++j) {
      if (!row[j]) {
        ++out[j].failures;
      } else if (*row[j] == *best) {
        ++(leaders > 1 ? out[j].ties : out[j].wins);
      } else {
        ++out[j].losses;
      }
    }
  }
  return out;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace tsbench
