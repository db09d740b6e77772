#include "tsbench/forecast/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsbench::optimize {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kInf;
}

}  // namespace

Result nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> lower,
                   std::span<const double> upper, const Options& options) {
  const std::size_t n = start.size();
  Result result;
  if (n == 0) {
    result.value = safe_eval(f, start);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return safe_eval(f, x);
  };

  project(start);
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    const double width = upper[i] - lower[i];
    double step = std::isfinite(width) ? 0.1 * width : std::max(0.1 * std::abs(start[i]), 0.1);
    if (start[i] + step > upper[i]) step = -step;
    simplex[i + 1][i] += step;
    project(simplex[i + 1]);
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;

  while (evals < options.max_evaluations) {
    if (options.deadline) options.deadline->check();
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
    const double spread = std::isfinite(values[worst]) ? values[worst] - values[best] : kInf;
    if (spread <= options.tolerance * (1.0 + std::abs(values[best])) && diameter <= options.tolerance) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    }

    for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
    project(trial);
    const double reflected = eval(trial);

    if (reflected < values[best]) {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + 2.0 * (centroid[j] - simplex[worst][j]);
      project(trial2);
      const double expanded = eval(trial2);
      if (expanded < reflected) {
        simplex[worst] = trial2;
        values[worst] = expanded;
      } else {
        simplex[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second]) {
      simplex[worst] = trial;
      values[worst] = reflected;
      continue;
    }
    const bool outside = reflected < values[worst];
    for (std::size_t j = 0; j < n; ++j) {
      const double towards = outside ? trial[j] : simplex[worst][j];
      trial2[j] = centroid[j] + 0.5 * (towards - centroid[j]);
    }
    project(trial2);
    const double contracted = eval(trial2);
    if (contracted < std::min(reflected, values[worst])) {
      simplex[worst] = trial2;
      values[worst] = contracted;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j)
        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = evals;
  result.converged = converged;
  return result;
}

Result golden_section(const std::function<double(double)>& f, double lower, double upper,
                      const Options& options) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto g = [&](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };
  double a = lower, b = upper;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  int evals = 2;
  while (b - a > options.tolerance && evals < options.max_evaluations) {
    if (options.deadline) options.deadline->check();
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
    ++evals;
  }
  Result r;
  const double x = fc <= fd ? c : d;
  r.x = {x};
  r.value = std::min(fc, fd);
  r.evaluations = evals;
  r.converged = b - a <= options.tolerance;
  // Bounds themselves are candidates; golden section never samples them.
  for (double edge : {lower, upper}) {
    const double fe = g(edge);
    ++r.evaluations;
    if (fe < r.value) {
      r.value = fe;
      r.x = {edge};
    }
  }
  return r;
}

}  // namespace tsbench::optimize
