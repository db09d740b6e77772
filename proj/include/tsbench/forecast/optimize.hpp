#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tsbench/deadline.hpp"

namespace tsbench::optimize {

using Objective = std::function<double(std::span<const double>)>;

struct Options {
  double tolerance = 1e-6;
  int max_evaluations = 500;
  const Deadline* deadline = nullptr;
};

struct Result {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Box-constrained Nelder-Mead. Trial points are projected onto
/// [lower, upper]; non-finite objective values are treated as +inf.
/// Converges when the spread of simplex values and the simplex diameter both
/// fall below the tolerance.
Result nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> lower,
                   std::span<const double> upper, const Options& options = {});

/// Golden-section search for a unimodal function on [lower, upper].
Result golden_section(const std::function<double(double)>& f, double lower, double upper,
                      const Options& options = {});

}  // namespace tsbench::optimize
