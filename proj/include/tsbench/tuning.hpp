#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsbench/deadline.hpp"
#include "tsbench/forecast/spec.hpp"
#include "tsbench/metrics.hpp"

namespace tsbench {

/// (x^lambda - 1) / lambda, or ln x at lambda = 0. Throws NonPositiveData.
std::vector<double> box_cox(std::span<const double> x, double lambda);
std::vector<double> inverse_box_cox(std::span<const double> y, double lambda);

/// Maximises the Box-Cox profile log-likelihood over 61 equally spaced
/// lambdas in [-1, 2].
double estimate_box_cox_lambda(std::span<const double> x);

enum class Transform { standardize, boxcox };

struct Pipeline {
  /// Applied in order before fitting and undone in reverse afterwards.
  std::vector<Transform> steps;
  /// Box-Cox exponent; estimated from the training data when unset.
  std::optional<double> lambda;
  ForecasterSpec inner;
};

std::vector<double> pipeline_fit_predict(const Pipeline& pipeline, std::span<const double> train, int h,
                                         const Deadline& deadline = Deadline::none());

/// One assignment of string values to named parameters.
using Configuration = std::map<std::string, std::string>;

/// Sets one named parameter on a spec (e.g. "strategy" = "mean").
/// Throws InvalidParameter for names the method does not have or bad values.
void apply_parameter(ForecasterSpec& spec, const std::string& name, const std::string& value);
ForecasterSpec apply_configuration(ForecasterSpec spec, const Configuration& config);

struct SearchSpace {
  /// Parameter name and its candidate values, in declaration order.
  std::vector<std::pair<std::string, std::vector<std::string>>> parameters;
};

/// The tuning grid for a method; empty for methods without one.
SearchSpace default_search_space(Method method);

/// The pipeline tuned by default: Box-Cox then standard scaling around the
/// method's default spec with seasonal period `sp`.
Pipeline default_tuning_template(Method method, int sp);

struct Trial {
  Configuration configuration;
  double score = 0.0;  // +inf when the configuration failed
  std::string error;   // error code name for failed trials
};

struct TuningResult {
  std::vector<Trial> trials;
  std::size_t best_index = 0;
  Configuration best;
  Pipeline best_pipeline;
  std::uint64_t seed = 0;
  /// Forecast of the best pipeline refitted on the whole training series.
  std::vector<double> forecast;
};

struct SearchOptions {
  int n_iter = 20;
  std::uint64_t seed = 0;
  Metric scoring{MetricKind::sMAPE};
  int mase_period = 1;
};

/// Random search with the last h points of `train` held out for validation.
/// Ties go to the earliest trial. Throws AllTrialsFailed.
TuningResult random_search(const SearchSpace& space, const Pipeline& pipeline_template,
                           std::span<const double> train, int h, const SearchOptions& options,
                           const Deadline& deadline = Deadline::none());

}  // namespace tsbench
