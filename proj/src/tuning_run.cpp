#include "tsbench/tuning_run.hpp"

#include <chrono>
#include <optional>

#include "tsbench/deadline.hpp"
#include "tsbench/error.hpp"

namespace tsbench {

SearchSpace search_space_for(const MethodEntry& entry, const TuneSettings& settings) {
  const Method method = method_of(entry.spec);
  if (auto it = settings.spaces.find(entry.name); it != settings.spaces.end()) return it->second;
  if (auto it = settings.spaces.find(std::string(to_string(method))); it != settings.spaces.end())
    return it->second;
  SearchSpace space = default_search_space(method);
  if (space.parameters.empty())
    throw Error(ErrorCode::ConfigError, "no tuning grid for " + std::string(to_string(method)));
  return space;
}

TuneOutcome tune_dataset(const MethodEntry& entry, const Dataset& dataset, const TuneSettings& settings,
                         std::span<const Metric> metrics, double budget_seconds, const EvaluationRecord& before) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchSpace space = search_space_for(entry, settings);
  const int sp = seasonal_period(dataset.frequency);
  const Method method = method_of(entry.spec);

  Pipeline tmpl = default_tuning_template(method, sp);
  ForecasterSpec inner = entry.period_from_data ? with_period(entry.spec, sp) : entry.spec;
  if (auto* es = std::get_if<ExpSmoothingParams>(&inner)) {
    const auto* d = std::get_if<ExpSmoothingParams>(&tmpl.inner);
    es->trend = d->trend;
    es->damped = d->damped;
  }
  tmpl.inner = inner;

  TuneOutcome out;
  auto& rec = out.tuning;
  rec.dataset = dataset.name;
  rec.method = entry.name;
  rec.seed = settings.seed;
  rec.n_iter = settings.n_iter;
  rec.scoring = settings.scoring;
  if (before.status == Status::Ok) rec.before = before.scores;

  auto& tuned = out.tuned;
  tuned.dataset = dataset.name;
  tuned.method = entry.name + "-tuned";
  tuned.frequency = std::string(to_string(dataset.frequency));

  SearchOptions options;
  options.n_iter = settings.n_iter;
  options.seed = settings.seed;
  options.scoring = settings.scoring;
  options.mase_period = sp;
  const Deadline deadline = Deadline::after(budget_seconds);

  std::vector<std::vector<double>> per_metric(metrics.size());
  std::optional<ErrorCode> first_metric_error;
  try {
    for (const TimeSeries& series : dataset.series) {
      const auto full = TimeSeries::from_values(series.name(), locf_impute(series), series.frequency(),
                                                series.start());
      const auto [train_ts, test_ts] = temporal_train_test_split(full, dataset.horizon);
      const std::vector<double> train = train_ts.observed();
      const std::vector<double> test = test_ts.observed();
      TuningResult r = random_search(space, tmpl, train, dataset.horizon.steps(), options, deadline);
      for (std::size_t k = 0; k < metrics.size(); ++k) {
        try {
          per_metric[k].push_back(score(metrics[k], test, r.forecast, train, sp));
        } catch (const Error& e) {
          if (!first_metric_error) first_metric_error = e.code();
        }
      }
      rec.series.push_back(SeriesTuning{series.name(), std::move(r.trials), r.best_index, std::move(r.best)});
    }
    for (std::size_t k = 0; k < metrics.size(); ++k)
      if (!per_metric[k].empty()) tuned.scores[metrics[k]] = aggregate(per_metric[k]);
    tuned.series_evaluated = static_cast<int>(dataset.series.size());
    if (tuned.scores.empty()) {
      tuned.status = Status::NA;
      tuned.reason = std::string(to_string(first_metric_error.value_or(ErrorCode::EmptyInput)));
    }
  } catch (const Error& e) {
    tuned.scores.clear();
    tuned.series_evaluated = 0;
    if (e.code() == ErrorCode::DeadlineExceeded) {
      tuned.status = Status::Timeout;
    } else {
      tuned.status = Status::NA;
      tuned.reason = std::string(to_string(e.code()));
    }
  }
  rec.status = tuned.status;
  rec.reason = tuned.reason;
  rec.after = tuned.scores;
  tuned.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace tsbench
