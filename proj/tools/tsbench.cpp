#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tsbench/config.hpp"
#include "tsbench/error.hpp"
#include "tsbench/harness.hpp"
#include "tsbench/manifest.hpp"
#include "tsbench/report.hpp"
#include "tsbench/tsf.hpp"
#include "tsbench/tuning_run.hpp"

namespace fs = std::filesystem;
using namespace tsbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDataset = 2;

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<double> budget;
  std::optional<int> parallelism;
  std::string methods, datasets, metrics;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config, "INI run configuration")->required();
  cmd->add_option("--out", a.out, "manifest to write")->required();
  cmd->add_option("--budget", a.budget, "seconds per (dataset, method); default 3600");
  cmd->add_option("--parallelism", a.parallelism, "threads over series");
  cmd->add_option("--methods", a.methods, "comma-separated subset of methods");
  cmd->add_option("--datasets", a.datasets, "comma-separated dataset stems or paths");
  cmd->add_option("--metrics", a.metrics, "comma-separated metrics (smape, mase, rmse, ql0.5)");
}

// Applies command-line overrides and filters to the loaded configuration.
RunConfig effective_config(const CommonArgs& a) {
  RunConfig cfg = load_config(a.config);
  if (a.budget) cfg.budget_seconds = *a.budget;
  if (a.parallelism) cfg.parallelism = *a.parallelism;
  if (!a.methods.empty()) {
    std::vector<MethodEntry> picked;
    for (const auto& name : split_list(a.methods)) {
      auto it = std::find_if(cfg.methods.begin(), cfg.methods.end(), [&](const auto& m) { return m.name == name; });
      if (it != cfg.methods.end()) {
        picked.push_back(*it);
        continue;
      }
      try {
        picked.push_back(method_entry(name));
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigError, "unknown method '" + name + "'");
      }
    }
    cfg.methods = std::move(picked);
  }
  if (!a.datasets.empty()) {
    std::vector<fs::path> picked;
    for (const auto& name : split_list(a.datasets)) {
      auto it = std::find_if(cfg.datasets.begin(), cfg.datasets.end(),
                             [&](const fs::path& p) { return p.stem() == name || p == fs::path(name); });
      picked.push_back(it != cfg.datasets.end() ? *it : resolve_dataset_path(name, fs::current_path()));
    }
    cfg.datasets = std::move(picked);
  }
  if (!a.metrics.empty()) {
    cfg.metrics.clear();
    for (const auto& m : split_list(a.metrics)) {
      try {
        cfg.metrics.push_back(metric_from_string(m));
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigError, "unknown metric '" + m + "'");
      }
    }
  }
  if (cfg.budget_seconds <= 0) throw Error(ErrorCode::ConfigError, "budget must be positive");
  if (cfg.parallelism < 1) throw Error(ErrorCode::ConfigError, "parallelism must be >= 1");
  if (cfg.datasets.empty()) throw Error(ErrorCode::ConfigError, "no datasets configured");
  if (cfg.methods.empty()) throw Error(ErrorCode::ConfigError, "no methods configured");
  return cfg;
}

std::vector<Dataset> load_all(const RunConfig& cfg) {
  std::vector<Dataset> out;
  for (const auto& path : cfg.datasets) {
    try {
      out.push_back(load_tsf(path));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DatasetLoadError) throw;
      throw Error(ErrorCode::DatasetLoadError, path.string() + ": " + e.what());
    }
  }
  return out;
}

RunManifest new_manifest(const RunConfig& cfg) {
  RunManifest m;
  m.config_hash = config_hash(cfg);
  m.version = toolkit_version();
  m.timestamp = utc_timestamp();
  return m;
}

void log_record(const EvaluationRecord& r) {
  std::cerr << fmt::format("{:<32} {:<24} {:<8} {:.2f}s {}\n", r.dataset, r.method, to_string(r.status),
                           r.runtime_seconds, r.reason);
}

int cmd_run(const CommonArgs& a) {
  const RunConfig cfg = effective_config(a);
  const std::vector<Dataset> datasets = load_all(cfg);
  RunManifest manifest = new_manifest(cfg);
  manifest.records = run_benchmark(datasets, cfg.methods, cfg.metrics,
                                   EvaluateOptions{cfg.budget_seconds, cfg.parallelism});
  for (const auto& r : manifest.records) log_record(r);
  write_manifest(manifest, a.out);
  return kExitOk;
}

int cmd_tune(const CommonArgs& a, std::optional<int> n_iter, std::optional<std::uint64_t> seed) {
  RunConfig cfg = effective_config(a);
  if (n_iter) cfg.tune.n_iter = *n_iter;
  if (seed) cfg.tune.seed = *seed;
  if (cfg.tune.n_iter < 1) throw Error(ErrorCode::ConfigError, "n_iter must be >= 1");

  std::vector<MethodEntry> targets;
  if (cfg.tune.methods.empty() || !a.methods.empty()) {
    targets = cfg.methods;
  } else {
    for (const auto& name : cfg.tune.methods) {
      auto it = std::find_if(cfg.methods.begin(), cfg.methods.end(), [&](const auto& m) { return m.name == name; });
      try {
        targets.push_back(it != cfg.methods.end() ? *it : method_entry(name));
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigError, "unknown method to tune '" + name + "'");
      }
    }
  }
  for (const auto& t : targets) search_space_for(t, cfg.tune);  // reject untunable methods up front

  const std::vector<Dataset> datasets = load_all(cfg);
  RunManifest manifest = new_manifest(cfg);
  const EvaluateOptions options{cfg.budget_seconds, cfg.parallelism};
  for (const Dataset& d : datasets) {
    for (const MethodEntry& m : targets) {
      EvaluationRecord before = evaluate(m, d, cfg.metrics, options);
      TuneOutcome outcome = tune_dataset(m, d, cfg.tune, cfg.metrics, cfg.budget_seconds, before);
      log_record(before);
      log_record(outcome.tuned);
      manifest.records.push_back(std::move(before));
      manifest.records.push_back(std::move(outcome.tuned));
      manifest.tuning.push_back(std::move(outcome.tuning));
    }
  }
  std::stable_sort(manifest.records.begin(), manifest.records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.dataset, x.method) < std::tie(y.dataset, y.method);
  });
  std::stable_sort(manifest.tuning.begin(), manifest.tuning.end(), [](const auto& x, const auto& y) {
    return std::tie(x.dataset, x.method) < std::tie(y.dataset, y.method);
  });
  write_manifest(manifest, a.out);
  return kExitOk;
}

int cmd_report(const std::string& in, const std::string& metric, const std::string& out_dir, double alpha,
               const std::string& domains) {
  ReportOptions options;
  try {
    options.metric = metric_from_string(metric);
  } catch (const Error&) {
    throw Error(ErrorCode::ConfigError, "unknown metric '" + metric + "'");
  }
  options.alpha = alpha;
  if (!domains.empty()) {
    options.domains = DomainMap::load(domains);
  } else if (fs::exists(TSBENCH_DOMAINS_FILE)) {
    options.domains = DomainMap::load(TSBENCH_DOMAINS_FILE);
  }
  const RunManifest manifest = read_manifest(in);
  for (const auto& path : write_report(manifest, options, out_dir)) std::cout << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time series forecasting benchmark"};
  app.set_version_flag("--version", toolkit_version());
  app.require_subcommand(1);

  CommonArgs run_args;
  auto* run = app.add_subcommand("run", "evaluate methods on datasets and write a manifest");
  add_common(run, run_args);

  CommonArgs tune_args;
  std::optional<int> n_iter;
  std::optional<std::uint64_t> seed;
  auto* tune = app.add_subcommand("tune", "random-search tuning with before/after scores");
  add_common(tune, tune_args);
  tune->add_option("--n-iter", n_iter, "trials per series");
  tune->add_option("--seed", seed, "random seed");

  std::string in, metric = "smape", out_dir = "report", domains;
  double alpha = 0.05;
  auto* report = app.add_subcommand("report", "tables, ranks and CD diagram from a manifest");
  report->add_option("--in", in, "manifest")->required();
  report->add_option("--metric", metric, "metric to report");
  report->add_option("--out-dir", out_dir, "output directory");
  report->add_option("--alpha", alpha, "significance level");
  report->add_option("--domains", domains, "dataset,domain CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*tune) return cmd_tune(tune_args, n_iter, seed);
    return cmd_report(in, metric, out_dir, alpha, domains);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::DatasetLoadError ? kExitDataset : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
