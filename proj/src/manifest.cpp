#include "tsbench/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

using json = nlohmann::ordered_json;

double parse_real(const json& j) {
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::InvalidParameter, "bad real '" + s + "'");
  return v;
}

json scores_to_json(const std::map<Metric, double>& scores) {
  json out = json::object();
  for (const auto& [metric, value] : scores) out[to_string(metric)] = format_real(value);
  return out;
}

std::map<Metric, double> scores_from_json(const json& j) {
  std::map<Metric, double> out;
  for (const auto& [key, value] : j.items()) out[metric_from_string(key)] = parse_real(value);
  return out;
}

json configuration_to_json(const Configuration& c) {
  json out = json::object();
  for (const auto& [k, v] : c) out[k] = v;
  return out;
}

Configuration configuration_from_json(const json& j) {
  Configuration c;
  for (const auto& [k, v] : j.items()) c[k] = v.get<std::string>();
  return c;
}

json record_to_json(const EvaluationRecord& r) {
  return json{{"dataset", r.dataset},
              {"method", r.method},
              {"frequency", r.frequency},
              {"status", std::string(to_string(r.status))},
              {"reason", r.reason},
              {"series_evaluated", r.series_evaluated},
              {"runtime_seconds", format_real(r.runtime_seconds)},
              {"scores", scores_to_json(r.scores)}};
}

EvaluationRecord record_from_json(const json& j) {
  EvaluationRecord r;
  r.dataset = j.at("dataset").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.frequency = j.at("frequency").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.reason = j.at("reason").get<std::string>();
  r.series_evaluated = j.at("series_evaluated").get<int>();
  r.runtime_seconds = parse_real(j.at("runtime_seconds"));
  r.scores = scores_from_json(j.at("scores"));
  return r;
}

json tuning_to_json(const TuningRecord& t) {
  json series = json::array();
  for (const auto& s : t.series) {
    json trials = json::array();
    for (const auto& trial : s.trials)
      trials.push_back(json{{"configuration", configuration_to_json(trial.configuration)},
                            {"score", format_real(trial.score)},
                            {"error", trial.error}});
    series.push_back(json{{"series", s.series},
                          {"best_index", s.best_index},
                          {"best", configuration_to_json(s.best)},
                          {"trials", std::move(trials)}});
  }
  return json{{"dataset", t.dataset},
              {"method", t.method},
              {"seed", std::to_string(t.seed)},
              {"n_iter", t.n_iter},
              {"scoring", to_string(t.scoring)},
              {"status", std::string(to_string(t.status))},
              {"reason", t.reason},
              {"before", scores_to_json(t.before)},
              {"after", scores_to_json(t.after)},
              {"series", std::move(series)}};
}

TuningRecord tuning_from_json(const json& j) {
  TuningRecord t;
  t.dataset = j.at("dataset").get<std::string>();
  t.method = j.at("method").get<std::string>();
  t.seed = std::stoull(j.at("seed").get<std::string>());
  t.n_iter = j.at("n_iter").get<int>();
  t.scoring = metric_from_string(j.at("scoring").get<std::string>());
  t.status = status_from_string(j.at("status").get<std::string>());
  t.reason = j.at("reason").get<std::string>();
  t.before = scores_from_json(j.at("before"));
  t.after = scores_from_json(j.at("after"));
  for (const auto& sj : j.at("series")) {
    SeriesTuning s;
    s.series = sj.at("series").get<std::string>();
    s.best_index = sj.at("best_index").get<std::size_t>();
    s.best = configuration_from_json(sj.at("best"));
    for (const auto& tj : sj.at("trials"))
      s.trials.push_back(Trial{configuration_from_json(tj.at("configuration")), parse_real(tj.at("score")),
                               tj.at("error").get<std::string>()});
    t.series.push_back(std::move(s));
  }
  return t;
}

}  // namespace

std::string toolkit_version() { return TSBENCH_VERSION; }

std::string utc_timestamp() {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string manifest_to_json(const RunManifest& m) {
  std::set<std::pair<std::string, std::string>> keys;
  json records = json::array();
  for (const auto& r : m.records) {
    if (!keys.emplace(r.dataset, r.method).second)
      throw Error(ErrorCode::InvalidParameter, "duplicate record for " + r.dataset + " / " + r.method);
    records.push_back(record_to_json(r));
  }
  json tuning = json::array();
  for (const auto& t : m.tuning) tuning.push_back(tuning_to_json(t));
  const json doc{{"schema_version", m.schema_version},
                 {"config_hash", m.config_hash},
                 {"version", m.version},
                 {"timestamp", m.timestamp},
                 {"records", std::move(records)},
                 {"tuning", std::move(tuning)}};
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    RunManifest m;
    m.schema_version = doc.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion)
      throw Error(ErrorCode::InvalidParameter, fmt::format("unsupported schema version {}", m.schema_version));
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.timestamp = doc.at("timestamp").get<std::string>();
    for (const auto& r : doc.at("records")) m.records.push_back(record_from_json(r));
    if (doc.contains("tuning"))
      for (const auto& t : doc.at("tuning")) m.tuning.push_back(tuning_from_json(t));
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  const std::string text = manifest_to_json(manifest);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::ConfigError, "failed writing " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ManifestNotFound, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return manifest_from_json(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::ManifestNotFound, path.string() + ": " + e.what());
  }
}

}  // namespace tsbench
