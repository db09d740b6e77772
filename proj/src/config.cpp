#include "tsbench/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "tsbench/error.hpp"
#include "tsbench/manifest.hpp"

namespace tsbench {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    T v{};
    if constexpr (std::is_same_v<T, double>) v = std::stod(text, &used);
    else if constexpr (std::is_same_v<T, int>) v = std::stoi(text, &used);
    else v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, fmt::format("{} must be numeric, got '{}'", key, text));
  }
}

MethodEntry custom_entry(const std::string& name, const pt::ptree& section) {
  const auto base = section.get_optional<std::string>("method");
  MethodEntry entry;
  try {
    entry = method_entry(base ? trim(*base) : name);
    entry.name = name;
    for (const auto& [key, value] : section) {
      if (key == "method") continue;
      apply_parameter(entry.spec, key, trim(value.data()));
      if (key == "sp") entry.period_from_data = false;
    }
    validate(entry.spec);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, fmt::format("[method.{}]: {}", name, e.what()));
  }
  return entry;
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    std::string item = trim(text.substr(pos, end - pos));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::filesystem::path resolve_dataset_path(const std::string& entry, const std::filesystem::path& base_dir) {
  const std::filesystem::path p(entry);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("TSBENCH_DATA_DIR"); root && *root) return std::filesystem::path(root) / p;
  return base_dir / p;
}

MethodEntry method_entry(const std::string& name) {
  return default_method(method_from_string(name));
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }

  RunConfig cfg;
  std::map<std::string, MethodEntry> custom;
  for (const auto& [section, body] : tree) {
    if (section.rfind("method.", 0) == 0) {
      const std::string name = section.substr(7);
      custom.emplace(name, custom_entry(name, body));
    } else if (section.rfind("space.", 0) == 0) {
      SearchSpace space;
      for (const auto& [key, value] : body) space.parameters.emplace_back(key, split_list(value.data()));
      cfg.tune.spaces[section.substr(6)] = std::move(space);
    } else if (section != "run" && section != "tune") {
      throw Error(ErrorCode::ConfigError, "unknown section [" + section + "]");
    }
  }

  const pt::ptree run = tree.get_child("run", pt::ptree());
  for (const auto& [key, value] : run) {
    const std::string v = trim(value.data());
    if (key == "datasets") {
      for (const auto& d : split_list(v)) cfg.datasets.push_back(resolve_dataset_path(d, base_dir));
    } else if (key == "methods") {
      for (const auto& name : split_list(v)) {
        if (auto it = custom.find(name); it != custom.end()) {
          cfg.methods.push_back(it->second);
          continue;
        }
        try {
          cfg.methods.push_back(method_entry(name));
        } catch (const Error&) {
          throw Error(ErrorCode::ConfigError, "unknown method '" + name + "'");
        }
      }
    } else if (key == "metrics") {
      cfg.metrics.clear();
      for (const auto& m : split_list(v)) {
        try {
          cfg.metrics.push_back(metric_from_string(m));
        } catch (const Error&) {
          throw Error(ErrorCode::ConfigError, "unknown metric '" + m + "'");
        }
      }
    } else if (key == "budget") {
      cfg.budget_seconds = number<double>(key, v);
    } else if (key == "parallelism") {
      cfg.parallelism = number<int>(key, v);
    } else {
      throw Error(ErrorCode::ConfigError, "unknown key run." + key);
    }
  }

  const pt::ptree tune = tree.get_child("tune", pt::ptree());
  for (const auto& [key, value] : tune) {
    const std::string v = trim(value.data());
    if (key == "methods") {
      cfg.tune.methods = split_list(v);
    } else if (key == "n_iter") {
      cfg.tune.n_iter = number<int>(key, v);
    } else if (key == "seed") {
      cfg.tune.seed = number<std::uint64_t>(key, v);
    } else if (key == "scoring") {
      try {
        cfg.tune.scoring = metric_from_string(v);
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigError, "unknown scoring metric '" + v + "'");
      }
    } else {
      throw Error(ErrorCode::ConfigError, "unknown key tune." + key);
    }
  }

  if (cfg.budget_seconds <= 0) throw Error(ErrorCode::ConfigError, "budget must be positive");
  if (cfg.parallelism < 1) throw Error(ErrorCode::ConfigError, "parallelism must be >= 1");
  if (cfg.tune.n_iter < 1) throw Error(ErrorCode::ConfigError, "n_iter must be >= 1");
  if (cfg.metrics.empty()) throw Error(ErrorCode::ConfigError, "no metrics");
  std::set<std::string> names;
  for (const auto& m : cfg.methods)
    if (!names.insert(m.name).second) throw Error(ErrorCode::ConfigError, "method listed twice: " + m.name);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

std::string canonical_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& d : cfg.datasets) out += "dataset=" + d.generic_string() + "\n";
  for (const auto& m : cfg.methods)
    out += fmt::format("method={}|{}|{}\n", m.name, describe(m.spec), m.period_from_data ? "data-sp" : "fixed-sp");
  for (const auto& m : cfg.metrics) out += "metric=" + to_string(m) + "\n";
  out += "budget=" + format_real(cfg.budget_seconds) + "\n";
  out += fmt::format("tune.n_iter={}\ntune.seed={}\ntune.scoring={}\n", cfg.tune.n_iter, cfg.tune.seed,
                     to_string(cfg.tune.scoring));
  for (const auto& m : cfg.tune.methods) out += "tune.method=" + m + "\n";
  for (const auto& [name, space] : cfg.tune.spaces)
    for (const auto& [param, values] : space.parameters)
      out += fmt::format("space.{}.{}={}\n", name, param, fmt::join(values, ","));
  return out;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a_hex(canonical_text(cfg)); }

}  // namespace tsbench
