#include "tsbench/report.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

using json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  out << text;
}

void strip_all(std::string& s, std::string_view token) {
  for (auto pos = s.find(token); pos != std::string::npos; pos = s.find(token)) s.erase(pos, token.size());
}

}  // namespace

ResultTable result_table(const std::vector<EvaluationRecord>& records, const Metric& metric) {
  ResultTable t;
  t.metric = metric;
  std::map<std::string, std::string> freq;
  std::set<std::string> methods;
  bool present = false;
  for (const auto& r : records) {
    freq.emplace(r.dataset, r.frequency);
    methods.insert(r.method);
    present = present || r.scores.contains(metric);
  }
  if (!present) throw Error(ErrorCode::MetricAbsent, to_string(metric));
  for (const auto& [d, f] : freq) {
    t.datasets.push_back(d);
    t.frequencies.push_back(f);
  }
  t.methods.assign(methods.begin(), methods.end());
  t.cells.assign(t.datasets.size(), std::vector<std::optional<double>>(t.methods.size()));
  for (const auto& r : records) {
    if (r.status != Status::Ok) continue;
    const auto it = r.scores.find(metric);
    if (it == r.scores.end()) continue;
    const auto row = std::lower_bound(t.datasets.begin(), t.datasets.end(), r.dataset) - t.datasets.begin();
    const auto col = std::lower_bound(t.methods.begin(), t.methods.end(), r.method) - t.methods.begin();
    t.cells[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = it->second;
  }
  return t;
}

ScoreMatrix complete_rows(const ResultTable& table) {
  ScoreMatrix m;
  m.methods = table.methods;
  for (std::size_t i = 0; i < table.datasets.size(); ++i) {
    const auto& row = table.cells[i];
    if (std::any_of(row.begin(), row.end(), [](const auto& v) { return !v; })) continue;
    m.datasets.push_back(table.datasets[i]);
    std::vector<double> values;
    for (const auto& v : row) values.push_back(*v);
    m.scores.push_back(std::move(values));
  }
  return m;
}

std::string wins_losses_csv(const ResultTable& table) {
  const auto counts = wins_losses(table.cells);
  std::string out = "method,wins,losses,ties,failures\n";
  for (std::size_t j = 0; j < table.methods.size(); ++j)
    out += fmt::format("{},{},{},{},{}\n", csv_field(table.methods[j]), counts[j].wins, counts[j].losses,
                       counts[j].ties, counts[j].failures);
  return out;
}

std::string ranks_json(const ResultTable& table, double alpha) {
  const ScoreMatrix m = complete_rows(table);
  json doc{{"metric", to_string(table.metric)},
           {"alpha", alpha},
           {"methods", m.methods},
           {"datasets", m.datasets}};
  if (m.methods.size() < 2 || m.scores.empty()) {
    doc["avg_rank"] = json::array();
    doc["friedman"] = nullptr;
    doc["pairwise"] = json::array();
    doc["cliques"] = json::array();
    return doc.dump(2) + "\n";
  }
  const SignificanceReport rep = significance_report(m, alpha);
  doc["avg_rank"] = rep.ranks.avg_rank;
  doc["friedman"] = json{{"statistic", rep.friedman.statistic}, {"p_value", rep.friedman.p_value}};
  json pairs = json::array();
  for (const auto& p : rep.pairwise)
    pairs.push_back(json{{"a", m.methods[p.i]}, {"b", m.methods[p.j]}, {"raw_p", p.raw_p},
                         {"adjusted_p", p.adjusted_p}});
  doc["pairwise"] = std::move(pairs);
  json cliques = json::array();
  for (const auto& c : rep.cliques) {
    json names = json::array();
    for (auto idx : c) names.push_back(m.methods[idx]);
    cliques.push_back(std::move(names));
  }
  doc["cliques"] = std::move(cliques);
  return doc.dump(2) + "\n";
}

std::string cd_diagram_svg(const std::vector<std::string>& methods, const std::vector<double>& avg_rank,
                           const std::vector<std::vector<std::size_t>>& cliques) {
  const std::size_t k = methods.size();
  constexpr double left = 160.0, right = 640.0, axis_y = 60.0, width = 800.0;
  const double hi = std::max<double>(static_cast<double>(k), 1.0);
  auto x_of = [&](double rank) {
    if (hi <= 1.0) return 0.5 * (left + right);
    return left + (rank - 1.0) / (hi - 1.0) * (right - left);
  };

  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return avg_rank[a] < avg_rank[b]; });

  std::vector<const std::vector<std::size_t>*> bars;
  for (const auto& c : cliques)
    if (c.size() >= 2) bars.push_back(&c);

  const std::size_t half = (k + 1) / 2;
  const double labels_top = axis_y + 30.0 + 10.0 * static_cast<double>(bars.size());
  const double height = labels_top + 22.0 * static_cast<double>(half) + 20.0;

  std::string svg = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  svg += fmt::format("<line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                     left, axis_y, right, axis_y);
  for (std::size_t r = 1; r <= std::max<std::size_t>(k, 1); ++r) {
    const double x = x_of(static_cast<double>(r));
    svg += fmt::format("<line class=\"axis-tick\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                       "stroke=\"black\"/>\n",
                       x, axis_y - 6.0, x, axis_y);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x, axis_y - 10.0, r);
  }

  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::size_t m = order[pos];
    const double x = x_of(avg_rank[m]);
    const bool on_left = pos < half;
    const double y = labels_top + 22.0 * static_cast<double>(on_left ? pos : k - 1 - pos);
    const double end_x = on_left ? left - 10.0 : right + 10.0;
    svg += fmt::format("<g class=\"method\">"
                       "<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"none\" "
                       "stroke=\"black\"/>"
                       "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"{}\">{} ({:.4f})</text></g>\n",
                       x, axis_y, x, y, end_x, y, on_left ? end_x - 4.0 : end_x + 4.0, y + 4.0,
                       on_left ? "end" : "start", xml_escape(methods[m]), avg_rank[m]);
  }

  for (std::size_t b = 0; b < bars.size(); ++b) {
    double lo = avg_rank[bars[b]->front()], hi_rank = lo;
    for (auto idx : *bars[b]) {
      lo = std::min(lo, avg_rank[idx]);
      hi_rank = std::max(hi_rank, avg_rank[idx]);
    }
    const double y = axis_y + 16.0 + 10.0 * static_cast<double>(b);
    svg += fmt::format("<line class=\"clique\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                       "stroke=\"black\" stroke-width=\"4\"/>\n",
                       x_of(lo) - 3.0, y, x_of(hi_rank) + 3.0, y);
  }
  svg += "</svg>\n";
  return svg;
}

std::string rescaled_csv(const ResultTable& table) {
  const ScoreMatrix m = rescale_per_dataset(complete_rows(table));
  std::string out = "dataset";
  for (const auto& name : m.methods) out += "," + csv_field(name);
  out += "\n";
  for (std::size_t i = 0; i < m.datasets.size(); ++i) {
    out += csv_field(m.datasets[i]);
    for (double v : m.scores[i]) out += "," + format_real(v);
    out += "\n";
  }
  return out;
}

std::string normalize_dataset_name(std::string_view name) {
  std::string s;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  strip_all(s, "withoutmissingvalues");
  strip_all(s, "withmissingvalues");
  strip_all(s, "dataset");
  return s;
}

DomainMap DomainMap::parse(std::istream& in) {
  DomainMap d;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("dataset,", 0) == 0) continue;
    }
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ConfigError, "domain line without comma: " + line);
    d.map_[normalize_dataset_name(line.substr(0, comma))] = line.substr(comma + 1);
  }
  return d;
}

DomainMap DomainMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open domain map " + path.string());
  return parse(in);
}

std::optional<std::string> DomainMap::domain_of(std::string_view dataset) const {
  const auto it = map_.find(normalize_dataset_name(dataset));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

GroupSummaryTable group_summaries(const ResultTable& table,
                                  const std::function<std::optional<std::string>(std::size_t)>& group_of) {
  std::map<std::string, std::vector<std::vector<double>>> values;
  for (std::size_t i = 0; i < table.datasets.size(); ++i) {
    const auto g = group_of(i);
    if (!g) continue;
    auto& per_method = values[*g];
    per_method.resize(table.methods.size());
    for (std::size_t j = 0; j < table.methods.size(); ++j)
      if (table.cells[i][j]) per_method[j].push_back(*table.cells[i][j]);
  }
  GroupSummaryTable out;
  out.methods = table.methods;
  for (const auto& [g, per_method] : values) {
    out.groups.push_back(g);
    std::vector<Summary> row;
    for (const auto& v : per_method) row.push_back(summarize(v));
    out.summaries.push_back(std::move(row));
  }
  return out;
}

GroupSummaryTable frequency_summaries(const ResultTable& table) {
  return group_summaries(table, [&](std::size_t i) { return std::optional<std::string>(table.frequencies[i]); });
}

GroupSummaryTable domain_summaries(const ResultTable& table, const DomainMap& domains) {
  return group_summaries(table, [&](std::size_t i) { return domains.domain_of(table.datasets[i]); });
}

std::string group_summary_csv(const GroupSummaryTable& s) {
  std::string out = "group";
  for (const auto& m : s.methods) out += "," + csv_field(m + "_mean") + "," + csv_field(m + "_std");
  out += "\n";
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    out += csv_field(s.groups[g]);
    for (const auto& summary : s.summaries[g]) {
      if (summary.count == 0) {
        out += ",,";
      } else {
        out += "," + format_real(summary.mean) + "," + format_real(summary.stddev);
      }
    }
    out += "\n";
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const RunManifest& manifest, const ReportOptions& options,
                                                const std::filesystem::path& out_dir) {
  const ResultTable table = result_table(manifest.records, options.metric);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& text) {
    write_text(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  emit("wins_losses.csv", wins_losses_csv(table));
  emit("ranks.json", ranks_json(table, options.alpha));

  const ScoreMatrix complete = complete_rows(table);
  std::vector<double> avg_rank;
  std::vector<std::vector<std::size_t>> cliques;
  if (complete.methods.size() >= 2 && !complete.scores.empty()) {
    const SignificanceReport rep = significance_report(complete, options.alpha);
    avg_rank = rep.ranks.avg_rank;
    cliques = rep.cliques;
  }
  emit("cd_diagram.svg", cd_diagram_svg(avg_rank.empty() ? std::vector<std::string>{} : complete.methods,
                                        avg_rank, cliques));
  emit("rescaled.csv", rescaled_csv(table));
  emit("summary_frequency.csv", group_summary_csv(frequency_summaries(table)));
  emit("summary_domain.csv", group_summary_csv(domain_summaries(table, options.domains)));
  return written;
}

}  // namespace tsbench
