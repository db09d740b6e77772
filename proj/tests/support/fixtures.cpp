#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tsbench::testing {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(TSBENCH_FIXTURE_DIR) / name; }

const std::vector<std::string>& classical_methods() {
  static const std::vector<std::string> m{"Naive",           "STLForecaster", "Theta",
                                          "Trend",           "PolynomialTrend", "AutoARIMA",
                                          "ExponentialSmoothing", "AutoETS", "Prophet"};
  return m;
}

std::vector<EvaluationRecord> table_records(const std::filesystem::path& csv, const Metric& metric,
                                            const std::vector<std::string>& methods) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("missing fixture " + csv.string());
  std::string line;
  std::getline(in, line);
  const auto header = split(line);
  std::vector<EvaluationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    for (std::size_t c = 2; c < cells.size(); ++c) {
      if (!methods.empty() && std::find(methods.begin(), methods.end(), header[c]) == methods.end()) continue;
      EvaluationRecord r;
      r.dataset = cells[0];
      r.frequency = cells[1];
      r.method = header[c];
      if (cells[c] == "N/A") {
        r.status = Status::NA;
        r.reason = "N/A";
      } else if (cells[c] == "Timeout") {
        r.status = Status::Timeout;
      } else {
        r.scores[metric] = std::stod(cells[c]);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace tsbench::testing
