#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "fixtures.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TSBENCH_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "tsbench_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("run") {
  unsetenv("TSBENCH_DATA_DIR");
  const fs::path dir = scratch();
  const fs::path out = dir / "run.json";
  CHECK(run_cli("run --config " + q(tsbench::testing::fixture("run.ini")) + " --out " + q(out) +
                " --methods Naive --datasets tiny_yearly") == 0);
  const auto doc = json::parse(slurp(out));
  REQUIRE(doc["records"].size() == 1);
  CHECK(doc["records"][0]["dataset"] == "tiny_yearly");
  CHECK(doc["records"][0]["method"] == "Naive");
  CHECK(doc["records"][0]["status"] == "Ok");

  const fs::path all = dir / "all.json";
  CHECK(run_cli("run --config " + q(tsbench::testing::fixture("run.ini")) + " --out " + q(all) +
                " --parallelism 2") == 0);
  CHECK(json::parse(slurp(all))["records"].size() == 6);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch();
  CHECK(run_cli("run --config " + q(dir / "nope.ini") + " --out " + q(dir / "x.json")) == 1);
  CHECK(run_cli("run --config " + q(tsbench::testing::fixture("run.ini")) + " --out " + q(dir / "x.json") +
                " --datasets " + q(dir / "missing.tsf")) == 2);
  CHECK(run_cli("run --config " + q(tsbench::testing::fixture("run.ini")) + " --out " + q(dir / "x.json") +
                " --methods Prophet") == 1);
  CHECK(run_cli("report --in " + q(dir / "no_manifest.json") + " --out-dir " + q(dir / "r")) == 1);
  CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("tune persists trials deterministically") {
  const fs::path dir = scratch();
  const std::string base = "tune --config " + q(tsbench::testing::fixture("run.ini")) + " --datasets tiny_yearly ";
  CHECK(run_cli(base + "--out " + q(dir / "t1.json") + " --n-iter 1 --seed 5") == 0);
  const auto one = json::parse(slurp(dir / "t1.json"));
  REQUIRE(one["tuning"].size() == 1);
  for (const auto& s : one["tuning"][0]["series"]) CHECK(s["trials"].size() == 1);

  CHECK(run_cli(base + "--out " + q(dir / "a.json") + " --seed 11") == 0);
  CHECK(run_cli(base + "--out " + q(dir / "b.json") + " --seed 11") == 0);
  const auto a = json::parse(slurp(dir / "a.json"));
  const auto b = json::parse(slurp(dir / "b.json"));
  CHECK(a["tuning"].dump() == b["tuning"].dump());
  REQUIRE(a["tuning"].size() == 1);
  CHECK(a["tuning"][0]["method"] == "Naive");
  CHECK(a["tuning"][0]["series"][0]["trials"].size() == 4);  // n_iter from the config
  bool tuned = false;
  for (const auto& r : a["records"]) tuned |= r["method"] == "Naive-tuned";
  CHECK(tuned);
}

TEST_CASE("report") {
  const fs::path dir = scratch();
  const fs::path manifest = dir / "for_report.json";
  REQUIRE(run_cli("run --config " + q(tsbench::testing::fixture("run.ini")) + " --out " + q(manifest)) == 0);
  const fs::path out = dir / "report";
  fs::remove_all(out);
  CHECK(run_cli("report --in " + q(manifest) + " --metric smape --out-dir " + q(out) + " --domains " +
                q(TSBENCH_DOMAINS_FILE)) == 0);
  for (const char* name : {"wins_losses.csv", "ranks.json", "cd_diagram.svg", "rescaled.csv",
                           "summary_frequency.csv", "summary_domain.csv"})
    CHECK(fs::exists(out / name));
  CHECK(slurp(out / "wins_losses.csv").rfind("method,wins,losses,ties,failures\n", 0) == 0);
  CHECK(run_cli("report --in " + q(manifest) + " --metric rmse --out-dir " + q(out)) == 1);
}
