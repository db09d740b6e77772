#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "tsf_writer.hpp"
#include "tsbench/error.hpp"
#include "tsbench/tsf.hpp"

using namespace tsbench;

namespace {

ErrorCode parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_tsf(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidParameter;
}

const char* kHeader =
    "# comment line\n"
    "@relation demo\n"
    "@attribute series_name string\n"
    "@attribute start_timestamp date\n"
    "@frequency yearly\n"
    "@horizon 6\n"
    "@missing true\n"
    "@equallength false\n";

}  // namespace

TEST_CASE("minimal file") {
  std::istringstream in(std::string(kHeader) + "@data\nT1:1979-01-01 00-00-00:1.0,2.0,3.0\n");
  const Dataset d = parse_tsf(in);
  REQUIRE(d.series.size() == 1);
  CHECK(d.series[0].observed() == std::vector<double>{1, 2, 3});
  CHECK(d.series[0].name() == "T1");
  CHECK(d.frequency == Frequency::yearly);
  CHECK(d.horizon.steps() == 6);
  CHECK(d.horizon_source == HorizonSource::file);
  CHECK(d.name == "demo");
  REQUIRE(d.series[0].start());
  CHECK(format_tsf_timestamp(*d.series[0].start()) == "1979-01-01 00-00-00");
}

TEST_CASE("missing marker, blank lines, scientific notation, colon timestamps") {
  std::istringstream in(std::string(kHeader) +
                        "@data\n\nT1:1979-01-01 00:00:00:1e2,?, -2.5 ,3\n   \nT2:1980-06-01 00-00-00:4\n");
  const Dataset d = parse_tsf(in);
  REQUIRE(d.series.size() == 2);
  const auto v = d.series[0].values();
  REQUIRE(v.size() == 4);
  CHECK(*v[0] == 100.0);
  CHECK_FALSE(v[1].has_value());
  CHECK(*v[2] == -2.5);
  CHECK(d.contains_missing);
}

TEST_CASE("header tags are case-insensitive and horizon falls back") {
  std::istringstream in(
      "@RELATION m1_yearly_dataset\n@ATTRIBUTE series_name STRING\n@FREQUENCY Yearly\n@DATA\nA:1,2,3\n");
  const Dataset d = parse_tsf(in);
  CHECK(d.frequency == Frequency::yearly);
  CHECK(d.horizon.steps() == 6);
  CHECK(d.horizon_source != HorizonSource::file);
}

TEST_CASE("parse errors") {
  CHECK(parse_error(std::string(kHeader)) == ErrorCode::MissingDataSection);
  CHECK(parse_error(std::string(kHeader) + "@data\nT1:1,2,3\n") == ErrorCode::AttributeCountMismatch);
  CHECK(parse_error(std::string(kHeader) + "@data\nT1:1979-01-01 00-00-00:1,x,3\n") == ErrorCode::UnparsableValue);
  CHECK(parse_error("@relation r\n@attribute n string\n@frequency fortnightly\n@data\nA:1\n") ==
        ErrorCode::UnknownFrequency);
}

TEST_CASE("load_tsf names the dataset after the file and reports unreadable paths") {
  const Dataset d = load_tsf(testing::fixture("tiny_yearly.tsf"));
  CHECK(d.name == "tiny_yearly");
  CHECK(d.series.size() == 3);
  CHECK(d.horizon.steps() == 3);
  try {
    load_tsf("/nonexistent/file.tsf");
    FAIL("expected DatasetLoadError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DatasetLoadError);
  }
}

TEST_CASE("write then re-parse is elementwise identical") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist(0.0, 1e3);
  std::ostringstream text;
  text << kHeader << "@data\n";
  for (int s = 0; s < 5; ++s) {
    text << "S" << s << ":19" << (70 + s) << "-01-01 00-00-00:";
    for (int i = 0; i < 40; ++i) {
      if (i) text << ",";
      if (i % 11 == 7) {
        text << "?";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", dist(rng));
        text << buf;
      }
    }
    text << "\n";
  }
  std::istringstream in1(text.str());
  const TsfFile first = read_tsf(in1);
  std::ostringstream written;
  testing::write_tsf(written, first);
  std::istringstream in2(written.str());
  const TsfFile second = read_tsf(in2);

  REQUIRE(first.dataset.series.size() == second.dataset.series.size());
  for (std::size_t s = 0; s < first.dataset.series.size(); ++s) {
    const auto a = first.dataset.series[s].values();
    const auto b = second.dataset.series[s].values();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(first.dataset.series[s].name() == second.dataset.series[s].name());
    CHECK(first.dataset.series[s].start() == second.dataset.series[s].start());
  }
  CHECK(first.dataset.horizon == second.dataset.horizon);
}

TEST_CASE("long series parse in linear time") {
  std::string text = "@relation big\n@attribute series_name string\n@frequency 4_seconds\n@horizon 10\n@data\nW:";
  const int n = 500000;
  text.reserve(static_cast<std::size_t>(n) * 6);
  for (int i = 0; i < n; ++i) {
    if (i) text += ',';
    text += std::to_string(i % 997);
  }
  text += "\n";
  std::istringstream in(text);
  const Dataset d = parse_tsf(in);
  CHECK(d.series[0].size() == static_cast<std::size_t>(n));
  CHECK(d.frequency == Frequency::four_seconds);
}
