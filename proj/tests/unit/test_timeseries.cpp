#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tsbench/error.hpp"
#include "tsbench/timeseries.hpp"

using namespace tsbench;

namespace {

TimeSeries series_of(std::vector<double> v) { return TimeSeries::from_values("s", std::move(v), Frequency::yearly); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("seasonal period mapping") {
  CHECK(seasonal_period(Frequency::quarterly) == 4);
  CHECK(seasonal_period(Frequency::yearly) == 1);
  CHECK(seasonal_period(Frequency::half_hourly) == 48);
  CHECK(seasonal_period(Frequency::monthly) == 12);
  CHECK(seasonal_period(Frequency::weekly) == 52);
  CHECK(seasonal_period(Frequency::daily) == 7);
  CHECK(seasonal_period(Frequency::hourly) == 24);
  CHECK(seasonal_period(Frequency::minutely) == 1440);
  CHECK(seasonal_period(Frequency::four_seconds) == 21600);
  for (Frequency f : kAllFrequencies) CHECK(seasonal_period(f) >= 1);
}

TEST_CASE("frequency names round-trip") {
  for (Frequency f : kAllFrequencies) CHECK(frequency_from_string(to_string(f)) == f);
  CHECK(frequency_from_string("Yearly") == Frequency::yearly);
  CHECK(frequency_from_string("4_seconds") == Frequency::four_seconds);
  CHECK(code_of([] { frequency_from_string("fortnightly"); }) == ErrorCode::UnknownFrequency);
}

TEST_CASE("default horizons") {
  CHECK(default_horizon("M1 yearly", Frequency::yearly).steps() == 6);
  CHECK(default_horizon("Tourism Monthly", Frequency::monthly).steps() == 24);
  CHECK(default_horizon("unknown", Frequency::quarterly).steps() == 8);
  CHECK(code_of([] { default_horizon("unknown", Frequency::quarterly, true); }) == ErrorCode::UnknownDataset);

  CHECK(frequency_fallback_horizon(Frequency::yearly).steps() == 6);
  CHECK(frequency_fallback_horizon(Frequency::quarterly).steps() == 8);
  CHECK(frequency_fallback_horizon(Frequency::monthly).steps() == 18);
  CHECK(frequency_fallback_horizon(Frequency::weekly).steps() == 8);
  CHECK(frequency_fallback_horizon(Frequency::daily).steps() == 30);
  CHECK(frequency_fallback_horizon(Frequency::hourly).steps() == 48);
}

TEST_CASE("every listed dataset horizon matches the transcribed table") {
  std::ifstream in(testing::fixture("horizons.csv"));
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    const auto close = line.find('"', 1);
    const std::string name = line.substr(1, close - 1);
    const std::string rest = line.substr(close + 2);
    const int h = std::stoi(rest.substr(rest.find(',') + 1));
    CAPTURE(name);
    CHECK(has_listed_horizon(name));
    // The frequency argument must not matter for listed names.
    CHECK(default_horizon(name, Frequency::yearly, true).steps() == h);
    ++rows;
  }
  CHECK(rows == 40);
}

TEST_CASE("temporal split") {
  auto [train, test] = temporal_train_test_split(series_of({1, 2, 3, 4, 5}), Horizon(2));
  CHECK(train.observed() == std::vector<double>{1, 2, 3});
  CHECK(test.observed() == std::vector<double>{4, 5});

  auto [train2, test2] = temporal_train_test_split(series_of({10, 20, 30}), Horizon(1));
  CHECK(train2.observed() == std::vector<double>{10, 20});
  CHECK(test2.observed() == std::vector<double>{30});

  CHECK(code_of([] { temporal_train_test_split(series_of({1}), Horizon(1)); }) == ErrorCode::SeriesTooShort);
  CHECK(code_of([] { Horizon(0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("split reconstructs the series for every valid horizon") {
  std::vector<double> v;
  for (int i = 0; i < 17; ++i) v.push_back(i * 1.5 - 3.0);
  const auto s = series_of(v);
  for (int h = 1; h < 17; ++h) {
    auto [train, test] = temporal_train_test_split(s, Horizon(h));
    CHECK(train.size() + test.size() == s.size());
    auto joined = train.observed();
    const auto tail = test.observed();
    joined.insert(joined.end(), tail.begin(), tail.end());
    CHECK(joined == v);
  }
}

TEST_CASE("test window starts one horizon before the end") {
  const auto start = std::chrono::sys_days{std::chrono::year{2000} / 1 / 1};
  const auto s = TimeSeries::from_values("s", {1, 2, 3, 4}, Frequency::monthly, Timestamp(start));
  auto [train, test] = temporal_train_test_split(s, Horizon(1));
  REQUIRE(test.start());
  CHECK(*test.start() == advance(Timestamp(start), Frequency::monthly, 3));
}

TEST_CASE("locf imputation") {
  TimeSeries s("s", std::nullopt, {std::nullopt, 2.0, std::nullopt, std::nullopt, 5.0}, Frequency::daily);
  CHECK(s.has_missing());
  CHECK(locf_impute(s) == std::vector<double>{2, 2, 2, 2, 5});
  CHECK(code_of([&] { s.observed(); }) == ErrorCode::MissingValues);
  TimeSeries empty("e", std::nullopt, {std::nullopt}, Frequency::daily);
  CHECK(code_of([&] { locf_impute(empty); }) == ErrorCode::MissingValues);
}

TEST_CASE("dataset validation") {
  Dataset d;
  d.frequency = Frequency::yearly;
  d.series.push_back(series_of({1, 2, 3}));
  d.series.push_back(series_of({1, 2}));
  CHECK_NOTHROW(validate(d));
  d.equal_length = true;
  CHECK(code_of([&] { validate(d); }) == ErrorCode::InvalidParameter);
  d.equal_length = false;
  d.series.push_back(TimeSeries::from_values("m", {1.0}, Frequency::monthly));
  CHECK(code_of([&] { validate(d); }) == ErrorCode::InvalidParameter);
}
