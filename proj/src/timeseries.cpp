#include "tsbench/timeseries.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

// Lowercase alphanumerics with the repository's "dataset" and "without
// missing values" decorations removed, so file stems and table names agree.
std::string normalize_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (std::string_view noise : {"withoutmissingvalues", "dataset"}) {
    for (auto pos = out.find(noise); pos != std::string::npos; pos = out.find(noise))
      out.erase(pos, noise.size());
  }
  return out;
}

struct HorizonEntry {
  std::string_view name;
  int horizon;
};

// Forecast horizons of the Monash benchmark datasets. Names are matched after
// dropping case and non-alphanumerics; common file-name spellings are listed
// as aliases.
constexpr std::array kHorizonTable = {
    HorizonEntry{"M1 yearly", 6},
    HorizonEntry{"M1 quarterly", 6},
    HorizonEntry{"M1 quaterly", 6},
    HorizonEntry{"M1 monthly", 18},
    HorizonEntry{"M3 yearly", 6},
    HorizonEntry{"M3 quarterly", 8},
    HorizonEntry{"M3 quaterly", 8},
    HorizonEntry{"M3 monthly", 18},
    HorizonEntry{"M4 Yearly", 6},
    HorizonEntry{"M4 Quarterly", 8},
    HorizonEntry{"M4 Monthly", 18},
    HorizonEntry{"M4 Weekly", 13},
    HorizonEntry{"M4 Daily", 14},
    HorizonEntry{"M4 Hourly", 48},
    HorizonEntry{"Tourism Yearly", 4},
    HorizonEntry{"Tourism Quarterly", 8},
    HorizonEntry{"Tourism Monthly", 24},
    HorizonEntry{"Bitcoin Dataset without Missing Values", 30},
    HorizonEntry{"Bitcoin", 30},
    HorizonEntry{"Melbourne Pedestrian Counts", 24},
    HorizonEntry{"NN5 Daily Dataset without Missing Values", 56},
    HorizonEntry{"NN5 Daily", 56},
    HorizonEntry{"NN5 Weekly", 8},
    HorizonEntry{"Solar Weekly", 5},
    HorizonEntry{"Electricity Hourly", 168},
    HorizonEntry{"Electricity Weekly", 8},
    HorizonEntry{"Car Parts (without Missing Values)", 12},
    HorizonEntry{"Car Parts", 12},
    HorizonEntry{"FRED-MD", 12},
    HorizonEntry{"Traffic Hourly", 168},
    HorizonEntry{"Traffic Weekly", 8},
    HorizonEntry{"Hospital", 12},
    HorizonEntry{"COVID-19 Deaths", 30},
    HorizonEntry{"Sunspot Daily without Missing Values", 30},
    HorizonEntry{"Sunspot Daily", 30},
    HorizonEntry{"Saugeen River Flow", 30},
    HorizonEntry{"US Births", 30},
    HorizonEntry{"Wind Power Dataset 4 Seconds Observations", 21600},
    HorizonEntry{"Wind Power", 21600},
    HorizonEntry{"Vehicle Trips without Missing Values", 30},
    HorizonEntry{"Vehicle Trips", 30},
    HorizonEntry{"Rideshare without Missing Values", 168},
    HorizonEntry{"Rideshare", 168},
    HorizonEntry{"Temperature Rain without Missing Values", 30},
    HorizonEntry{"Temperature Rain", 30},
    HorizonEntry{"KDD Cup without Missing Values", 168},
    HorizonEntry{"KDD Cup", 168},
    HorizonEntry{"London Smart Meters Dataset without Missing Values", 48},
    HorizonEntry{"London Smart Meters", 48},
    HorizonEntry{"Wind Farms Dataset without Missing Values", 1440},
    HorizonEntry{"Wind Farms", 1440},
    HorizonEntry{"Kaggle Wikipedia Web Traffic Daily without Missing Values", 59},
    HorizonEntry{"Kaggle Wikipedia Web Traffic Weekly", 8},
    // Monash file stems that differ from the table spelling.
    HorizonEntry{"covid_deaths", 30},
    HorizonEntry{"kdd_cup_2018", 168},
    HorizonEntry{"saugeenday", 30},
    HorizonEntry{"sunspot", 30},
    HorizonEntry{"pedestrian_counts", 24},
    HorizonEntry{"wind_farms_minutely", 1440},
    HorizonEntry{"wind_4_seconds", 21600},
    HorizonEntry{"kaggle_web_traffic", 59},
    HorizonEntry{"kaggle_web_traffic_weekly", 8},
};

const HorizonEntry* find_horizon(std::string_view name) {
  const std::string key = normalize_name(name);
  for (const auto& e : kHorizonTable) {
    if (normalize_name(e.name) == key) return &e;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Frequency f) noexcept {
  switch (f) {
    case Frequency::yearly: return "yearly";
    case Frequency::quarterly: return "quarterly";
    case Frequency::monthly: return "monthly";
    case Frequency::weekly: return "weekly";
    case Frequency::daily: return "daily";
    case Frequency::hourly: return "hourly";
    case Frequency::half_hourly: return "half_hourly";
    case Frequency::minutely: return "minutely";
    case Frequency::four_seconds: return "4_seconds";
  }
  return "yearly";
}

Frequency frequency_from_string(std::string_view s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Frequency f : kAllFrequencies) {
    if (lower == to_string(f)) return f;
  }
  throw Error(ErrorCode::UnknownFrequency, std::string(s));
}

Horizon::Horizon(int steps) : steps_(steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidParameter, "horizon must be >= 1");
}

TimeSeries::TimeSeries(std::string name, std::optional<Timestamp> start,
                       std::vector<Value> values, Frequency frequency)
    : name_(std::move(name)),
      start_(start),
      values_(std::move(values)),
      frequency_(frequency) {
  if (values_.empty()) throw Error(ErrorCode::EmptyInput, "series '" + name_ + "' is empty");
  for (const auto& v : values_) {
    if (v && !std::isfinite(*v))
      throw Error(ErrorCode::InvalidParameter, "non-finite value in series '" + name_ + "'");
  }
}

TimeSeries TimeSeries::from_values(std::string name, std::vector<double> values,
                                   Frequency frequency,
                                   std::optional<Timestamp> start) {
  std::vector<Value> v(values.begin(), values.end());
  return TimeSeries(std::move(name), start, std::move(v), frequency);
}

bool TimeSeries::has_missing() const noexcept {
  return std::any_of(values_.begin(), values_.end(), [](const Value& v) { return !v; });
}

std::vector<double> TimeSeries::observed() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& v : values_) {
    if (!v) throw Error(ErrorCode::MissingValues, name_);
    out.push_back(*v);
  }
  return out;
}

void validate(const Dataset& dataset) {
  for (const auto& s : dataset.series) {
    if (s.frequency() != dataset.frequency)
      throw Error(ErrorCode::InvalidParameter, "series frequency differs from dataset");
    if (dataset.equal_length && s.size() != dataset.series.front().size())
      throw Error(ErrorCode::InvalidParameter, "equal_length set but lengths differ");
  }
}

Horizon frequency_fallback_horizon(Frequency frequency) noexcept {
  switch (frequency) {
    case Frequency::yearly: return Horizon(6);
    case Frequency::quarterly: return Horizon(8);
    case Frequency::monthly: return Horizon(18);
    case Frequency::weekly: return Horizon(8);
    case Frequency::daily: return Horizon(30);
    case Frequency::hourly: return Horizon(48);
    // No fallback is defined for sub-hourly data; one day of steps.
    case Frequency::half_hourly: return Horizon(48);
    case Frequency::minutely: return Horizon(1440);
    case Frequency::four_seconds: return Horizon(21600);
  }
  return Horizon(1);
}

bool has_listed_horizon(std::string_view dataset_name) {
  return find_horizon(dataset_name) != nullptr;
}

Horizon default_horizon(std::string_view dataset_name, Frequency frequency, bool strict) {
  if (const auto* e = find_horizon(dataset_name)) return Horizon(e->horizon);
  if (strict) throw Error(ErrorCode::UnknownDataset, std::string(dataset_name));
  return frequency_fallback_horizon(frequency);
}

Timestamp advance(Timestamp start, Frequency frequency, long long steps) {
  using namespace std::chrono;
  auto add_months = [&](long long months) {
    const auto day = floor<days>(start);
    const auto tod = start - day;
    year_month_day ymd{day};
    ymd += std::chrono::months{months};
    if (!ymd.ok()) ymd = ymd.year() / ymd.month() / last;
    return Timestamp(sys_days(ymd) + tod);
  };
  switch (frequency) {
    case Frequency::yearly: return add_months(12 * steps);
    case Frequency::quarterly: return add_months(3 * steps);
    case Frequency::monthly: return add_months(steps);
    case Frequency::weekly: return start + std::chrono::days(7 * steps);
    case Frequency::daily: return start + std::chrono::days(steps);
    case Frequency::hourly: return start + std::chrono::hours(steps);
    case Frequency::half_hourly: return start + std::chrono::minutes(30 * steps);
    case Frequency::minutely: return start + std::chrono::minutes(steps);
    case Frequency::four_seconds: return start + std::chrono::seconds(4 * steps);
  }
  return start;
}

std::pair<TimeSeries, TimeSeries> temporal_train_test_split(const TimeSeries& series,
                                                            Horizon horizon) {
  const auto n = series.size();
  const auto h = static_cast<std::size_t>(horizon.steps());
  if (n <= h)
    throw Error(ErrorCode::SeriesTooShort,
                "length " + std::to_string(n) + " <= horizon " + std::to_string(h));
  auto vals = series.values();
  std::vector<TimeSeries::Value> train(vals.begin(), vals.end() - static_cast<std::ptrdiff_t>(h));
  std::vector<TimeSeries::Value> test(vals.end() - static_cast<std::ptrdiff_t>(h), vals.end());
  std::optional<Timestamp> test_start;
  if (series.start())
    test_start = advance(*series.start(), series.frequency(), static_cast<long long>(n - h));
  return {TimeSeries(series.name(), series.start(), std::move(train), series.frequency()),
          TimeSeries(series.name(), test_start, std::move(test), series.frequency())};
}

std::vector<double> locf_impute(const TimeSeries& series) {
  auto vals = series.values();
  auto first = std::find_if(vals.begin(), vals.end(), [](const auto& v) { return v.has_value(); });
  if (first == vals.end()) throw Error(ErrorCode::MissingValues, "no observed values in " + series.name());
  std::vector<double> out;
  out.reserve(vals.size());
  double carry = **first;
  for (const auto& v : vals) {
    if (v) carry = *v;
    out.push_back(carry);
  }
  return out;
}

}  // namespace tsbench
