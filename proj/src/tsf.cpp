#include "tsbench/tsf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <string_view>

#include <fmt/format.h>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_bool(std::string_view s, std::size_t line) {
  const auto v = lower(trim(s));
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorCode::UnparsableValue, fmt::format("line {}: expected true/false, got '{}'", line, s));
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

AttributeType parse_attribute_type(std::string_view s, std::size_t line) {
  const auto t = lower(s);
  if (t == "string") return AttributeType::string;
  if (t == "date") return AttributeType::date;
  if (t == "numeric") return AttributeType::numeric;
  throw Error(ErrorCode::UnparsableValue, fmt::format("line {}: unknown attribute type '{}'", line, s));
}

// Length of a timestamp at the front of `s` that is immediately followed by
// ':' (or 0 when none matches). Tries the long form before the date-only form.
std::size_t leading_timestamp_length(std::string_view s) {
  for (std::size_t len : {std::size_t{19}, std::size_t{10}}) {
    if (s.size() > len && s[len] == ':' && parse_tsf_timestamp(s.substr(0, len))) return len;
  }
  return 0;
}

std::vector<std::string_view> split_attributes(std::string_view prefix,
                                               const std::vector<TsfAttribute>& attrs,
                                               std::size_t line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (pos > prefix.size())
      throw Error(ErrorCode::AttributeCountMismatch, fmt::format("line {}", line));
    std::string_view rest = prefix.substr(pos);
    if (i + 1 == attrs.size()) {
      if (rest.find(':') != std::string_view::npos &&
          !(attrs[i].type == AttributeType::date && parse_tsf_timestamp(rest)))
        throw Error(ErrorCode::AttributeCountMismatch,
                    fmt::format("line {}: more attribute values than the {} declared", line, attrs.size()));
      fields.push_back(rest);
      break;
    }
    std::size_t len = attrs[i].type == AttributeType::date ? leading_timestamp_length(rest) : 0;
    if (len == 0) {
      len = rest.find(':');
      if (len == std::string_view::npos)
        throw Error(ErrorCode::AttributeCountMismatch,
                    fmt::format("line {}: {} attributes declared, {} found", line, attrs.size(), i + 1));
    }
    fields.push_back(rest.substr(0, len));
    pos += len + 1;
  }
  return fields;
}

std::vector<TimeSeries::Value> parse_values(std::string_view text, std::size_t line) {
  std::vector<TimeSeries::Value> values;
  values.reserve(static_cast<std::size_t>(std::count(text.begin(), text.end(), ',')) + 1);
  std::size_t column = 1;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    if (token == "?") {
      values.emplace_back(std::nullopt);
    } else if (auto v = parse_number(token)) {
      values.emplace_back(*v);
    } else {
      throw Error(ErrorCode::UnparsableValue,
                  fmt::format("line {}, column {}: '{}'", line, column, token));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    ++column;
  }
  return values;
}

}  // namespace

std::optional<Timestamp> parse_tsf_timestamp(std::string_view text) {
  text = trim(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  const std::string buf(text);
  char sep1 = 0, sep2 = 0;
  int consumed = 0;
  if (buf.size() == 19 &&
      std::sscanf(buf.c_str(), "%4d-%2d-%2d %2d%c%2d%c%2d%n", &y, &mo, &d, &h, &sep1, &mi, &sep2, &s,
                  &consumed) == 8 &&
      consumed == 19 && sep1 == sep2 && (sep1 == '-' || sep1 == ':')) {
  } else if (buf.size() == 10 &&
             std::sscanf(buf.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) == 3 && consumed == 10) {
    h = mi = s = 0;
  } else {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return Timestamp(sys_days(ymd) + hours(h) + minutes(mi) + seconds(s));
}

std::string format_tsf_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss tod{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d} {:02d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     tod.hours().count(), tod.minutes().count(), tod.seconds().count());
}

TsfFile read_tsf(std::istream& in, std::optional<std::string> dataset_name) {
  TsfFile file;
  TsfHeader& header = file.header;
  std::optional<Frequency> frequency;
  bool in_data = false;
  std::vector<TimeSeries::Value> pending;
  std::string raw;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (!in_data) {
      if (line.front() == '#') continue;
      if (line.front() != '@')
        throw Error(ErrorCode::MissingDataSection, fmt::format("line {}: data before @data", line_no));
      const auto tokens = split_ws(line);
      const auto tag = lower(tokens.front());
      if (tag == "@data") {
        in_data = true;
        if (header.frequency.empty()) throw Error(ErrorCode::UnknownFrequency, "no @frequency declared");
        frequency = frequency_from_string(header.frequency);
      } else if (tag == "@relation" && tokens.size() >= 2) {
        header.relation = std::string(trim(line.substr(tokens[0].size())));
      } else if (tag == "@attribute") {
        if (tokens.size() != 3)
          throw Error(ErrorCode::UnparsableValue, fmt::format("line {}: malformed @attribute", line_no));
        header.attributes.push_back({std::string(tokens[1]), parse_attribute_type(tokens[2], line_no)});
      } else if (tag == "@frequency" && tokens.size() >= 2) {
        header.frequency = std::string(tokens[1]);
      } else if (tag == "@horizon" && tokens.size() >= 2) {
        const auto h = parse_number(tokens[1]);
        if (!h || *h < 1 || *h != std::floor(*h))
          throw Error(ErrorCode::UnparsableValue, fmt::format("line {}: bad @horizon", line_no));
        header.horizon = static_cast<int>(*h);
      } else if (tag == "@missing" && tokens.size() >= 2) {
        header.missing = parse_bool(tokens[1], line_no);
      } else if (tag == "@equallength" && tokens.size() >= 2) {
        header.equal_length = parse_bool(tokens[1], line_no);
      }
      continue;
    }

    std::string_view values_text = line;
    std::vector<std::string_view> fields;
    if (!header.attributes.empty()) {
      const auto last_colon = line.rfind(':');
      if (last_colon == std::string_view::npos)
        throw Error(ErrorCode::AttributeCountMismatch, fmt::format("line {}: no attribute values", line_no));
      fields = split_attributes(line.substr(0, last_colon), header.attributes, line_no);
      values_text = line.substr(last_colon + 1);
    }

    std::string name;
    std::optional<Timestamp> start;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto& attr = header.attributes[i];
      const auto value = trim(fields[i]);
      if (attr.type == AttributeType::date) {
        auto ts = parse_tsf_timestamp(value);
        if (!ts)
          throw Error(ErrorCode::UnparsableValue,
                      fmt::format("line {}, attribute {}: bad date '{}'", line_no, i + 1, value));
        if (!start) start = ts;
      } else if (attr.type == AttributeType::numeric && !parse_number(value)) {
        throw Error(ErrorCode::UnparsableValue,
                    fmt::format("line {}, attribute {}: '{}'", line_no, i + 1, value));
      }
      if (attr.type == AttributeType::string && (name.empty() || lower(attr.name) == "series_name"))
        name = std::string(value);
    }
    if (name.empty()) name = fmt::format("T{}", file.dataset.series.size() + 1);

    auto values = parse_values(values_text, line_no);
    std::vector<std::string> raw_fields(fields.begin(), fields.end());
    file.attribute_values.push_back(std::move(raw_fields));
    file.dataset.series.emplace_back(std::move(name), start, std::move(values), *frequency);
  }

  if (!in_data) throw Error(ErrorCode::MissingDataSection);

  Dataset& ds = file.dataset;
  ds.name = dataset_name.value_or(header.relation);
  ds.frequency = *frequency;
  ds.equal_length = header.equal_length;
  ds.contains_missing = header.missing ||
                        std::any_of(ds.series.begin(), ds.series.end(),
                                    [](const TimeSeries& s) { return s.has_missing(); });
  if (header.horizon) {
    ds.horizon = Horizon(*header.horizon);
    ds.horizon_source = HorizonSource::file;
  } else if (has_listed_horizon(ds.name)) {
    ds.horizon = default_horizon(ds.name, ds.frequency);
    ds.horizon_source = HorizonSource::table;
  } else {
    ds.horizon = frequency_fallback_horizon(ds.frequency);
    ds.horizon_source = HorizonSource::frequency_fallback;
  }
  validate(ds);
  return file;
}

Dataset parse_tsf(std::istream& in, std::optional<std::string> dataset_name) {
  return read_tsf(in, std::move(dataset_name)).dataset;
}

Dataset load_tsf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DatasetLoadError, "cannot open " + path.string());
  return parse_tsf(in, path.stem().string());
}

}  // namespace tsbench
