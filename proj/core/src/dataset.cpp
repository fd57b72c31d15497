/* Copyright 2026 The Firecast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "firecast/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  int y = 0, m = 0;
  auto [py, ey] = std::from_chars(text.data(), text.data() + 4, y);
  auto [pm, em] = std::from_chars(text.data() + 5, text.data() + 7, m);
  if (ey != std::errc{} || em != std::errc{} || py != text.data() + 4 || pm != text.data() + 7) {
    return std::nullopt;
  }
  if (m < 1 || m > 12) return std::nullopt;
  return YearMonth{y, m};
}

YearMonth YearMonth::plus_months(long months) const {
  const long idx = static_cast<long>(year) * 12 + (month - 1) + months;
  const long y = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
  return YearMonth{static_cast<int>(y), static_cast<int>(idx - y * 12) + 1};
}

long YearMonth::months_until(const YearMonth& other) const {
  return (static_cast<long>(other.year) - year) * 12 + (other.month - month);
}

std::string YearMonth::to_string() const { return fmt::format("{:04d}-{:02d}", year, month); }

YearMonth MonthlySeries::end_month() const {
  if (values.empty()) throw DataError("empty series has no end month");
  return month_at(values.size() - 1);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

MonthlySeries parse_series_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  MonthlySeries series;
  std::optional<YearMonth> prev;
  bool header_seen = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != "month,count") {
        throw ParseError(fmt::format("line {}: expected header 'month,count', got '{}'", line_no, line));
      }
      header_seen = true;
      continue;
    }

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(fmt::format("line {}: expected 'YYYY-MM,count', got '{}'", line_no, line));
    }
    const std::string_view month_text = trim(line.substr(0, comma));
    const std::string_view count_text = trim(line.substr(comma + 1));

    const auto month = YearMonth::parse(month_text);
    if (!month) throw ParseError(fmt::format("line {}: invalid month '{}'", line_no, month_text));

    double count = 0.0;
    const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (count_text.empty() || ec != std::errc{} || ptr != count_text.data() + count_text.size() ||
        !std::isfinite(count)) {
      throw ParseError(fmt::format("line {}: count '{}' is not a number", line_no, count_text));
    }
    if (count < 0.0) throw ParseError(fmt::format("line {}: negative count {}", line_no, count_text));

    if (prev) {
      const long step = prev->months_until(*month);
      if (step == 0) throw DataError(fmt::format("duplicate month {} (line {})", month->to_string(), line_no));
      if (step < 0) {
        throw DataError(fmt::format("month {} out of order after {} (line {})", month->to_string(),
                                    prev->to_string(), line_no));
      }
      if (step > 1) {
        throw DataError(fmt::format("gap: month {} missing before {} (line {})", prev->plus_months(1).to_string(),
                                    month->to_string(), line_no));
      }
    } else {
      series.start_month = *month;
    }
    prev = month;
    series.values.push_back(count);
  }

  if (!header_seen) throw ParseError("missing header 'month,count'");
  if (series.values.empty()) throw DataError("series has no rows");
  return series;
}

MonthlySeries load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_series_csv(ss.str());
}

DescriptiveStats describe(std::span<const double> values) {
  if (values.size() < 2) throw DataError(fmt::format("describe needs at least 2 values, got {}", values.size()));
  DescriptiveStats st;
  st.min = st.max = values[0];
  // Welford's running update.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double x = values[k];
    st.min = std::min(st.min, x);
    st.max = std::max(st.max, x);
    const double delta = x - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (x - mean);
  }
  st.mean = mean;
  st.variance = m2 / static_cast<double>(values.size());
  st.stddev = std::sqrt(st.variance);
  return st;
}

std::vector<double> NormalizationParams::apply(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(apply(x));
  return out;
}

std::vector<double> NormalizationParams::invert(std::span<const double> ys) const {
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(invert(y));
  return out;
}

NormalizationParams fit_normalizer(std::span<const double> train_slice) {
  if (train_slice.empty()) throw DataError("cannot fit normalizer on an empty slice");
  NormalizationParams p{train_slice[0], train_slice[0]};
  for (double x : train_slice) {
    p.min = std::min(p.min, x);
    p.max = std::max(p.max, x);
  }
  if (!(p.max > p.min)) {
    throw DataError(fmt::format("degenerate series: training values are all {}", p.min));
  }
  return p;
}

std::string_view split_name(Split s) noexcept {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "unknown";
}

std::optional<Split> parse_split(std::string_view name) noexcept {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "val") return Split::kValidation;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::size_t SplitBounds::begin(Split s) const noexcept {
  switch (s) {
    case Split::kTrain: return 0;
    case Split::kValidation: return train_end;
    case Split::kTest: return validation_end;
  }
  return 0;
}

std::size_t SplitBounds::end(Split s) const noexcept {
  switch (s) {
    case Split::kTrain: return train_end;
    case Split::kValidation: return validation_end;
    case Split::kTest: return length;
  }
  return 0;
}

SplitBounds split(std::size_t length) {
  constexpr std::size_t held_out = SplitBounds::kTestMonths + SplitBounds::kValidationMonths;
  if (length < held_out + 1) {
    throw DataError(fmt::format("series of {} months is too short to split (need at least {})", length,
                                held_out + 1));
  }
  SplitBounds b;
  b.length = length;
  b.validation_end = length - SplitBounds::kTestMonths;
  b.train_end = b.validation_end - SplitBounds::kValidationMonths;
  return b;
}

std::vector<WindowSample> WindowedDataset::targets_in(std::size_t begin, std::size_t end) const {
  std::vector<WindowSample> out;
  for (const WindowSample& s : samples)
    if (s.target >= begin && s.target < end) out.push_back(s);
  return out;
}

WindowedDataset make_windows(std::vector<double> values, std::size_t window) {
  if (window == 0) throw DataError("window must be >= 1");
  if (values.size() <= window) {
    throw DataError(fmt::format("series of {} values is too short for window {}", values.size(), window));
  }
  WindowedDataset ds;
  ds.window = window;
  ds.values = std::move(values);
  ds.samples.reserve(ds.values.size() - window);
  for (std::size_t i = 0; i + window < ds.values.size(); ++i) ds.samples.push_back({i, i + window});
  return ds;
}

}  // namespace firecast
