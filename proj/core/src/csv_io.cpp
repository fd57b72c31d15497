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

#include "firecast/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

std::string format_real(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw Error("format_real: buffer too small");
  return std::string(buf.data(), ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Calls fn(line_no, fields) for every non-empty line after the header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, Fn&& fn) {
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != header) throw ParseError(fmt::format("line {}: expected header '{}'", line_no, header));
      header_seen = true;
      continue;
    }
    fn(line_no, split_fields(line));
  }
  if (!header_seen) throw ParseError(fmt::format("missing header '{}'", header));
}

double parse_real(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("line {}: '{}' is not a number", line_no, s));
  }
  return v;
}

std::optional<double> parse_optional_real(std::string_view s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return parse_real(s, line_no);
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

constexpr std::string_view kHistoryHeader = "epoch,loss,train_mae,train_rmse,val_mae,val_rmse";
constexpr std::string_view kForecastHeader = "month,predicted_count";

}  // namespace

std::string history_csv(std::span<const EpochRecord> history) {
  std::string out(kHistoryHeader);
  out += '\n';
  for (const EpochRecord& r : history) {
    out += fmt::format("{},{},{},{},{},{}\n", r.epoch, format_real(r.loss), format_real(r.train_mae),
                       format_real(r.train_rmse), optional_real(r.val_mae), optional_real(r.val_rmse));
  }
  return out;
}

std::vector<EpochRecord> parse_history_csv(std::string_view text) {
  std::vector<EpochRecord> out;
  for_each_row(text, kHistoryHeader, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 6) throw ParseError(fmt::format("line {}: expected 6 fields, got {}", line_no, f.size()));
    EpochRecord r;
    const double epoch = parse_real(f[0], line_no);
    if (!(epoch >= 1.0) || epoch != std::floor(epoch)) {
      throw ParseError(fmt::format("line {}: bad epoch '{}'", line_no, f[0]));
    }
    r.epoch = static_cast<std::size_t>(epoch);
    r.loss = parse_real(f[1], line_no);
    r.train_mae = parse_real(f[2], line_no);
    r.train_rmse = parse_real(f[3], line_no);
    r.val_mae = parse_optional_real(f[4], line_no);
    r.val_rmse = parse_optional_real(f[5], line_no);
    out.push_back(r);
  });
  return out;
}

std::string forecast_csv(const ForecastResult& result) {
  std::string out(kForecastHeader);
  out += '\n';
  for (std::size_t k = 0; k < result.values.size(); ++k) {
    out += fmt::format("{},{}\n", result.month_at(k).to_string(), format_real(result.values[k]));
  }
  return out;
}

MonthlyValues parse_forecast_csv(std::string_view text) {
  MonthlyValues out;
  for_each_row(text, kForecastHeader, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw ParseError(fmt::format("line {}: expected 2 fields, got {}", line_no, f.size()));
    const auto month = YearMonth::parse(f[0]);
    if (!month) throw ParseError(fmt::format("line {}: invalid month '{}'", line_no, f[0]));
    out.months.push_back(*month);
    out.values.push_back(parse_real(f[1], line_no));
  });
  return out;
}

std::string predictions_csv(const Evaluation& eval) {
  std::string out = "month,actual,predicted\n";
  for (std::size_t k = 0; k < eval.months.size(); ++k) {
    out += fmt::format("{},{},{}\n", eval.months[k].to_string(), format_real(eval.actual[k]),
                       format_real(eval.predicted[k]));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError(fmt::format("cannot rename '{}' to '{}': {}", tmp.string(), path.string(), ec.message()));
  }
}

}  // namespace firecast
