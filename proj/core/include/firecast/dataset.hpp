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

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firecast {

struct YearMonth {
  int year = 1970;
  int month = 1;  // 1..12

  // Parses "YYYY-MM"; nullopt on anything else (including month 13).
  static std::optional<YearMonth> parse(std::string_view text);
  YearMonth plus_months(long months) const;
  // Signed number of months from `this` to `other`.
  long months_until(const YearMonth& other) const;
  std::string to_string() const;

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

// Contiguous monthly totals starting at start_month.
struct MonthlySeries {
  YearMonth start_month;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  YearMonth month_at(std::size_t index) const { return start_month.plus_months(static_cast<long>(index)); }
  YearMonth end_month() const;
};

// Reads "month,count" CSV with a header line. Throws IoError if unreadable,
// ParseError (with line number) for malformed rows, negative or non-numeric
// counts, and DataError citing the month for gaps, duplicates or disorder.
MonthlySeries load_csv(const std::filesystem::path& path);
MonthlySeries parse_series_csv(std::string_view text);

struct DescriptiveStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double stddev = 0.0;    // population
  double variance = 0.0;  // population
};

// Population statistics. Throws DataError for fewer than 2 values.
DescriptiveStats describe(std::span<const double> values);

// Min-max scaling fitted on the training slice.
struct NormalizationParams {
  double min = 0.0;
  double max = 1.0;

  double apply(double x) const noexcept { return (x - min) / (max - min); }
  double invert(double y) const noexcept { return y * (max - min) + min; }
  std::vector<double> apply(std::span<const double> xs) const;
  std::vector<double> invert(std::span<const double> ys) const;

  friend bool operator==(const NormalizationParams&, const NormalizationParams&) = default;
};

// Throws DataError when the slice is empty or max == min.
NormalizationParams fit_normalizer(std::span<const double> train_slice);

enum class Split { kTrain, kValidation, kTest };
std::string_view split_name(Split s) noexcept;
std::optional<Split> parse_split(std::string_view name) noexcept;

// Chronological partition: test is the final 12 months, validation the 24
// before it, train everything earlier. Index ranges are half-open.
struct SplitBounds {
  static constexpr std::size_t kTestMonths = 12;
  static constexpr std::size_t kValidationMonths = 24;

  std::size_t train_end = 0;
  std::size_t validation_end = 0;
  std::size_t length = 0;

  std::size_t begin(Split s) const noexcept;
  std::size_t end(Split s) const noexcept;
  std::size_t count(Split s) const noexcept { return end(s) - begin(s); }
};

// Throws DataError if length < 37.
SplitBounds split(std::size_t length);

// Inputs are values[target - window, target).
struct WindowSample {
  std::size_t input_begin = 0;
  std::size_t target = 0;
};

struct WindowedDataset {
  std::vector<double> values;
  std::size_t window = 0;
  std::vector<WindowSample> samples;

  std::span<const double> inputs(const WindowSample& s) const {
    return std::span<const double>(values).subspan(s.input_begin, window);
  }
  // Samples whose target lies in [begin, end). Inputs may reach back before
  // `begin`, which is how evaluation windows borrow context from the
  // preceding split.
  std::vector<WindowSample> targets_in(std::size_t begin, std::size_t end) const;
};

// Stride-1 windows over all of `values`. Throws DataError if
// values.size() <= window or window == 0.
WindowedDataset make_windows(std::vector<double> values, std::size_t window);

}  // namespace firecast
