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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firecast/dataset.hpp"
#include "firecast/forecast.hpp"
#include "firecast/training.hpp"

namespace firecast {

// Shortest decimal text that round-trips the double exactly.
std::string format_real(double x);

// epoch,loss,train_mae,train_rmse,val_mae,val_rmse (val fields empty when
// absent).
std::string history_csv(std::span<const EpochRecord> history);
std::vector<EpochRecord> parse_history_csv(std::string_view text);

// month,predicted_count
std::string forecast_csv(const ForecastResult& result);
struct MonthlyValues {
  std::vector<YearMonth> months;
  std::vector<double> values;
};
MonthlyValues parse_forecast_csv(std::string_view text);

// month,actual,predicted
std::string predictions_csv(const Evaluation& eval);

std::string read_text_file(const std::filesystem::path& path);
// Temp file + rename in the destination directory. Throws IoError.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace firecast
