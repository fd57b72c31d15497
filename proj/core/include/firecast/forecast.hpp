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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "firecast/dataset.hpp"
#include "firecast/training.hpp"

namespace firecast {

struct ForecastResult {
  YearMonth start_month;
  std::size_t horizon = 0;
  std::vector<double> values;  // original units
  bool clamped = false;

  YearMonth month_at(std::size_t k) const { return start_month.plus_months(static_cast<long>(k)); }
};

// Maps a normalized input window to a normalized one-step prediction.
using WindowPredictor = std::function<double(std::span<const double>)>;

// Recursive multi-step forecast in normalized space. Step 1 sees the last
// `window` observed values; step k sees the last `window` entries of
// observed ++ predictions[0..k-1). The inverse transform is applied once at
// the end, then negatives are clamped to 0 when `clamp` is set.
// Throws ArgumentError for horizon 0, DataError for a short series, and
// NumericError naming the step when a prediction is not finite.
ForecastResult forecast_with(const WindowPredictor& predictor, const NormalizationParams& norm,
                             const MonthlySeries& series, std::size_t window, std::size_t horizon,
                             bool clamp = true);

ForecastResult forecast(const Checkpoint& ckpt, const MonthlySeries& series, std::size_t horizon,
                        bool clamp = true);

}  // namespace firecast
