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

#include <optional>
#include <span>
#include <string>

#include "firecast/csv_io.hpp"
#include "firecast/dataset.hpp"
#include "firecast/training.hpp"

namespace firecast {

struct PlotInputs {
  MonthlySeries series;
  std::optional<MonthlyValues> forecast;
  std::optional<std::vector<EpochRecord>> history;
  std::string title = "Monthly series";
};

// Static SVG line chart: the series as one solid polyline, the forecast as a
// dashed polyline sharing the time axis, and the loss curve in a second panel
// below. Output is a pure function of the inputs.
std::string render_svg(const PlotInputs& in);

}  // namespace firecast
