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

#include "firecast/svg_plot.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 360.0;
constexpr double kLossPanelHeight = 220.0;
constexpr double kLeft = 80.0, kRight = 24.0, kTop = 44.0, kBottom = 44.0;

struct Box {
  double x0, y0, x1, y1;  // pixel rectangle
  double lo_x, hi_x, lo_y, hi_y;

  double px(double x) const { return x0 + (x - lo_x) / (hi_x - lo_x) * (x1 - x0); }
  double py(double y) const { return y1 - (y - lo_y) / (hi_y - lo_y) * (y1 - y0); }
};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string polyline(const Box& b, std::span<const double> xs, std::span<const double> ys, std::string_view style) {
  std::string pts;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) pts += ' ';
    pts += fmt::format("{:.2f},{:.2f}", b.px(xs[k]), b.py(ys[k]));
  }
  return fmt::format("  <polyline fill=\"none\" {} points=\"{}\"/>\n", style, pts);
}

std::string axes(const Box& b) {
  return fmt::format(
      "  <line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#333\"/>\n"
      "  <line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{1:.2f}\" stroke=\"#333\"/>\n",
      b.x0, b.y1, b.x1, b.y0);
}

std::string text(double x, double y, std::string_view anchor, std::string_view s) {
  return fmt::format("  <text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"{}\">{}</text>\n", x, y, anchor, escape(s));
}

std::string fmt_value(double v) { return fmt::format("{:.6g}", v); }

// Pads a degenerate range so the scale stays finite.
void widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
}

}  // namespace

std::string render_svg(const PlotInputs& in) {
  if (in.series.values.empty()) throw DataError("cannot plot an empty series");
  if (in.forecast && in.forecast->months.size() != in.forecast->values.size()) {
    throw DataError("forecast months and values differ in length");
  }
  const bool with_loss = in.history && !in.history->empty();
  const double height = kPanelHeight + (with_loss ? kLossPanelHeight : 0.0);

  std::vector<double> sx, sy;
  for (std::size_t k = 0; k < in.series.size(); ++k) {
    sx.push_back(static_cast<double>(k));
    sy.push_back(in.series.values[k]);
  }
  std::vector<double> fx, fy;
  if (in.forecast) {
    for (std::size_t k = 0; k < in.forecast->months.size(); ++k) {
      fx.push_back(static_cast<double>(in.series.start_month.months_until(in.forecast->months[k])));
      fy.push_back(in.forecast->values[k]);
    }
  }

  double lo_x = 0.0, hi_x = sx.back();
  double lo_y = *std::min_element(sy.begin(), sy.end());
  double hi_y = *std::max_element(sy.begin(), sy.end());
  for (std::size_t k = 0; k < fx.size(); ++k) {
    lo_x = std::min(lo_x, fx[k]);
    hi_x = std::max(hi_x, fx[k]);
    lo_y = std::min(lo_y, fy[k]);
    hi_y = std::max(hi_y, fy[k]);
  }
  lo_y = std::min(lo_y, 0.0);
  widen(lo_x, hi_x);
  widen(lo_y, hi_y);

  const Box main{kLeft, kTop, kWidth - kRight, kPanelHeight - kBottom, lo_x, hi_x, lo_y, hi_y};

  std::string svg = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, height);
  svg += fmt::format("  <text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                     kWidth / 2.0, escape(in.title));
  svg += axes(main);
  svg += text(main.x0 - 6.0, main.y0 + 4.0, "end", fmt_value(hi_y));
  svg += text(main.x0 - 6.0, main.y1 + 4.0, "end", fmt_value(lo_y));
  svg += text(main.x0, main.y1 + 18.0, "start", in.series.start_month.plus_months(static_cast<long>(lo_x)).to_string());
  svg += text(main.x1, main.y1 + 18.0, "end", in.series.start_month.plus_months(static_cast<long>(hi_x)).to_string());

  svg += polyline(main, sx, sy, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
  svg += text(main.x1, main.y0 - 8.0, "end", "observed");
  if (!fx.empty()) {
    svg += polyline(main, fx, fy, "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");
    svg += text(main.x1 - 80.0, main.y0 - 8.0, "end", "forecast");
  }

  if (with_loss) {
    std::vector<double> ex, ey;
    for (const EpochRecord& r : *in.history) {
      ex.push_back(static_cast<double>(r.epoch));
      ey.push_back(r.loss);
    }
    double le = *std::min_element(ex.begin(), ex.end()), he = *std::max_element(ex.begin(), ex.end());
    double ll = std::min(0.0, *std::min_element(ey.begin(), ey.end()));
    double hl = *std::max_element(ey.begin(), ey.end());
    widen(le, he);
    widen(ll, hl);
    const double top = kPanelHeight + 20.0;
    const Box loss{kLeft, top, kWidth - kRight, height - kBottom, le, he, ll, hl};
    svg += axes(loss);
    svg += text(loss.x0 - 6.0, loss.y0 + 4.0, "end", fmt_value(hl));
    svg += text(loss.x0 - 6.0, loss.y1 + 4.0, "end", fmt_value(ll));
    svg += text(loss.x0, loss.y1 + 18.0, "start", fmt::format("epoch {}", static_cast<long>(le)));
    svg += text(loss.x1, loss.y1 + 18.0, "end", fmt::format("epoch {}", static_cast<long>(he)));
    svg += text(loss.x1, loss.y0 - 6.0, "end", "training loss");
    svg += polyline(loss, ex, ey, "stroke=\"#2ca02c\" stroke-width=\"1.5\"");
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace firecast
