#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "laneopt/io/format.hpp"

namespace laneopt::io {

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  ///< (x, y), x ascending
  bool step = false;  ///< hold each y until the next x
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
  bool integer_y = false;  ///< integer tick labels, e.g. lane counts
};

namespace detail {

inline std::string escape_xml(const std::string& s) {
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

/// 1, 2 or 5 times a power of ten, giving roughly `target` intervals over `span`.
inline double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * magnitude >= raw) return m * magnitude;
  }
  return 10.0 * magnitude;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

}  // namespace detail

/// Self-contained static SVG; identical input gives identical bytes.
inline std::string render_svg(const LineChart& chart) {
  constexpr double width = 640, height = 400;
  constexpr double left = 70, right = 150, top = 40, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = 0.0, x_max = 1.0, y_max = 0.0;
  bool any = false;
  for (const auto& s : chart.series) {
    for (auto [x, y] : s.points) {
      x_min = any ? std::min(x_min, x) : x;
      x_max = any ? std::max(x_max, x) : x;
      y_max = std::max(y_max, y);
      any = true;
    }
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  const double y_step = chart.integer_y ? std::max(1.0, detail::nice_step(y_max, 5)) : detail::nice_step(y_max, 5);
  const double y_top = std::max(y_step, std::ceil(y_max / y_step) * y_step);

  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return top + plot_h - y / y_top * plot_h; };
  auto num = [](double v) { return fixed(v, 2); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + ' ' + num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         detail::escape_xml(chart.title) + "</text>\n";

  // grid and ticks
  const double x_step = detail::nice_step(x_max - x_min, 10);
  for (double x = x_min; x <= x_max + 1e-9; x += x_step) {
    svg += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(top) + "\" x2=\"" + num(sx(x)) + "\" y2=\"" +
           num(top + plot_h) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(top + plot_h + 16) + "\" text-anchor=\"middle\">" +
           fixed(x, 1) + "</text>\n";
  }
  for (double y = 0.0; y <= y_top + 1e-9; y += y_step) {
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(sy(y)) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
           num(sy(y)) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(sy(y) + 4) + "\" text-anchor=\"end\">" +
           fixed(y, chart.integer_y || y_step >= 1.0 ? 0 : 2) + "</text>\n";
  }
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 14) + "\" text-anchor=\"middle\">" +
         detail::escape_xml(chart.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + num(top + plot_h / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         detail::escape_xml(chart.y_label) + "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const ChartSeries& s = chart.series[i];
    const char* color = detail::kPalette[i % std::size(detail::kPalette)];
    std::string path;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      auto [x, y] = s.points[k];
      if (k == 0) {
        path += 'M' + num(sx(x)) + ',' + num(sy(y));
        continue;
      }
      if (s.step) path += " L" + num(sx(x)) + ',' + num(sy(s.points[k - 1].second));
      path += " L" + num(sx(x)) + ',' + num(sy(y));
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(i);
    svg += "<line x1=\"" + num(left + plot_w + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(left + plot_w + 30) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(left + plot_w + 35) + "\" y=\"" + num(ly) + "\">" + detail::escape_xml(s.name) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace laneopt::io
