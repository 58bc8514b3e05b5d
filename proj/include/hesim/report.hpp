/*
 * Copyright 2026 The hesim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Report emission: schema-stable CSV files, JSON manifests, and minimal
// self-contained SVG line charts. CSV bodies are deterministic for a fixed
// seed and configuration; wall-clock timings go to dedicated files or the
// manifest.

#ifndef HESIM_REPORT_HPP
#define HESIM_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hesim/common.hpp"

namespace hesim::report {

/// Shortest round-trippable decimal form of a double; deterministic.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt(u64 v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(u32 v) { return std::to_string(v); }

class CsvFile {
 public:
  CsvFile(const std::string& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw ConfigError("cannot open output file: " + path);
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + dir);
}

inline std::string iso_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// SVG line charts

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line chart; y axis optionally log10. Intended for quick visual
/// inspection, the CSV files are the authoritative output.
inline void svg_line_chart(const std::string& path, const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series,
                           bool log_y = false) {
  const double width = 640, height = 420;
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      double yv = s.y[i];
      if (log_y) {
        if (yv <= 0) continue;
        yv = std::log10(yv);
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
  }
  if (ymin > ymax) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const auto sx = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  const auto sy = [&](double y) {
    if (log_y) y = std::log10(std::max(y, 1e-300));
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='22' text-anchor='middle' "
      << "font-family='sans-serif' font-size='15'>" << title << "</text>\n";
  // Axes.
  out << "<line x1='" << ml << "' y1='" << height - mb << "' x2='"
      << width - mr << "' y2='" << height - mb
      << "' stroke='black' stroke-width='1'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << height - mb << "' stroke='black' stroke-width='1'/>\n";
  out << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='12'>"
      << x_label << "</text>\n";
  out << "<text x='16' y='" << (mt + height - mb) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='12' "
      << "transform='rotate(-90 16 " << (mt + height - mb) / 2 << ")'>"
      << (log_y ? "log10 " + y_label : y_label) << "</text>\n";
  // Tick labels at the extremes.
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", xmin);
  out << "<text x='" << ml << "' y='" << height - mb + 16
      << "' font-family='sans-serif' font-size='10'>" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", xmax);
  out << "<text x='" << width - mr - 30 << "' y='" << height - mb + 16
      << "' font-family='sans-serif' font-size='10'>" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", log_y ? std::pow(10.0, ymin) : ymin);
  out << "<text x='8' y='" << height - mb
      << "' font-family='sans-serif' font-size='10'>" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", log_y ? std::pow(10.0, ymax) : ymax);
  out << "<text x='8' y='" << mt + 8
      << "' font-family='sans-serif' font-size='10'>" << buf << "</text>\n";

  int color_index = 0;
  double legend_y = mt + 4;
  for (const auto& s : series) {
    const char* color = colors[color_index++ % 6];
    out << "<polyline fill='none' stroke='" << color
        << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0) continue;
      out << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
    }
    out << "'/>\n";
    out << "<text x='" << width - mr - 150 << "' y='" << legend_y
        << "' font-family='sans-serif' font-size='11' fill='" << color << "'>"
        << s.name << "</text>\n";
    legend_y += 14;
  }
  out << "</svg>\n";
}

}  // namespace hesim::report

#endif  // HESIM_REPORT_HPP
