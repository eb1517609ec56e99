#pragma once

// Minimal deterministic SVG charts: a heatmap for distance tables and a
// scatter plot for lexical coordinates.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vista/analysis.hpp"
#include "vista/error.hpp"
#include "vista/graph_io.hpp"

namespace vista {

class DegenerateExtent : public Error {
 public:
  using Error::Error;
};

inline std::string xml_escape(std::string_view s) {
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

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

namespace detail {

inline std::string svg_open(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         svg_num(w) + "\" height=\"" + svg_num(h) + "\" viewBox=\"0 0 " + svg_num(w) + " " +
         svg_num(h) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
}

inline std::string svg_text(double x, double y, std::string_view s, std::string_view anchor = "middle",
                            std::string_view extra = "") {
  return "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" text-anchor=\"" +
         std::string(anchor) + "\"" + std::string(extra) + ">" + xml_escape(s) + "</text>\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Heatmap

struct HeatmapLayout {
  double left = 180, top = 50, cell_w = 80, cell_h = 32, legend_w = 160;
};

inline std::string emit_heatmap_svg(const DistanceTable& table, std::string_view title = "",
                                    const HeatmapLayout& L = HeatmapLayout{}) {
  const std::size_t rows = table.row_labels.size();
  const std::size_t cols = table.bucket_count();
  if (rows == 0 || cols == 0) throw DegenerateExtent("heatmap needs at least one row and one bucket");
  std::int64_t max_count = 0;
  for (const auto& r : table.cells) {
    for (auto c : r) max_count = std::max(max_count, c);
  }
  const double grid_w = L.cell_w * static_cast<double>(cols);
  const double grid_h = L.cell_h * static_cast<double>(rows);
  const double width = L.left + grid_w + L.legend_w;
  const double height = L.top + grid_h + 60;

  auto shade = [&](std::int64_t c) {
    const double t = max_count > 0 ? static_cast<double>(c) / static_cast<double>(max_count) : 0.0;
    const int r = static_cast<int>(255 - t * (255 - 8));
    const int g = static_cast<int>(255 - t * (255 - 48));
    const int b = static_cast<int>(255 - t * (255 - 107));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
  };

  std::string s = detail::svg_open(width, height);
  s += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + svg_num(width) + "\" height=\"" +
       svg_num(height) + "\" fill=\"white\"/>\n";
  if (!title.empty()) s += detail::svg_text(width / 2, 24, title, "middle", " font-size=\"14\"");
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = L.top + L.cell_h * static_cast<double>(r);
    s += detail::svg_text(L.left - 8, y + L.cell_h / 2 + 4, table.row_labels[r], "end");
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = L.left + L.cell_w * static_cast<double>(c);
      const auto count = table.cells[r][c];
      s += "<rect class=\"cell\" x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" width=\"" +
           svg_num(L.cell_w) + "\" height=\"" + svg_num(L.cell_h) + "\" fill=\"" + shade(count) +
           "\" stroke=\"#999\"/>\n";
      s += detail::svg_text(x + L.cell_w / 2, y + L.cell_h / 2 + 4, std::to_string(count));
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const double x = L.left + L.cell_w * (static_cast<double>(c) + 0.5);
    s += detail::svg_text(x, L.top + grid_h + 18, table.bucket_label(c));
  }
  s += detail::svg_text(L.left + grid_w / 2, L.top + grid_h + 42, "character offset distance");
  const double lx = L.left + grid_w + 24;
  s += "<g class=\"legend\">\n";
  s += "<rect class=\"legend-swatch\" x=\"" + svg_num(lx) + "\" y=\"" + svg_num(L.top) +
       "\" width=\"16\" height=\"16\" fill=\"" + shade(0) + "\" stroke=\"#999\"/>\n";
  s += detail::svg_text(lx + 22, L.top + 12, "0", "start");
  s += "<rect class=\"legend-swatch\" x=\"" + svg_num(lx) + "\" y=\"" + svg_num(L.top + 24) +
       "\" width=\"16\" height=\"16\" fill=\"" + shade(max_count) + "\" stroke=\"#999\"/>\n";
  s += detail::svg_text(lx + 22, L.top + 36, std::to_string(max_count), "start");
  s += "</g>\n</svg>\n";
  return s;
}

// ---------------------------------------------------------------------------
// Scatter

struct ScatterPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

struct ScatterOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  std::optional<std::pair<double, double>> x_range;  // data extents when unset
  std::optional<std::pair<double, double>> y_range;
  double width = 640, height = 480;
  double left = 70, right = 150, top = 40, bottom = 60;
};

// Viewport transform used by emit_scatter_svg.
struct ScatterMap {
  double x0, x1, y0, y1;    // data extents
  double px0, px1, py0, py1;  // plot box in pixels (py0 top)

  double cx(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double cy(double y) const { return py0 + (y1 - y) / (y1 - y0) * (py1 - py0); }
};

inline ScatterMap scatter_map(const std::vector<ScatterPoint>& pts, const ScatterOptions& o) {
  if (pts.empty() && (!o.x_range || !o.y_range)) throw DegenerateExtent("scatter has no points");
  auto extent = [&](auto get, const std::optional<std::pair<double, double>>& fixed) {
    if (fixed) return *fixed;
    double lo = get(pts.front()), hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, get(p));
      hi = std::max(hi, get(p));
    }
    return std::pair{lo, hi};
  };
  const auto [x0, x1] = extent([](const ScatterPoint& p) { return p.x; }, o.x_range);
  const auto [y0, y1] = extent([](const ScatterPoint& p) { return p.y; }, o.y_range);
  if (!(x1 > x0) || !(y1 > y0)) throw DegenerateExtent("scatter extent has zero width or height");
  return {x0, x1, y0, y1, o.left, o.width - o.right, o.top, o.height - o.bottom};
}

inline std::string emit_scatter_svg(const std::vector<ScatterPoint>& pts,
                                    const ScatterOptions& o = ScatterOptions{}) {
  const ScatterMap m = scatter_map(pts, o);
  std::string s = detail::svg_open(o.width, o.height);
  s += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + svg_num(o.width) + "\" height=\"" +
       svg_num(o.height) + "\" fill=\"white\"/>\n";
  if (!o.title.empty()) s += detail::svg_text(o.width / 2, 24, o.title, "middle", " font-size=\"14\"");
  s += "<g class=\"axes\" stroke=\"black\">\n";
  s += "<line x1=\"" + svg_num(m.px0) + "\" y1=\"" + svg_num(m.py1) + "\" x2=\"" + svg_num(m.px1) +
       "\" y2=\"" + svg_num(m.py1) + "\"/>\n";
  s += "<line x1=\"" + svg_num(m.px0) + "\" y1=\"" + svg_num(m.py0) + "\" x2=\"" + svg_num(m.px0) +
       "\" y2=\"" + svg_num(m.py1) + "\"/>\n";
  s += "</g>\n";
  s += detail::svg_text(m.px0, m.py1 + 16, svg_num(m.x0));
  s += detail::svg_text(m.px1, m.py1 + 16, svg_num(m.x1));
  s += detail::svg_text(m.px0 - 6, m.py1, svg_num(m.y0), "end");
  s += detail::svg_text(m.px0 - 6, m.py0 + 8, svg_num(m.y1), "end");
  s += detail::svg_text((m.px0 + m.px1) / 2, o.height - 16, o.x_label);
  s += detail::svg_text(16, (m.py0 + m.py1) / 2, o.y_label, "middle",
                        " transform=\"rotate(-90 16 " + svg_num((m.py0 + m.py1) / 2) + ")\"");
  for (const auto& p : pts) {
    s += "<circle class=\"point\" cx=\"" + svg_num(m.cx(p.x)) + "\" cy=\"" + svg_num(m.cy(p.y)) +
         "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.7\"><title>" + xml_escape(p.label) +
         "</title></circle>\n";
  }
  const double lx = m.px1 + 20;
  s += "<g class=\"legend\">\n<circle cx=\"" + svg_num(lx) + "\" cy=\"" + svg_num(m.py0 + 8) +
       "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  s += detail::svg_text(lx + 10, m.py0 + 12, std::to_string(pts.size()) + " items", "start");
  s += "</g>\n</svg>\n";
  return s;
}

inline std::vector<ScatterPoint> lexicon_points(const LexicalRoleStats& stats) {
  std::vector<ScatterPoint> pts;
  for (const auto& [key, e] : stats.entries) pts.push_back({e.word, e.x, e.y});
  return pts;
}

inline void write_svg(const std::filesystem::path& path, std::string_view svg) { write_file(path, svg); }

}  // namespace vista
