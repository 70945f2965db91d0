#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "anyangle/bench.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/search.hpp"

namespace anyangle {

/// SVG drawing of a solved query: obstacle cells, evaluated nodes as dots, the path,
/// and start/target markers. The y axis points up. Output bytes depend only on input.
inline std::string render_svg(const GridMap& map, const PathResult& result, double cell_px = 10.0) {
  if (!result.found || result.waypoints.empty()) throw std::invalid_argument("render_svg: no path to draw");
  const double w = map.width() * cell_px;
  const double h = map.height() * cell_px;
  auto fx = [&](double x) { return format_number(x * cell_px); };
  auto fy = [&](double y) { return format_number((map.height() - y) * cell_px); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(w) + "\" height=\"" +
         format_number(h) + "\" viewBox=\"0 0 " + format_number(w) + " " + format_number(h) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + format_number(w) + "\" height=\"" + format_number(h) +
         "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  out += "<g fill=\"#404040\">\n";
  for (int y = 0; y < map.height(); ++y) {
    int x = 0;
    while (x < map.width()) {
      if (!map.occupied(x, y)) {
        ++x;
        continue;
      }
      const int run_start = x;
      while (x < map.width() && map.occupied(x, y)) ++x;
      out += "<rect x=\"" + fx(run_start) + "\" y=\"" + fy(y + 1) + "\" width=\"" +
             format_number((x - run_start) * cell_px) + "\" height=\"" + format_number(cell_px) + "\"/>\n";
    }
  }
  out += "</g>\n<g fill=\"#d03030\">\n";
  const std::string dot_r = format_number(cell_px * 0.2);
  for (const Point& p : result.evaluated) {
    out += "<circle cx=\"" + fx(p.x) + "\" cy=\"" + fy(p.y) + "\" r=\"" + dot_r + "\"/>\n";
  }
  out += "</g>\n<polyline fill=\"none\" stroke=\"#1060c0\" stroke-width=\"" + format_number(cell_px * 0.25) +
         "\" points=\"";
  for (std::size_t i = 0; i < result.waypoints.size(); ++i) {
    if (i) out += ' ';
    out += fx(result.waypoints[i].x) + "," + fy(result.waypoints[i].y);
  }
  out += "\"/>\n";
  const Point& s = result.waypoints.front();
  const Point& t = result.waypoints.back();
  const std::string marker_r = format_number(cell_px * 0.5);
  out += "<circle cx=\"" + fx(s.x) + "\" cy=\"" + fy(s.y) + "\" r=\"" + marker_r + "\" fill=\"#20a040\"/>\n";
  out += "<circle cx=\"" + fx(t.x) + "\" cy=\"" + fy(t.y) + "\" r=\"" + marker_r +
         "\" fill=\"none\" stroke=\"#20a040\" stroke-width=\"" + format_number(cell_px * 0.2) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

inline void render_path(const GridMap& map, const PathResult& result, const std::string& out_path) {
  const std::string svg = render_svg(map, result);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw FileError("cannot write " + out_path);
  out << svg;
  if (!out) throw FileError("write failed for " + out_path);
}

}  // namespace anyangle
