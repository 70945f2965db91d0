#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "anyangle/geometry.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/preprocess.hpp"

namespace anyangle {

/// Comparison strictness of the slab test. With vertex_touch_blocks a segment that
/// merely touches a cell (corner or edge) away from its own endpoints is blocked.
struct VisibilityConfig {
  bool vertex_touch_blocks = false;

  /// Pairs the touch rule with the diagonal-move rule used for clustering.
  static VisibilityConfig for_diagonal_rule(bool diagonal_move_allowed) { return {!diagonal_move_allowed}; }
};

/// Slab test of segment pq against one closed unit cell.
inline bool segment_intersects_cell(const Point& p, const Point& q, const Cell& cell, const VisibilityConfig& cfg) {
  if (p == q) throw std::invalid_argument("segment_intersects_cell: degenerate segment");
  const double x0 = cell.x;
  const double x1 = cell.x + 1.0;
  const double y0 = cell.y;
  const double y1 = cell.y + 1.0;
  const Point d = q - p;

  if (d.x == 0.0 || d.y == 0.0) {
    // Axis-parallel: interval overlap along the segment, position test across it.
    const bool horizontal = d.y == 0.0;
    const double across = horizontal ? p.y : p.x;
    const double lo_c = horizontal ? y0 : x0;
    const double hi_c = horizontal ? y1 : x1;
    const double s0 = horizontal ? std::min(p.x, q.x) : std::min(p.y, q.y);
    const double s1 = horizontal ? std::max(p.x, q.x) : std::max(p.y, q.y);
    const double lo = std::max(s0, horizontal ? x0 : y0);
    const double hi = std::min(s1, horizontal ? x1 : y1);
    if (!(lo < hi)) return false;
    return cfg.vertex_touch_blocks ? (lo_c <= across && across <= hi_c) : (lo_c < across && across < hi_c);
  }

  const double tx_a = (x0 - p.x) / d.x;
  const double tx_b = (x1 - p.x) / d.x;
  const double ty_a = (y0 - p.y) / d.y;
  const double ty_b = (y1 - p.y) / d.y;
  const double enter = std::max({std::min(tx_a, tx_b), std::min(ty_a, ty_b), 0.0});
  const double exit = std::min({std::max(tx_a, tx_b), std::max(ty_a, ty_b), 1.0});
  if (!cfg.vertex_touch_blocks) return enter < exit;
  if (enter < exit) return true;
  // Single-point contact blocks unless it is one of the segment's own endpoints.
  return enter == exit && enter != 0.0 && enter != 1.0;
}

/// Closed segment vs closed cell: any shared point, endpoints included.
inline bool segment_touches_cell(const Point& p, const Point& q, const Cell& cell) {
  const double x0 = cell.x;
  const double x1 = cell.x + 1.0;
  const double y0 = cell.y;
  const double y1 = cell.y + 1.0;
  const Point d = q - p;
  double enter = 0.0;
  double exit = 1.0;
  const double starts[2] = {p.x, p.y};
  const double deltas[2] = {d.x, d.y};
  const double lows[2] = {x0, y0};
  const double highs[2] = {x1, y1};
  for (int axis = 0; axis < 2; ++axis) {
    if (deltas[axis] == 0.0) {
      if (starts[axis] < lows[axis] || starts[axis] > highs[axis]) return false;
      continue;
    }
    const double ta = (lows[axis] - starts[axis]) / deltas[axis];
    const double tb = (highs[axis] - starts[axis]) / deltas[axis];
    enter = std::max(enter, std::min(ta, tb));
    exit = std::min(exit, std::max(ta, tb));
  }
  return enter <= exit;
}

namespace detail {

/// Visits occupied cells in a one-cell-padded corridor around segment pq (a superset of
/// every cell the segment can touch), column by column. fn(cell) returns true to stop.
template <class Fn>
bool for_each_occupied_near_segment(const Point& p, const Point& q, const GridMap& map, Fn&& fn) {
  const double xmin = std::min(p.x, q.x);
  const double xmax = std::max(p.x, q.x);
  const int c0 = std::max(0, static_cast<int>(std::floor(xmin)) - 1);
  const int c1 = std::min(map.width() - 1, static_cast<int>(std::ceil(xmax)));
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  for (int cx = c0; cx <= c1; ++cx) {
    double ya;
    double yb;
    if (dx == 0.0) {
      ya = p.y;
      yb = q.y;
    } else {
      const double xa = std::clamp(static_cast<double>(cx), xmin, xmax);
      const double xb = std::clamp(static_cast<double>(cx + 1), xmin, xmax);
      ya = p.y + (xa - p.x) * dy / dx;
      yb = p.y + (xb - p.x) * dy / dx;
    }
    const int r0 = std::max(0, static_cast<int>(std::floor(std::min(ya, yb))) - 1);
    const int r1 = std::min(map.height() - 1, static_cast<int>(std::ceil(std::max(ya, yb))));
    for (int cy = r0; cy <= r1; ++cy) {
      if (map.occupied(cx, cy) && fn(Cell{cx, cy})) return true;
    }
  }
  return false;
}

/// Segment lying on a grid line: each unit step is flanked by two cells. The step is
/// blocked when both flanks are solid (strict) or either is occupied (touch mode).
/// Outside the map counts as solid wall in strict mode.
template <class Fn>
bool scan_gridline(const Point& p, const Point& q, const GridMap& map, const VisibilityConfig& cfg, Fn&& on_block) {
  const bool horizontal = p.y == q.y;
  const double along0 = horizontal ? std::min(p.x, q.x) : std::min(p.y, q.y);
  const double along1 = horizontal ? std::max(p.x, q.x) : std::max(p.y, q.y);
  const int line = static_cast<int>(horizontal ? p.y : p.x);
  const int s0 = static_cast<int>(std::floor(along0));
  const int s1 = static_cast<int>(std::ceil(along1)) - 1;
  for (int s = s0; s <= s1; ++s) {
    const Cell a = horizontal ? Cell{s, line} : Cell{line, s};
    const Cell b = horizontal ? Cell{s, line - 1} : Cell{line - 1, s};
    const bool a_occ = map.occupied(a);
    const bool b_occ = map.occupied(b);
    bool blocked;
    if (cfg.vertex_touch_blocks) {
      blocked = a_occ || b_occ;
    } else {
      const bool a_solid = a_occ || !map.in_bounds(a.x, a.y);
      const bool b_solid = b_occ || !map.in_bounds(b.x, b.y);
      blocked = a_solid && b_solid && (a_occ || b_occ);
    }
    if (!blocked) continue;
    if (on_block(a_occ ? a : b, a_occ && b_occ ? &b : nullptr)) return true;
  }
  return false;
}

inline bool on_gridline(const Point& p, const Point& q) {
  return (p.y == q.y && is_integral(p.y)) || (p.x == q.x && is_integral(p.x));
}

}  // namespace detail

/// Ray-cast visibility between p and q over the map's obstacle cells.
inline bool visible(const Point& p, const Point& q, const GridMap& map, const VisibilityConfig& cfg) {
  if (p == q) throw std::invalid_argument("visible: degenerate segment");
  if (detail::on_gridline(p, q)) {
    return !detail::scan_gridline(p, q, map, cfg, [](const Cell&, const Cell*) { return true; });
  }
  return !detail::for_each_occupied_near_segment(
      p, q, map, [&](const Cell& c) { return segment_intersects_cell(p, q, c, cfg); });
}

/// Ids of clusters owning a cell that blocks pq, ascending. Empty iff visible(p, q).
inline std::vector<int> blocking_clusters(const Point& p, const Point& q, const GridMap& map, const ClusterSet& cs,
                                          const VisibilityConfig& cfg) {
  if (p == q) throw std::invalid_argument("blocking_clusters: degenerate segment");
  std::vector<int> ids;
  if (detail::on_gridline(p, q)) {
    detail::scan_gridline(p, q, map, cfg, [&](const Cell& a, const Cell* b) {
      ids.push_back(cs.cluster_at(a.x, a.y));
      if (b != nullptr) ids.push_back(cs.cluster_at(b->x, b->y));
      return false;
    });
  } else {
    detail::for_each_occupied_near_segment(p, q, map, [&](const Cell& c) {
      if (segment_intersects_cell(p, q, c, cfg)) ids.push_back(cs.cluster_at(c.x, c.y));
      return false;
    });
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

/// Ids of clusters with a cell sharing any point with the closed segment pq.
inline void touching_clusters(const Point& p, const Point& q, const GridMap& map, const ClusterSet& cs,
                              std::vector<int>& out) {
  detail::for_each_occupied_near_segment(p, q, map, [&](const Cell& c) {
    if (segment_touches_cell(p, q, c)) out.push_back(cs.cluster_at(c.x, c.y));
    return false;
  });
}

}  // namespace anyangle
