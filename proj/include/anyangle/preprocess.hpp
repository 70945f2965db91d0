#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anyangle/geometry.hpp"
#include "anyangle/grid_map.hpp"

namespace anyangle {

/// Single-linkage clustering of occupied cells under centre-to-centre distance.
/// With diagonal moves allowed the cutoff is strict (< sqrt 2): 4-connectivity.
/// Otherwise diagonal neighbours (distance exactly sqrt 2) also merge: 8-connectivity.
struct ClusterSet {
  int width = 0;
  int height = 0;
  bool diagonal_move_allowed = true;
  std::vector<int> cluster_of;             // per cell, -1 when free
  std::vector<std::vector<Cell>> clusters;  // cells in row-major order

  int cluster_at(int cx, int cy) const {
    if (cx < 0 || cy < 0 || cx >= width || cy >= height) return -1;
    return cluster_of[static_cast<std::size_t>(cy) * width + cx];
  }
  std::size_t size() const { return clusters.size(); }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

inline ClusterSet cluster_obstacles(const GridMap& map, bool diagonal_move_allowed) {
  const int w = map.width();
  const int h = map.height();
  detail::DisjointSets sets(static_cast<std::size_t>(w) * h);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!map.occupied(x, y)) continue;
      if (map.occupied(x + 1, y)) sets.unite(idx(x, y), idx(x + 1, y));
      if (map.occupied(x, y + 1)) sets.unite(idx(x, y), idx(x, y + 1));
      if (!diagonal_move_allowed) {
        if (map.occupied(x + 1, y + 1)) sets.unite(idx(x, y), idx(x + 1, y + 1));
        if (map.occupied(x - 1, y + 1)) sets.unite(idx(x, y), idx(x - 1, y + 1));
      }
    }
  }

  ClusterSet cs;
  cs.width = w;
  cs.height = h;
  cs.diagonal_move_allowed = diagonal_move_allowed;
  cs.cluster_of.assign(static_cast<std::size_t>(w) * h, -1);
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!map.occupied(x, y)) continue;
      const std::size_t root = sets.find(idx(x, y));
      if (label[root] < 0) {
        label[root] = static_cast<int>(cs.clusters.size());
        cs.clusters.emplace_back();
      }
      cs.cluster_of[idx(x, y)] = label[root];
      cs.clusters[static_cast<std::size_t>(label[root])].push_back({x, y});
    }
  }
  return cs;
}

/// One row of the vertex tables: position, owning obstacle cell, owning cluster.
struct VertexRow {
  Point p;
  int obstacle_index = -1;  // row-major cell index of the owning cell
  int cluster_index = -1;

  friend bool operator==(const VertexRow&, const VertexRow&) = default;
};

/// Rows grouped contiguously by cluster; rows_of(c) is the slice for cluster c.
struct VertexTable {
  std::vector<VertexRow> rows;
  std::vector<std::size_t> cluster_begin;  // size clusters + 1

  std::span<const VertexRow> rows_of(int cluster) const {
    const auto c = static_cast<std::size_t>(cluster);
    return std::span<const VertexRow>(rows).subspan(cluster_begin[c], cluster_begin[c + 1] - cluster_begin[c]);
  }
  std::size_t size() const { return rows.size(); }

  friend bool operator==(const VertexTable&, const VertexTable&) = default;
};

enum class VertexMode { hull, convex_corners };

inline std::string_view to_string(VertexMode m) { return m == VertexMode::hull ? "hull" : "convex_corners"; }

inline VertexMode vertex_mode_from_string(std::string_view s) {
  if (s == "hull") return VertexMode::hull;
  if (s == "convex_corners" || s == "convex-corners" || s == "convex") return VertexMode::convex_corners;
  throw std::invalid_argument("unknown vertex mode '" + std::string(s) + "'");
}

struct Box {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

/// Query-independent preprocessing output shared by every search on one map.
struct Preprocessed {
  ClusterSet clusters;
  VertexMode mode = VertexMode::hull;
  VertexTable all;     // every corner point of every cluster
  VertexTable convex;  // hull or convex-corner vertices, minus map-boundary points
  std::vector<Box> bounds;  // per-cluster closed bounding box of its cells
};

namespace detail {

inline bool on_map_boundary(const Point& p, const GridMap& map) {
  return p.x == 0 || p.y == 0 || p.x == map.width() || p.y == map.height();
}

/// Corner points of a cluster, each tagged with its lowest row-major owning cell.
inline std::vector<VertexRow> cluster_corners(const std::vector<Cell>& cells, const GridMap& map, int cluster) {
  std::vector<VertexRow> rows;
  rows.reserve(cells.size() * 4);
  // cells arrive in row-major order, so the first cell that emits a corner owns it
  for (const Cell& c : cells) {
    for (int dy = 0; dy <= 1; ++dy) {
      for (int dx = 0; dx <= 1; ++dx) {
        rows.push_back({{static_cast<double>(c.x + dx), static_cast<double>(c.y + dy)},
                        map.cell_index(c.x, c.y), cluster});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const VertexRow& a, const VertexRow& b) {
    return a.p.y < b.p.y || (a.p.y == b.p.y && a.p.x < b.p.x);
  });
  rows.erase(std::unique(rows.begin(), rows.end(), [](const VertexRow& a, const VertexRow& b) { return a.p == b.p; }),
             rows.end());
  return rows;
}

}  // namespace detail

inline std::atomic<std::uint64_t>& preprocess_invocations() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}

/// V_all and V_convex with hull vertices of each cluster's corner-point set.
inline std::pair<VertexTable, VertexTable> cluster_vertices_hull(const ClusterSet& cs, const GridMap& map) {
  VertexTable all;
  VertexTable convex;
  for (std::size_t ci = 0; ci < cs.clusters.size(); ++ci) {
    all.cluster_begin.push_back(all.rows.size());
    convex.cluster_begin.push_back(convex.rows.size());
    const auto corners = detail::cluster_corners(cs.clusters[ci], map, static_cast<int>(ci));
    std::vector<Point> pts;
    pts.reserve(corners.size());
    for (const VertexRow& r : corners) pts.push_back(r.p);
    for (const Point& h : convex_hull(pts)) {
      if (detail::on_map_boundary(h, map)) continue;
      const auto it = std::find_if(corners.begin(), corners.end(), [&](const VertexRow& r) { return r.p == h; });
      convex.rows.push_back(*it);
    }
    all.rows.insert(all.rows.end(), corners.begin(), corners.end());
  }
  all.cluster_begin.push_back(all.rows.size());
  convex.cluster_begin.push_back(convex.rows.size());
  return {std::move(all), std::move(convex)};
}

/// V_all plus every convex corner (inner angle < 180 deg): exactly one incident cell of
/// the cluster, or two diagonal ones when diagonal moves are allowed.
inline std::pair<VertexTable, VertexTable> cluster_vertices_convex_corners(const ClusterSet& cs, const GridMap& map) {
  VertexTable all;
  VertexTable convex;
  for (std::size_t ci = 0; ci < cs.clusters.size(); ++ci) {
    const int id = static_cast<int>(ci);
    all.cluster_begin.push_back(all.rows.size());
    convex.cluster_begin.push_back(convex.rows.size());
    const auto corners = detail::cluster_corners(cs.clusters[ci], map, id);
    for (const VertexRow& r : corners) {
      if (detail::on_map_boundary(r.p, map)) continue;
      const int x = static_cast<int>(r.p.x);
      const int y = static_cast<int>(r.p.y);
      const bool ll = cs.cluster_at(x - 1, y - 1) == id;
      const bool lr = cs.cluster_at(x, y - 1) == id;
      const bool ul = cs.cluster_at(x - 1, y) == id;
      const bool ur = cs.cluster_at(x, y) == id;
      const int count = ll + lr + ul + ur;
      const bool diagonal_pair = count == 2 && ll == ur;
      if (count == 1 || (diagonal_pair && cs.diagonal_move_allowed)) convex.rows.push_back(r);
    }
    all.rows.insert(all.rows.end(), corners.begin(), corners.end());
  }
  all.cluster_begin.push_back(all.rows.size());
  convex.cluster_begin.push_back(convex.rows.size());
  return {std::move(all), std::move(convex)};
}

inline Preprocessed preprocess(const GridMap& map, bool diagonal_move_allowed, VertexMode mode) {
  ++preprocess_invocations();
  Preprocessed pre;
  pre.clusters = cluster_obstacles(map, diagonal_move_allowed);
  pre.mode = mode;
  auto tables = mode == VertexMode::hull ? cluster_vertices_hull(pre.clusters, map)
                                         : cluster_vertices_convex_corners(pre.clusters, map);
  pre.all = std::move(tables.first);
  pre.convex = std::move(tables.second);
  pre.bounds.reserve(pre.clusters.size());
  for (const auto& cells : pre.clusters.clusters) {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const Cell& c : cells) {
      b.x0 = std::min(b.x0, static_cast<double>(c.x));
      b.y0 = std::min(b.y0, static_cast<double>(c.y));
      b.x1 = std::max(b.x1, static_cast<double>(c.x + 1));
      b.y1 = std::max(b.y1, static_cast<double>(c.y + 1));
    }
    pre.bounds.push_back(b);
  }
  return pre;
}

/// Debug dump: [[x, y, obstacle_index, cluster_index], ...].
inline nlohmann::json to_json(const VertexTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const VertexRow& r : table.rows) rows.push_back({r.p.x, r.p.y, r.obstacle_index, r.cluster_index});
  return rows;
}

}  // namespace anyangle
