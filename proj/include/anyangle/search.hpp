#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "anyangle/candidate_vertices.hpp"
#include "anyangle/geometry.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/open_list.hpp"
#include "anyangle/preprocess.hpp"
#include "anyangle/visibility.hpp"

namespace anyangle {

enum class Algorithm { astar_grid, theta_star, astar_visgraph, fa_astar };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::astar_grid: return "astar_grid";
    case Algorithm::theta_star: return "theta_star";
    case Algorithm::astar_visgraph: return "astar_visgraph";
    case Algorithm::fa_astar: return "fa_astar";
  }
  return "unknown";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  for (Algorithm a : {Algorithm::astar_grid, Algorithm::theta_star, Algorithm::astar_visgraph, Algorithm::fa_astar}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

struct PathResult {
  Algorithm algorithm = Algorithm::fa_astar;
  bool found = false;
  std::vector<Point> waypoints;
  double length = 0.0;
  std::size_t evaluated_nodes = 0;  // distinct nodes inserted into the open list
  std::size_t expansions = 0;       // nodes selected as current
  double elapsed_s = 0.0;
  double w = 1.0;                   // focal scale factor, FA-A* only
  std::size_t dead_ends = 0;        // FA-A* expansions that produced no candidate
  std::vector<Point> evaluated;     // insertion order, for rendering
};

inline double path_length(const std::vector<Point>& waypoints) {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
  return total;
}

/// Relative comparison used for every length equality in the benchmarks.
inline bool same_length(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::vector<Point> reconstruct(const OpenList& open, const GridMap& map, NodeId target) {
  std::vector<Point> path;
  NodeId n = target;
  for (;;) {
    path.push_back(map.lattice_point(n));
    const NodeId p = open.parent(n);
    if (p == n) break;
    n = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline PathResult trivial_result(Algorithm a, const Point& start) {
  PathResult r;
  r.algorithm = a;
  r.found = true;
  r.waypoints = {start};
  r.evaluated_nodes = 1;
  r.evaluated = {start};
  return r;
}

constexpr int kMoves8[8][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

/// Grid A* and Theta* share everything but the relaxation.
template <bool AnyAngle>
PathResult grid_search(const Query& query, const GridMap& map, bool diagonal_move_allowed,
                       const VisibilityConfig& cfg) {
  const auto t0 = Clock::now();
  validate_query(query, map);
  const Algorithm algo = AnyAngle ? Algorithm::theta_star : Algorithm::astar_grid;
  if (query.start == query.target) {
    auto r = trivial_result(algo, query.start);
    r.elapsed_s = seconds_since(t0);
    return r;
  }
  PathResult r;
  r.algorithm = algo;
  OpenList open(map.lattice_size());
  const NodeId start = static_cast<NodeId>(map.lattice_index(query.start));
  const NodeId target = static_cast<NodeId>(map.lattice_index(query.target));
  auto h = [&](const Point& p) { return distance(p, query.target); };
  open.insert(start, query.start, start, 0.0, h(query.start));
  r.evaluated.push_back(query.start);
  const int moves = diagonal_move_allowed ? 8 : 4;

  while (auto cur = open.best()) {
    const NodeId n = *cur;
    ++r.expansions;
    if (n == target) {
      r.found = true;
      break;
    }
    open.close(n);
    const Point np = map.lattice_point(n);
    const NodeId parent = open.parent(n);
    const Point pp = map.lattice_point(parent);
    for (int k = 0; k < moves; ++k) {
      const Point mp{np.x + kMoves8[k][0], np.y + kMoves8[k][1]};
      if (!map.contains_lattice_point(mp)) continue;
      const NodeId m = static_cast<NodeId>(map.lattice_index(mp));
      if (open.is_closed(m)) continue;
      if (!visible(np, mp, map, cfg)) continue;
      NodeId via = n;
      double g = open.g(n) + distance(np, mp);
      if constexpr (AnyAngle) {
        if (parent != n && visible(pp, mp, map, cfg)) {
          via = parent;
          g = open.g(parent) + distance(pp, mp);
        }
      }
      if (open.status(m) == OpenList::Status::unseen) {
        open.insert(m, mp, via, g, h(mp));
        r.evaluated.push_back(mp);
      } else if (g < open.g(m)) {
        open.update(m, mp, via, g, open.h(m));
      }
    }
  }
  r.evaluated_nodes = open.inserted();
  if (r.found) {
    r.waypoints = reconstruct(open, map, target);
    r.length = path_length(r.waypoints);
  }
  r.elapsed_s = seconds_since(t0);
  return r;
}

}  // namespace detail

/// A* over lattice corners with unit and diagonal moves.
inline PathResult astar_grid(const Query& query, const GridMap& map, bool diagonal_move_allowed,
                             const VisibilityConfig& cfg) {
  return detail::grid_search<false>(query, map, diagonal_move_allowed, cfg);
}

inline PathResult astar_grid(const Query& query, const GridMap& map, bool diagonal_move_allowed = true) {
  return astar_grid(query, map, diagonal_move_allowed, VisibilityConfig::for_diagonal_rule(diagonal_move_allowed));
}

/// Basic Theta*: grid neighbours, parent shortcut whenever the grandparent sees the neighbour.
inline PathResult theta_star(const Query& query, const GridMap& map, bool diagonal_move_allowed,
                             const VisibilityConfig& cfg) {
  return detail::grid_search<true>(query, map, diagonal_move_allowed, cfg);
}

inline PathResult theta_star(const Query& query, const GridMap& map, bool diagonal_move_allowed = true) {
  return theta_star(query, map, diagonal_move_allowed, VisibilityConfig::for_diagonal_rule(diagonal_move_allowed));
}

/// A* over {start, target} plus every V_convex vertex, edges discovered lazily.
/// `pre` should be built in convex-corner mode for the optimality guarantee.
inline PathResult astar_visgraph(const Query& query, const GridMap& map, const Preprocessed& pre,
                                 const VisibilityConfig& cfg) {
  const auto t0 = detail::Clock::now();
  validate_query(query, map);
  if (query.start == query.target) {
    auto r = detail::trivial_result(Algorithm::astar_visgraph, query.start);
    r.elapsed_s = detail::seconds_since(t0);
    return r;
  }
  PathResult r;
  r.algorithm = Algorithm::astar_visgraph;

  std::vector<NodeId> nodes;
  nodes.reserve(pre.convex.size() + 2);
  nodes.push_back(static_cast<NodeId>(map.lattice_index(query.start)));
  nodes.push_back(static_cast<NodeId>(map.lattice_index(query.target)));
  for (const VertexRow& row : pre.convex.rows) nodes.push_back(static_cast<NodeId>(map.lattice_index(row.p)));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<Point> points;
  points.reserve(nodes.size());
  for (NodeId n : nodes) points.push_back(map.lattice_point(n));

  OpenList open(map.lattice_size());
  const NodeId start = static_cast<NodeId>(map.lattice_index(query.start));
  const NodeId target = static_cast<NodeId>(map.lattice_index(query.target));
  open.insert(start, query.start, start, 0.0, distance(query.start, query.target));
  r.evaluated.push_back(query.start);

  while (auto cur = open.best()) {
    const NodeId n = *cur;
    ++r.expansions;
    if (n == target) {
      r.found = true;
      break;
    }
    open.close(n);
    const Point np = map.lattice_point(n);
    const double gn = open.g(n);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeId m = nodes[i];
      if (m == n || open.is_closed(m)) continue;
      const double g = gn + distance(np, points[i]);
      const bool seen = open.status(m) != OpenList::Status::unseen;
      if (seen && !(g < open.g(m))) continue;
      if (!visible(np, points[i], map, cfg)) continue;
      if (seen) {
        open.update(m, points[i], n, g, open.h(m));
      } else {
        open.insert(m, points[i], n, g, distance(points[i], query.target));
        r.evaluated.push_back(points[i]);
      }
    }
  }
  r.evaluated_nodes = open.inserted();
  if (r.found) {
    r.waypoints = detail::reconstruct(open, map, target);
    r.length = path_length(r.waypoints);
  }
  r.elapsed_s = detail::seconds_since(t0);
  return r;
}

/// Focal Any-Angle A*: propagates only to the Candidate Vertices of the current node.
/// Only an open list is kept; Close marks a node so it is never current or a
/// candidate again.
inline PathResult fa_astar(const Query& query, const CvContext& ctx) {
  const auto t0 = detail::Clock::now();
  const GridMap& map = ctx.map;
  validate_query(query, map);
  if (query.start == query.target) {
    auto r = detail::trivial_result(Algorithm::fa_astar, query.start);
    r.w = ctx.w;
    r.elapsed_s = detail::seconds_since(t0);
    return r;
  }
  PathResult r;
  r.algorithm = Algorithm::fa_astar;
  r.w = ctx.w;

  OpenList open(map.lattice_size());
  const NodeId start = static_cast<NodeId>(map.lattice_index(query.start));
  const NodeId target = static_cast<NodeId>(map.lattice_index(query.target));
  open.insert(start, query.start, start, 0.0, distance(query.start, query.target));
  r.evaluated.push_back(query.start);
  auto closed = [&](const Point& p) { return open.is_closed(static_cast<NodeId>(map.lattice_index(p))); };

  std::optional<NodeId> current = start;
  while (current) {
    const NodeId n = *current;
    const Point np = map.lattice_point(n);
    const double gn = open.g(n);
    ++r.expansions;
    if (ctx.trace) *ctx.trace << "expand (" << np.x << ',' << np.y << ") g=" << gn << '\n';
    const CvResult cv = generate_cv(np, query.target, ctx, closed);
    if (cv.target_directly_visible) {
      open.insert(target, query.target, n, gn + distance(np, query.target), 0.0);
      r.evaluated.push_back(query.target);
      r.found = true;
      break;
    }
    if (cv.candidates.empty()) ++r.dead_ends;
    for (const Candidate& c : cv.candidates) {
      const NodeId m = static_cast<NodeId>(map.lattice_index(c.p));
      const double g = gn + distance(np, c.p);
      if (open.is_open(m)) {
        if (g < open.g(m)) open.update(m, c.p, n, g, open.h(m));
      } else if (open.status(m) == OpenList::Status::unseen) {
        open.insert(m, c.p, n, g, distance(c.p, query.target));
        r.evaluated.push_back(c.p);
      }
    }
    open.close(n);
    current = open.best();
  }
  r.evaluated_nodes = open.inserted();
  if (r.found) {
    r.waypoints = detail::reconstruct(open, map, target);
    r.length = path_length(r.waypoints);
  }
  r.elapsed_s = detail::seconds_since(t0);
  return r;
}

struct EscalationResult {
  PathResult result;            // first optimal run, else the shortest one found
  std::vector<double> attempted;
  bool matched = false;         // result length equals the reference
};

/// Runs FA-A* at w = 1.0, 1.0 + step, ... up to w_max until the reference length is met.
inline EscalationResult fa_astar_escalating(const Query& query, const GridMap& map, const Preprocessed& pre,
                                            const VisibilityConfig& vis, double reference_length,
                                            double w_max = 2.2, double w_step = 0.1) {
  if (!(w_step > 0.0)) throw std::invalid_argument("w_step must be positive");
  EscalationResult out;
  const int steps = static_cast<int>(std::floor((w_max - 1.0) / w_step + 1e-9));
  for (int k = 0; k <= steps; ++k) {
    const double w = std::round((1.0 + k * w_step) * 1e9) / 1e9;
    const CvContext ctx{map, pre, vis, w};
    PathResult r = fa_astar(query, ctx);
    out.attempted.push_back(w);
    const bool better = r.found && (!out.result.found || r.length < out.result.length);
    if (k == 0 || better) out.result = std::move(r);
    if (out.result.found && same_length(out.result.length, reference_length)) {
      out.matched = true;
      break;
    }
    if (query.start == query.target) break;
  }
  return out;
}

}  // namespace anyangle
