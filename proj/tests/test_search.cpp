#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "anyangle/search.hpp"
#include "oracles.hpp"

using namespace anyangle;

namespace {

constexpr VisibilityConfig kStrict{false};
constexpr VisibilityConfig kTouch{true};

struct Planners {
  const GridMap& map;
  Preprocessed hull = preprocess(map, true, VertexMode::hull);
  Preprocessed corners = preprocess(map, true, VertexMode::convex_corners);

  PathResult grid(const Query& q) const { return astar_grid(q, map); }
  PathResult theta(const Query& q) const { return theta_star(q, map); }
  PathResult vg(const Query& q) const { return astar_visgraph(q, map, corners, kStrict); }
  PathResult fa(const Query& q, const Preprocessed& pre, double w = 1.0) const {
    return fa_astar(q, CvContext{map, pre, kStrict, w});
  }
};

void expect_valid_path(const PathResult& r, const GridMap& m, const VisibilityConfig& cfg) {
  ASSERT_TRUE(r.found);
  EXPECT_NEAR(r.length, path_length(r.waypoints), 1e-9 * std::max(1.0, r.length));
  for (std::size_t i = 1; i < r.waypoints.size(); ++i) {
    EXPECT_TRUE(visible(r.waypoints[i - 1], r.waypoints[i], m, cfg)) << to_string(r.algorithm) << " leg " << i;
  }
}

}  // namespace

TEST(FaAstar, EmptyMapGoesStraight) {
  const GridMap m(50, 50);
  const Planners p{m};
  const PathResult r = p.fa({{0, 0}, {10, 7}}, p.hull);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.waypoints, (std::vector<Point>{{0, 0}, {10, 7}}));
  EXPECT_DOUBLE_EQ(r.length, std::sqrt(149.0));
  EXPECT_EQ(r.expansions, 1u);
  EXPECT_EQ(r.evaluated_nodes, 2u);
}

TEST(AllPlanners, StartEqualsTarget) {
  const GridMap m(10, 10);
  const Planners p{m};
  const Query q{{3, 3}, {3, 3}};
  for (const PathResult& r : {p.grid(q), p.theta(q), p.vg(q), p.fa(q, p.hull)}) {
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.waypoints, (std::vector<Point>{Point{3, 3}}));
    EXPECT_EQ(r.length, 0.0);
    EXPECT_EQ(r.expansions, 0u);
  }
}

TEST(AllPlanners, InvalidQueryThrows) {
  const GridMap m(10, 10);
  const Planners p{m};
  const Query q{{0, 0}, {11, 3}};
  EXPECT_THROW(p.grid(q), std::invalid_argument);
  EXPECT_THROW(p.theta(q), std::invalid_argument);
  EXPECT_THROW(p.vg(q), std::invalid_argument);
  EXPECT_THROW(p.fa(q, p.hull), std::invalid_argument);
}

TEST(AstarGrid, OctileLengths) {
  const GridMap m(10, 10);
  EXPECT_NEAR(astar_grid({{0, 0}, {4, 4}}, m).length, 4 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(astar_grid({{0, 0}, {4, 2}}, m).length, 2 * std::sqrt(2.0) + 2, 1e-12);
  EXPECT_NEAR(astar_grid({{0, 0}, {4, 2}}, m, false).length, 6.0, 1e-12);
}

TEST(AstarGrid, EvaluatesMoreThanSeventeenOnOpenMap) {
  // an any-angle planner reaches (10,7) from (0,0) in one step; grid A* has to fan out
  const PathResult r = astar_grid({{0, 0}, {10, 7}}, GridMap(50, 50));
  EXPECT_GT(r.evaluated_nodes, 17u);
}

TEST(AstarGrid, MovesAreUnitSteps) {
  const GridMap m = generate_random(20, 20, 0.1, 3);
  const PathResult r = astar_grid({{0, 0}, {20, 20}}, m);
  ASSERT_TRUE(r.found);
  for (std::size_t i = 1; i < r.waypoints.size(); ++i) {
    const double dx = std::abs(r.waypoints[i].x - r.waypoints[i - 1].x);
    const double dy = std::abs(r.waypoints[i].y - r.waypoints[i - 1].y);
    EXPECT_LE(dx, 1.0);
    EXPECT_LE(dy, 1.0);
  }
}

TEST(ThetaStar, EmptyMapShortcut) {
  const PathResult r = theta_star({{0, 0}, {4, 2}}, GridMap(10, 10));
  EXPECT_NEAR(r.length, std::sqrt(20.0), 1e-12);
  EXPECT_EQ(r.waypoints.size(), 2u);
}

TEST(AstarVisgraph, EmptyMapEvaluatesTwo) {
  const GridMap m(50, 50);
  const Planners p{m};
  const PathResult r = p.vg({{0, 0}, {50, 50}});
  EXPECT_EQ(r.evaluated_nodes, 2u);
  EXPECT_NEAR(r.length, 50 * std::sqrt(2.0), 1e-9);
}

TEST(AstarVisgraph, SingleCellBendsAtOneCorner) {
  const GridMap m(20, 20, std::vector<Cell>{{5, 6}});
  const Preprocessed pre = preprocess(m, false, VertexMode::convex_corners);
  for (const Query q : {Query{{0, 0}, {12, 14}}, Query{{2, 3}, {9, 10}}, Query{{10, 2}, {1, 12}}}) {
    ASSERT_FALSE(visible(q.start, q.target, m, kTouch));
    double best = std::numeric_limits<double>::infinity();
    for (const Point c : {Point{5, 6}, Point{6, 6}, Point{6, 7}, Point{5, 7}}) {
      if (visible(q.start, c, m, kTouch) && visible(c, q.target, m, kTouch)) {
        best = std::min(best, distance(q.start, c) + distance(c, q.target));
      }
    }
    const PathResult r = astar_visgraph(q, m, pre, kTouch);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.waypoints.size(), 3u);
    EXPECT_NEAR(r.length, best, 1e-9 * best);
  }
}

TEST(AstarVisgraph, MatchesExhaustiveDijkstra) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GridMap m = generate_random(10, 10, 0.2, seed);
    const Planners p{m};
    const Query q{{0, 0}, {10, 10}};
    const double oracle_len = oracle::lattice_shortest_path(m, q.start, q.target, kStrict);
    const PathResult r = p.vg(q);
    EXPECT_EQ(r.found, std::isfinite(oracle_len));
    if (r.found) EXPECT_NEAR(r.length, oracle_len, 1e-9 * oracle_len) << seed;
  }
}

TEST(FaAstar, SceneS1MatchesVisgraph) {
  const GridMap m(50, 50, std::vector<Cell>{{2, 3}});
  const Planners p{m};
  const Query q{{0, 0}, {4, 6}};
  const PathResult fa = p.fa(q, p.hull);
  const PathResult vg = p.vg(q);
  ASSERT_TRUE(fa.found);
  EXPECT_NEAR(fa.length, vg.length, 1e-9 * vg.length);
  expect_valid_path(fa, m, kStrict);
}

TEST(FaAstar, TraceHasOneExpandLinePerExpansion) {
  const GridMap m = generate_random(30, 30, 0.2, 2);
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  std::ostringstream log;
  CvContext ctx{m, pre, kStrict};
  ctx.trace = &log;
  const PathResult r = fa_astar({{0, 0}, {30, 30}}, ctx);
  std::size_t lines = 0;
  std::istringstream in(log.str());
  for (std::string line; std::getline(in, line);) lines += line.rfind("expand ", 0) == 0;
  EXPECT_EQ(lines, r.expansions);
}

TEST(Planners, InvariantsOnSeededMaps) {
  int found_runs = 0;
  for (double density : {0.1, 0.2, 0.3}) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const GridMap m = generate_random(20, 20, density, seed);
      const Planners p{m};
      Rng rng(seed);
      std::vector<Query> queries{{{0, 0}, {20, 20}}};
      for (int i = 0; i < 3; ++i) {
        queries.push_back({{double(rng.between(0, 20)), double(rng.between(0, 20))},
                           {double(rng.between(0, 20)), double(rng.between(0, 20))}});
      }
      for (const Query& q : queries) {
        const PathResult grid = p.grid(q);
        const PathResult theta = p.theta(q);
        const PathResult vg = p.vg(q);
        const PathResult fa_hull = p.fa(q, p.hull);
        const PathResult fa_corner = p.fa(q, p.corners);
        // path existence does not depend on the planner
        EXPECT_EQ(grid.found, vg.found);
        EXPECT_EQ(theta.found, vg.found);
        EXPECT_EQ(fa_corner.found, vg.found);
        if (!vg.found) continue;
        ++found_runs;
        const double tol = 1e-9 * std::max(1.0, vg.length);
        EXPECT_LE(theta.length, grid.length + tol);
        EXPECT_LE(vg.length, theta.length + tol);
        EXPECT_LE(vg.length, grid.length + tol);
        EXPECT_LE(vg.length, fa_corner.length + tol);
        if (fa_hull.found) EXPECT_LE(vg.length, fa_hull.length + tol);
        expect_valid_path(theta, m, kStrict);
        expect_valid_path(vg, m, kStrict);
        expect_valid_path(fa_corner, m, kStrict);
        // counts are deterministic
        const PathResult again = p.fa(q, p.corners);
        EXPECT_EQ(again.evaluated_nodes, fa_corner.evaluated_nodes);
        EXPECT_EQ(again.expansions, fa_corner.expansions);
        EXPECT_EQ(again.waypoints, fa_corner.waypoints);
      }
    }
  }
  EXPECT_GT(found_runs, 40);
}

TEST(ThetaStar, SuboptimalSomewhereInCorpus) {
  bool witnessed = false;
  for (std::uint64_t seed = 1; seed <= 30 && !witnessed; ++seed) {
    const GridMap m = generate_random(50, 50, 0.2, seed);
    const Planners p{m};
    const Query q{{0, 0}, {50, 50}};
    const PathResult vg = p.vg(q);
    if (!vg.found) continue;
    witnessed = p.theta(q).length > vg.length * (1 + 1e-9);
  }
  EXPECT_TRUE(witnessed);
}

TEST(Escalation, OptimalAtUnitScaleStopsAfterOneAttempt) {
  const GridMap m(50, 50, std::vector<Cell>{{2, 3}});
  const Planners p{m};
  const Query q{{0, 0}, {4, 6}};
  const EscalationResult e = fa_astar_escalating(q, m, p.hull, kStrict, p.vg(q).length);
  EXPECT_TRUE(e.matched);
  EXPECT_EQ(e.attempted, std::vector<double>{1.0});
  EXPECT_EQ(e.result.w, 1.0);
}

TEST(Escalation, StartEqualsTargetIsImmediate) {
  const GridMap m(10, 10);
  const Planners p{m};
  const EscalationResult e = fa_astar_escalating({{4, 4}, {4, 4}}, m, p.hull, kStrict, 0.0);
  EXPECT_TRUE(e.matched);
  EXPECT_EQ(e.attempted.size(), 1u);
  EXPECT_EQ(e.result.length, 0.0);
}

TEST(Escalation, UnreachableReferenceTriesEveryScale) {
  const GridMap m = generate_random(30, 30, 0.2, 5);
  const Planners p{m};
  const Query q{{0, 0}, {30, 30}};
  const PathResult vg = p.vg(q);
  ASSERT_TRUE(vg.found);
  const EscalationResult e = fa_astar_escalating(q, m, p.hull, kStrict, vg.length * 0.5);
  EXPECT_FALSE(e.matched);
  ASSERT_EQ(e.attempted.size(), 13u);
  EXPECT_DOUBLE_EQ(e.attempted.front(), 1.0);
  EXPECT_DOUBLE_EQ(e.attempted.back(), 2.2);
  EXPECT_THROW(fa_astar_escalating(q, m, p.hull, kStrict, 1.0, 2.2, 0.0), std::invalid_argument);
}

TEST(Algorithm, Names) {
  for (Algorithm a : {Algorithm::astar_grid, Algorithm::theta_star, Algorithm::astar_visgraph, Algorithm::fa_astar}) {
    EXPECT_EQ(algorithm_from_string(to_string(a)), a);
  }
  EXPECT_THROW(algorithm_from_string("dijkstra"), std::invalid_argument);
}
