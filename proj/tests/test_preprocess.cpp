#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "anyangle/preprocess.hpp"
#include "oracles.hpp"

using namespace anyangle;

namespace {

GridMap with_cells(int w, int h, std::vector<Cell> cells) { return GridMap(w, h, cells); }

std::set<Point> convex_points(const VertexTable& t, int cluster) {
  std::set<Point> out;
  for (const VertexRow& r : t.rows_of(cluster)) out.insert(r.p);
  return out;
}

std::set<Point> pts(std::initializer_list<Point> l) { return std::set<Point>(l); }

// Lattice points with exactly one incident cluster cell, or two diagonal ones.
std::set<Point> convex_corner_oracle(const GridMap& map, const ClusterSet& cs, int cluster, bool diagonal_pairs) {
  std::set<Point> out;
  for (int y = 1; y < map.height(); ++y) {
    for (int x = 1; x < map.width(); ++x) {
      const bool ll = cs.cluster_at(x - 1, y - 1) == cluster;
      const bool lr = cs.cluster_at(x, y - 1) == cluster;
      const bool ul = cs.cluster_at(x - 1, y) == cluster;
      const bool ur = cs.cluster_at(x, y) == cluster;
      const int n = ll + lr + ul + ur;
      if (n == 1 || (diagonal_pairs && n == 2 && ((ll && ur) || (lr && ul)))) out.insert({double(x), double(y)});
    }
  }
  return out;
}

}  // namespace

TEST(Clustering, EdgeNeighboursAlwaysMerge) {
  const GridMap m = with_cells(5, 5, {{0, 0}, {0, 1}});
  EXPECT_EQ(cluster_obstacles(m, true).size(), 1u);
  EXPECT_EQ(cluster_obstacles(m, false).size(), 1u);
}

TEST(Clustering, DiagonalNeighboursMergeOnlyWithoutDiagonalMoves) {
  const GridMap m = with_cells(5, 5, {{0, 0}, {1, 1}});
  EXPECT_EQ(cluster_obstacles(m, true).size(), 2u);
  EXPECT_EQ(cluster_obstacles(m, false).size(), 1u);
}

TEST(Clustering, DistanceTwoNeverMerges) {
  const GridMap m = with_cells(5, 5, {{0, 0}, {2, 0}});
  EXPECT_EQ(cluster_obstacles(m, true).size(), 2u);
  EXPECT_EQ(cluster_obstacles(m, false).size(), 2u);
}

TEST(Clustering, MatchesFloodFillOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GridMap m = generate_random(30, 30, 0.25, seed);
    for (bool diag : {true, false}) {
      const ClusterSet cs = cluster_obstacles(m, diag);
      const auto expected = oracle::flood_clusters(m, diag);
      std::set<std::set<Cell>> got;
      for (const auto& cells : cs.clusters) got.insert(std::set<Cell>(cells.begin(), cells.end()));
      EXPECT_EQ(got, std::set<std::set<Cell>>(expected.begin(), expected.end())) << seed << ' ' << diag;
    }
  }
}

TEST(Clustering, PartitionsOccupiedCells) {
  const GridMap m = generate_random(40, 40, 0.3, 2);
  const ClusterSet cs = cluster_obstacles(m, true);
  std::size_t total = 0;
  for (std::size_t c = 0; c < cs.size(); ++c) {
    total += cs.clusters[c].size();
    for (const Cell& cell : cs.clusters[c]) EXPECT_EQ(cs.cluster_at(cell.x, cell.y), static_cast<int>(c));
  }
  EXPECT_EQ(total, m.occupied_count());
}

TEST(Clustering, IsolatedCellAddsOneCluster) {
  GridMap m = with_cells(20, 20, {{2, 2}, {3, 2}, {10, 10}});
  const auto before = cluster_obstacles(m, true).size();
  m.set({16, 4}, true);
  EXPECT_EQ(cluster_obstacles(m, true).size(), before + 1);
}

TEST(HullVertices, SingleInteriorCell) {
  const GridMap m = with_cells(50, 50, {{2, 2}});
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  EXPECT_EQ(convex_points(pre.convex, 0), pts({{2, 2}, {3, 2}, {3, 3}, {2, 3}}));
  EXPECT_EQ(pre.all.size(), 4u);
}

TEST(HullVertices, CornerCellKeepsOnlyInteriorPoint) {
  const GridMap m = with_cells(50, 50, {{0, 0}});
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  EXPECT_EQ(convex_points(pre.convex, 0), pts({{1, 1}}));
  EXPECT_EQ(pre.all.size(), 4u);
}

TEST(HullVertices, LTromino) {
  const GridMap m = with_cells(20, 20, {{5, 5}, {6, 5}, {5, 6}});
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  std::vector<Point> corners;
  for (const VertexRow& r : pre.all.rows) corners.push_back(r.p);
  EXPECT_EQ(corners.size(), 8u);
  const auto hull = convex_points(pre.convex, 0);
  EXPECT_EQ(hull.size(), 5u);
  EXPECT_EQ(hull, oracle::brute_force_hull(corners));
  EXPECT_FALSE(hull.contains(Point{6, 6}));
}

TEST(ConvexCorners, SingleCellAndBlock) {
  const Preprocessed one = preprocess(with_cells(20, 20, {{4, 4}}), true, VertexMode::convex_corners);
  EXPECT_EQ(convex_points(one.convex, 0), pts({{4, 4}, {5, 4}, {5, 5}, {4, 5}}));
  const Preprocessed block =
      preprocess(with_cells(20, 20, {{4, 4}, {5, 4}, {4, 5}, {5, 5}}), true, VertexMode::convex_corners);
  EXPECT_EQ(convex_points(block.convex, 0), pts({{4, 4}, {6, 4}, {6, 6}, {4, 6}}));
}

TEST(ConvexCorners, LTrominoExcludesReflexCorner) {
  const GridMap m = with_cells(20, 20, {{5, 5}, {6, 5}, {5, 6}});
  const Preprocessed pre = preprocess(m, true, VertexMode::convex_corners);
  const auto got = convex_points(pre.convex, 0);
  EXPECT_EQ(got.size(), 5u);
  EXPECT_EQ(got, convex_corner_oracle(m, pre.clusters, 0, true));
  EXPECT_FALSE(got.contains(Point{6, 6}));
}

TEST(ConvexCorners, DiagonalPairInsideOneCluster) {
  // A ring whose closing link is a diagonal touch at (3,3): with diagonal moves allowed the
  // point is a double corner of one cluster.
  const GridMap m = with_cells(10, 10, {{2, 2}, {2, 1}, {3, 1}, {4, 1}, {4, 2}, {4, 3}, {3, 3}});
  const Preprocessed diag = preprocess(m, true, VertexMode::convex_corners);
  ASSERT_EQ(diag.clusters.size(), 1u);
  EXPECT_TRUE(convex_points(diag.convex, 0).contains(Point{3, 3}));
  EXPECT_EQ(convex_points(diag.convex, 0), convex_corner_oracle(m, diag.clusters, 0, true));
  const Preprocessed strict = preprocess(m, false, VertexMode::convex_corners);
  EXPECT_FALSE(convex_points(strict.convex, 0).contains(Point{3, 3}));
}

TEST(ConvexCorners, MatchOracleOnRandomMaps) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridMap m = generate_random(30, 30, 0.3, seed);
    for (bool diag : {true, false}) {
      const Preprocessed pre = preprocess(m, diag, VertexMode::convex_corners);
      for (std::size_t c = 0; c < pre.clusters.size(); ++c) {
        const int id = static_cast<int>(c);
        ASSERT_EQ(convex_points(pre.convex, id), convex_corner_oracle(m, pre.clusters, id, diag));
      }
    }
  }
}

TEST(VertexTables, Invariants) {
  for (VertexMode mode : {VertexMode::hull, VertexMode::convex_corners}) {
    const GridMap m = generate_random(40, 40, 0.2, 7);
    const Preprocessed pre = preprocess(m, true, mode);
    ASSERT_EQ(pre.all.cluster_begin.size(), pre.clusters.size() + 1);
    ASSERT_EQ(pre.convex.cluster_begin.size(), pre.clusters.size() + 1);
    for (std::size_t c = 0; c < pre.clusters.size(); ++c) {
      const int id = static_cast<int>(c);
      std::set<Point> all;
      for (const VertexRow& r : pre.all.rows_of(id)) {
        EXPECT_EQ(r.cluster_index, id);
        EXPECT_TRUE(all.insert(r.p).second) << "duplicate V_all point";
        // the owner is the lowest row-major cell of the cluster touching the point
        int owner = -1;
        for (const Cell& cell : pre.clusters.clusters[c]) {
          if (r.p.x >= cell.x && r.p.x <= cell.x + 1 && r.p.y >= cell.y && r.p.y <= cell.y + 1) {
            const int idx = m.cell_index(cell.x, cell.y);
            if (owner < 0 || idx < owner) owner = idx;
          }
        }
        EXPECT_EQ(r.obstacle_index, owner);
      }
      std::set<Point> conv;
      for (const VertexRow& r : pre.convex.rows_of(id)) {
        EXPECT_TRUE(conv.insert(r.p).second) << "duplicate V_convex point";
        EXPECT_TRUE(all.contains(r.p));
        EXPECT_FALSE(r.p.x == 0 || r.p.y == 0 || r.p.x == 40 || r.p.y == 40);
        EXPECT_EQ(std::find(pre.all.rows.begin(), pre.all.rows.end(), r) != pre.all.rows.end(), true);
      }
    }
  }
}

TEST(VertexTables, HullSubsetOfConvexCorners) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridMap m = generate_clustered(50, 50, 0.3, 6, seed + 1);
    const Preprocessed hull = preprocess(m, true, VertexMode::hull);
    const Preprocessed corners = preprocess(m, true, VertexMode::convex_corners);
    for (std::size_t c = 0; c < hull.clusters.size(); ++c) {
      const auto h = convex_points(hull.convex, static_cast<int>(c));
      const auto k = convex_points(corners.convex, static_cast<int>(c));
      EXPECT_TRUE(std::includes(k.begin(), k.end(), h.begin(), h.end())) << "cluster " << c;
    }
  }
}

TEST(Preprocess, PureFunctionOfMap) {
  const GridMap m = generate_random(30, 30, 0.2, 12);
  const Preprocessed a = preprocess(m, true, VertexMode::hull);
  const Preprocessed b = preprocess(m, true, VertexMode::hull);
  EXPECT_EQ(a.all, b.all);
  EXPECT_EQ(a.convex, b.convex);
  EXPECT_EQ(a.clusters.cluster_of, b.clusters.cluster_of);
}

TEST(Preprocess, InvocationCounter) {
  const auto before = preprocess_invocations().load();
  preprocess(GridMap(5, 5), true, VertexMode::hull);
  EXPECT_EQ(preprocess_invocations().load(), before + 1);
}

TEST(Preprocess, JsonDumpRows) {
  const Preprocessed pre = preprocess(with_cells(10, 10, {{2, 2}}), true, VertexMode::hull);
  const auto j = to_json(pre.convex);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0], (nlohmann::json{2.0, 2.0, 22, 0}));
}

TEST(VertexMode, Parsing) {
  EXPECT_EQ(vertex_mode_from_string("hull"), VertexMode::hull);
  EXPECT_EQ(vertex_mode_from_string("convex_corners"), VertexMode::convex_corners);
  EXPECT_THROW(vertex_mode_from_string("round"), std::invalid_argument);
}
