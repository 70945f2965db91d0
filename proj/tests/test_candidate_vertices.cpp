#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <vector>

#include "anyangle/candidate_vertices.hpp"
#include "anyangle/random.hpp"
#include "oracles.hpp"

using namespace anyangle;

namespace {

constexpr VisibilityConfig kStrict{false};

std::vector<Point> points_of(const CvResult& r) {
  std::vector<Point> out;
  for (const Candidate& c : r.candidates) out.push_back(c.p);
  return out;
}

// One interior cell [2,3]x[3,4] that the segment (0,0)-(4,6) passes through.
struct SceneS1 {
  GridMap map{50, 50, std::vector<Cell>{{2, 3}}};
  Preprocessed pre = preprocess(map, true, VertexMode::hull);
  CvContext ctx{map, pre, kStrict, 1.0};
};

}  // namespace

TEST(GenerateCv, EmptyMapSeesTarget) {
  const GridMap m(50, 50);
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  const CvResult r = generate_cv({0, 0}, {10, 7}, CvContext{m, pre, kStrict});
  EXPECT_TRUE(r.target_directly_visible);
  EXPECT_EQ(points_of(r), (std::vector<Point>{Point{10, 7}}));
  EXPECT_EQ(r.diag.blocking, 0u);
}

TEST(GenerateCv, SceneS1HandTrace) {
  const SceneS1 s;
  const CvResult r = generate_cv({0, 0}, {4, 6}, s.ctx);
  EXPECT_FALSE(r.target_directly_visible);
  EXPECT_EQ(r.diag.blocking, 1u);
  EXPECT_EQ(r.diag.v2, 4u);
  // (2,4) is the only corner left of the line, (3,3) beats (3,4) on the right, (2,3) lies on it
  ASSERT_TRUE(r.diag.va && r.diag.vb);
  EXPECT_EQ(*r.diag.va, (Point{2, 4}));
  EXPECT_EQ(*r.diag.vb, (Point{3, 3}));
  EXPECT_EQ(r.diag.v3, 4u);
  // (3,4) is hidden behind the cell; ordering is by angle, widest first
  const std::vector<Point> expected{{3, 3}, {2, 4}, {2, 3}};
  EXPECT_EQ(points_of(r), expected);
  for (const Point& p : points_of(r)) EXPECT_TRUE(oracle::sampled_visible({0, 0}, p, s.map));
  EXPECT_FALSE(oracle::sampled_visible({0, 0}, {3, 4}, s.map));
}

TEST(GenerateCv, ExclusionRemovesPreviousCandidates) {
  const SceneS1 s;
  const auto first = points_of(generate_cv({0, 0}, {4, 6}, s.ctx));
  const std::set<Point> excluded(first.begin(), first.end());
  const CvResult again = generate_cv({0, 0}, {4, 6}, s.ctx, [&](const Point& p) { return excluded.contains(p); });
  for (const Point& p : points_of(again)) EXPECT_FALSE(excluded.contains(p));
  EXPECT_TRUE(again.candidates.empty());
}

TEST(GenerateCv, TargetNeverCandidateWhenBlocked) {
  const SceneS1 s;
  for (const Point& p : points_of(generate_cv({0, 0}, {4, 6}, s.ctx))) EXPECT_NE(p, (Point{4, 6}));
}

TEST(GenerateCv, RejectsBadInput) {
  const SceneS1 s;
  EXPECT_THROW(generate_cv({1, 1}, {1, 1}, s.ctx), std::invalid_argument);
  CvContext low = s.ctx;
  low.w = 0.9;
  EXPECT_THROW(generate_cv({0, 0}, {4, 6}, low), std::invalid_argument);
}

TEST(GenerateCv, OneSidedWhenOtherSideIsOnTheBorder) {
  // a column standing on the bottom border: its lower corners are border points and dropped,
  // so every remaining vertex lies left of (0,0)-(10,1)
  const GridMap m(20, 20, std::vector<Cell>{{5, 0}, {5, 1}, {5, 2}, {5, 3}});
  const Preprocessed pre = preprocess(m, true, VertexMode::hull);
  const CvResult r = generate_cv({0, 0}, {10, 1}, CvContext{m, pre, kStrict});
  ASSERT_FALSE(r.target_directly_visible);
  EXPECT_TRUE(r.diag.one_sided);
  EXPECT_EQ(*r.diag.va, (Point{5, 4}));
  EXPECT_EQ(*r.diag.vb, (Point{6, 4}));
  // (6,4) is hidden behind the column's top cell
  EXPECT_EQ(points_of(r), (std::vector<Point>{Point{5, 4}}));
}

TEST(GenerateCv, Trace) {
  const SceneS1 s;
  std::ostringstream log;
  CvContext ctx = s.ctx;
  ctx.trace = &log;
  generate_cv({0, 0}, {4, 6}, ctx);
  const std::string text = log.str();
  for (const char* step : {"cv step1", "cv step2", "cv step3", "cv step4", "cv step5", "cv step6"}) {
    EXPECT_NE(text.find(step), std::string::npos) << step;
  }
}

TEST(GenerateCv, PropertiesOnRandomMaps) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GridMap m = generate_random(40, 40, 0.2, seed);
    for (VertexMode mode : {VertexMode::hull, VertexMode::convex_corners}) {
      const Preprocessed pre = preprocess(m, true, mode);
      std::set<Point> convex;
      for (const VertexRow& row : pre.convex.rows) convex.insert(row.p);
      Rng rng(seed + 100);
      for (int i = 0; i < 200; ++i) {
        const Point cur{double(rng.between(0, 40)), double(rng.between(0, 40))};
        const Point tgt{double(rng.between(0, 40)), double(rng.between(0, 40))};
        if (cur == tgt) continue;
        const CvContext ctx{m, pre, kStrict, 1.0};
        const CvResult r = generate_cv(cur, tgt, ctx);
        EXPECT_EQ(r.target_directly_visible, visible(cur, tgt, m, kStrict));
        if (r.target_directly_visible) {
          EXPECT_EQ(points_of(r), (std::vector<Point>{tgt}));
          continue;
        }
        for (const Candidate& c : r.candidates) {
          EXPECT_TRUE(convex.contains(c.p));
          EXPECT_TRUE(visible(cur, c.p, m, kStrict));
        }
        // deterministic, including order
        EXPECT_EQ(points_of(generate_cv(cur, tgt, ctx)), points_of(r));
        // a larger triangle never loses candidates
        if (!r.diag.collinear && !r.diag.empty_v2) {
          CvContext wide = ctx;
          for (double w : {1.3, 1.7, 2.2}) {
            wide.w = w;
            const auto grown = points_of(generate_cv(cur, tgt, wide));
            const std::set<Point> g(grown.begin(), grown.end());
            for (const Point& p : points_of(r)) EXPECT_TRUE(g.contains(p)) << "w=" << w;
            EXPECT_GE(generate_cv(cur, tgt, wide).diag.v3, r.diag.v3);
          }
        }
      }
    }
  }
}
