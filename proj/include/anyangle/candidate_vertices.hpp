#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "anyangle/geometry.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/preprocess.hpp"
#include "anyangle/visibility.hpp"

namespace anyangle {

/// Everything candidate generation needs besides the current node and target.
struct CvContext {
  const GridMap& map;
  const Preprocessed& pre;
  VisibilityConfig vis{};
  double w = 1.0;                 // focal triangle scale factor, >= 1
  std::ostream* trace = nullptr;  // one line per step when set
};

struct Candidate {
  Point p;
  int cluster = -1;  // -1 for the target itself
  double alpha = 0.0;
};

struct CvDiagnostics {
  std::size_t blocking = 0;  // |B|
  std::size_t v2 = 0;
  std::size_t v3 = 0;
  std::size_t cv = 0;
  std::optional<Point> va;
  std::optional<Point> vb;
  bool one_sided = false;       // every off-line V2 vertex on one side
  bool collinear = false;       // current, va, vb collinear: no triangle
  bool acute_fallback = false;  // a side had no acute vertex; least obtuse used
  bool empty_v2 = false;        // blocking clusters but no usable vertex
};

struct CvResult {
  std::vector<Candidate> candidates;
  bool target_directly_visible = false;
  CvDiagnostics diag;
};

namespace detail {

struct AngledVertex {
  Point p;
  int cluster;
  double alpha;
  double dist;
};

// Larger alpha first; ties towards the current node, then by coordinates.
inline bool wider(const AngledVertex& a, const AngledVertex& b) {
  if (a.alpha != b.alpha) return a.alpha > b.alpha;
  if (a.dist != b.dist) return a.dist < b.dist;
  return a.p < b.p;
}

constexpr double kRightAngle = std::numbers::pi / 2.0;

/// Largest acute angle on one side, or the least obtuse one when nothing is acute.
inline const AngledVertex& side_pick(const std::vector<AngledVertex>& side, bool& fallback) {
  const AngledVertex* best_acute = nullptr;
  const AngledVertex* least_obtuse = nullptr;
  for (const AngledVertex& v : side) {
    if (v.alpha < kRightAngle) {
      if (best_acute == nullptr || wider(v, *best_acute)) best_acute = &v;
    } else if (least_obtuse == nullptr || wider(*least_obtuse, v)) {
      least_obtuse = &v;
    }
  }
  if (best_acute != nullptr) return *best_acute;
  fallback = true;
  return *least_obtuse;
}

}  // namespace detail

/// Candidate Vertices of `current` towards `target`. Points for which is_excluded(p)
/// holds (closed nodes) never appear in the result.
template <class Excluded>
CvResult generate_cv(const Point& current, const Point& target, const CvContext& ctx, Excluded&& is_excluded) {
  if (current == target) throw std::invalid_argument("generate_cv: current equals target");
  if (!(ctx.w >= 1.0)) throw std::invalid_argument("generate_cv: scale factor must be >= 1");
  const Preprocessed& pre = ctx.pre;
  CvResult out;

  // (1) clusters blocking the straight line
  const std::vector<int> blocking = blocking_clusters(current, target, ctx.map, pre.clusters, ctx.vis);
  out.diag.blocking = blocking.size();
  if (ctx.trace) *ctx.trace << "cv step1 blocking_clusters=" << blocking.size() << '\n';
  if (blocking.empty()) {
    out.target_directly_visible = true;
    out.candidates.push_back({target, -1, 0.0});
    out.diag.cv = 1;
    return out;
  }

  // (2) V2 and (3) side classification
  std::vector<detail::AngledVertex> left;
  std::vector<detail::AngledVertex> right;
  std::vector<detail::AngledVertex> on_line;
  for (int c : blocking) {
    for (const VertexRow& r : pre.convex.rows_of(c)) {
      if (r.p == current) continue;
      const detail::AngledVertex v{r.p, c, angle_alpha(current, target, r.p), distance(current, r.p)};
      switch (classify_side(current, target, r.p)) {
        case Side::left: left.push_back(v); break;
        case Side::right: right.push_back(v); break;
        case Side::on_line: on_line.push_back(v); break;
      }
    }
  }
  out.diag.v2 = left.size() + right.size() + on_line.size();
  if (ctx.trace) {
    *ctx.trace << "cv step2 v2=" << out.diag.v2 << '\n'
               << "cv step3 left=" << left.size() << " right=" << right.size() << " on_line=" << on_line.size()
               << '\n';
  }
  if (out.diag.v2 == 0) {
    out.diag.empty_v2 = true;
    return out;
  }

  std::vector<int> qualifying;  // clusters contributing all their V_convex rows to V3
  std::vector<detail::AngledVertex> v3_extra(on_line.begin(), on_line.end());

  if (!left.empty() || !right.empty()) {
    detail::AngledVertex va{};
    detail::AngledVertex vb{};
    if (!left.empty() && !right.empty()) {
      va = detail::side_pick(left, out.diag.acute_fallback);
      vb = detail::side_pick(right, out.diag.acute_fallback);
    } else {
      out.diag.one_sided = true;
      const auto& side = left.empty() ? right : left;
      std::vector<detail::AngledVertex> acute;
      for (const auto& v : side) {
        if (v.alpha < detail::kRightAngle) acute.push_back(v);
      }
      if (acute.empty()) {
        va = vb = detail::side_pick(side, out.diag.acute_fallback);
      } else {
        std::sort(acute.begin(), acute.end(), detail::wider);
        va = acute.front();
        vb = acute.back();
      }
    }
    out.diag.va = va.p;
    out.diag.vb = vb.p;

    out.diag.collinear = va.p == vb.p || classify_side(current, va.p, vb.p) == Side::on_line;
    if (out.diag.collinear) {
      // (3b) no triangle: V1 vertices on the closed segment [va, vb]
      const Box seg{std::min(va.p.x, vb.p.x), std::min(va.p.y, vb.p.y), std::max(va.p.x, vb.p.x),
                    std::max(va.p.y, vb.p.y)};
      for (std::size_t c = 0; c < pre.bounds.size(); ++c) {
        if (!pre.bounds[c].overlaps(seg)) continue;
        for (const VertexRow& r : pre.convex.rows_of(static_cast<int>(c))) {
          if (on_segment(r.p, va.p, vb.p, 1e-9)) {
            v3_extra.push_back({r.p, static_cast<int>(c), 0.0, 0.0});
          }
        }
      }
      if (ctx.trace) *ctx.trace << "cv step4 collinear va=vb segment\n";
    } else {
      // (4) focal triangle, (5) clusters inside or tangential to it
      const Triangle t = enlarge_triangle(current, va.p, vb.p, ctx.w);
      std::vector<int> touched;
      touching_clusters(t.a, t.b, ctx.map, pre.clusters, touched);
      touching_clusters(t.b, t.c, ctx.map, pre.clusters, touched);
      touching_clusters(t.c, t.a, ctx.map, pre.clusters, touched);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

      const Box tb{std::min({t.a.x, t.b.x, t.c.x}), std::min({t.a.y, t.b.y, t.c.y}),
                   std::max({t.a.x, t.b.x, t.c.x}), std::max({t.a.y, t.b.y, t.c.y})};
      for (std::size_t c = 0; c < pre.bounds.size(); ++c) {
        const int id = static_cast<int>(c);
        if (std::binary_search(touched.begin(), touched.end(), id)) {
          qualifying.push_back(id);
          continue;
        }
        if (!pre.bounds[c].overlaps(tb)) continue;
        const auto rows = pre.all.rows_of(id);
        if (std::any_of(rows.begin(), rows.end(), [&](const VertexRow& r) { return point_in_triangle(r.p, t); })) {
          qualifying.push_back(id);
        }
      }
      if (ctx.trace) {
        *ctx.trace << "cv step4 triangle w=" << ctx.w << " va'=(" << t.b.x << ',' << t.b.y << ") vb'=(" << t.c.x
                   << ',' << t.c.y << ")\n"
                   << "cv step5 clusters_in_triangle=" << qualifying.size() << '\n';
      }
    }
  }

  // V3, deduplicated by position (pinch points belong to two clusters)
  std::vector<detail::AngledVertex> v3 = std::move(v3_extra);
  for (int c : qualifying) {
    for (const VertexRow& r : pre.convex.rows_of(c)) v3.push_back({r.p, c, 0.0, 0.0});
  }
  std::sort(v3.begin(), v3.end(), [](const auto& a, const auto& b) {
    return a.p < b.p || (a.p == b.p && a.cluster < b.cluster);
  });
  v3.erase(std::unique(v3.begin(), v3.end(), [](const auto& a, const auto& b) { return a.p == b.p; }), v3.end());
  std::erase_if(v3, [&](const auto& v) { return v.p == current; });
  out.diag.v3 = v3.size();

  // (6) visibility filter
  std::vector<detail::AngledVertex> cv;
  for (auto& v : v3) {
    if (is_excluded(v.p)) continue;
    if (!visible(current, v.p, ctx.map, ctx.vis)) continue;
    v.alpha = angle_alpha(current, target, v.p);
    v.dist = distance(current, v.p);
    cv.push_back(v);
  }
  std::sort(cv.begin(), cv.end(), detail::wider);
  out.candidates.reserve(cv.size());
  for (const auto& v : cv) out.candidates.push_back({v.p, v.cluster, v.alpha});
  out.diag.cv = out.candidates.size();
  if (ctx.trace) *ctx.trace << "cv step6 v3=" << out.diag.v3 << " cv=" << out.diag.cv << '\n';
  return out;
}

inline CvResult generate_cv(const Point& current, const Point& target, const CvContext& ctx) {
  return generate_cv(current, target, ctx, [](const Point&) { return false; });
}

}  // namespace anyangle
