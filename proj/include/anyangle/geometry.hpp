#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace anyangle {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = std::hash<double>{}(p.x);
    return h ^ (std::hash<double>{}(p.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point& a, const Point& b) { return norm(b - a); }

/// Orientation of c relative to the directed line a->b (twice the signed area).
inline double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

inline bool is_integral(double v) { return std::floor(v) == v; }

/// Implicit line Ax + By + C = 0 through p and q.
struct LineCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(const Point& v) const { return a * v.x + b * v.y + c; }
};

inline LineCoeffs line_through(const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("line_through: p and q coincide");
  return {p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y};
}

/// Signed side value D of v relative to the line p->q. Positive means left of p->q.
inline double side_of_line(const Point& p, const Point& q, const Point& v) {
  return line_through(p, q).eval(v);
}

/// |D| below this classifies a vertex as on the line through p and q.
inline double on_line_tolerance(const Point& p, const Point& q) {
  return 1e-9 * std::max(1.0, distance(p, q));
}

enum class Side { left, right, on_line };

inline Side classify_side(const Point& p, const Point& q, const Point& v) {
  const double d = side_of_line(p, q, v);
  const double tol = on_line_tolerance(p, q);
  if (d > tol) return Side::left;
  if (d < -tol) return Side::right;
  return Side::on_line;
}

/// Angle at p between p->q and p->v, in [0, pi].
inline double angle_alpha(const Point& p, const Point& q, const Point& v) {
  const Point pq = q - p;
  const Point pv = v - p;
  const double denom = norm(pq) * norm(pv);
  if (denom == 0.0) throw std::invalid_argument("angle_alpha: zero-length vector");
  const double c = std::clamp(dot(pq, pv) / denom, -1.0, 1.0);
  return std::acos(c);
}

/// Closed-segment membership for a point already known to be (nearly) collinear.
inline bool on_segment(const Point& v, const Point& a, const Point& b, double tol = 0.0) {
  if (std::abs(orient(a, b, v)) > tol * std::max(1.0, distance(a, b))) return false;
  return v.x >= std::min(a.x, b.x) - tol && v.x <= std::max(a.x, b.x) + tol &&
         v.y >= std::min(a.y, b.y) - tol && v.y <= std::max(a.y, b.y) + tol;
}

enum class Containment { outside, boundary, inside };

// Winding-number point-in-polygon with explicit boundary detection
// (Hormann & Agathos). Works for any simple or self-intersecting polygon.
inline Containment point_in_polygon(const Point& r, std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n == 0) return Containment::outside;
  if (poly[0] == r) return Containment::boundary;
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& pi = poly[i];
    const Point& pn = poly[(i + 1) % n];
    if (pn.y == r.y) {
      if (pn.x == r.x) return Containment::boundary;
      if (pi.y == r.y && ((pn.x > r.x) == (pi.x < r.x))) return Containment::boundary;
    }
    if ((pi.y < r.y) != (pn.y < r.y)) {
      const int dir = pn.y > pi.y ? 1 : -1;
      if (pi.x >= r.x) {
        if (pn.x > r.x) {
          winding += dir;
        } else {
          const double det = (pi.x - r.x) * (pn.y - r.y) - (pn.x - r.x) * (pi.y - r.y);
          if (det == 0.0) return Containment::boundary;
          if ((det > 0.0) == (pn.y > pi.y)) winding += dir;
        }
      } else if (pn.x > r.x) {
        const double det = (pi.x - r.x) * (pn.y - r.y) - (pn.x - r.x) * (pi.y - r.y);
        if (det == 0.0) return Containment::boundary;
        if ((det > 0.0) == (pn.y > pi.y)) winding += dir;
      }
    }
  }
  return winding != 0 ? Containment::inside : Containment::outside;
}

struct Triangle {
  Point a;
  Point b;
  Point c;

  Point barycenter() const { return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0}; }
  double signed_area2() const { return orient(a, b, c); }
  bool degenerate() const { return signed_area2() == 0.0; }
};

inline bool point_in_triangle(const Point& v, const Triangle& t, bool boundary_counts = true) {
  if (t.degenerate()) {
    if (!boundary_counts) return false;
    // Collinear vertices: containment reduces to the segment spanning the extremes.
    Point lo = t.a;
    Point hi = t.a;
    for (const Point& p : {t.b, t.c}) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    return on_segment(v, lo, hi);
  }
  const Point poly[3] = {t.a, t.b, t.c};
  const Containment c = point_in_polygon(v, poly);
  return c == Containment::inside || (boundary_counts && c == Containment::boundary);
}

/// Scales the two non-current vertices away from the barycenter by w.
inline Triangle enlarge_triangle(const Point& current, const Point& va, const Point& vb, double w) {
  if (!(w >= 1.0)) throw std::invalid_argument("enlarge_triangle: scale factor must be >= 1");
  if (w == 1.0) return {current, va, vb};  // o + (v - o) can be off by an ulp
  const Point o = Triangle{current, va, vb}.barycenter();
  return {current, o + (va - o) * w, o + (vb - o) * w};
}

namespace detail {

inline void quickhull_side(std::span<const Point> pts, const Point& a, const Point& b,
                           std::vector<Point>& out) {
  // Emits hull vertices strictly right of a->b, in CCW order from a towards b (exclusive).
  double best = 0.0;
  const Point* far = nullptr;
  // Ties lie on one line parallel to ab; only its extreme points are hull vertices.
  auto along = [&](const Point& p) { return (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y); };
  for (const Point& p : pts) {
    const double d = orient(b, a, p);
    if (d > best || (far != nullptr && d == best && along(p) > along(*far))) {
      best = d;
      far = &p;
    }
  }
  if (far == nullptr) return;
  const Point f = *far;
  std::vector<Point> right_af;
  std::vector<Point> right_fb;
  for (const Point& p : pts) {
    if (orient(f, a, p) > 0.0) {
      right_af.push_back(p);
    } else if (orient(b, f, p) > 0.0) {
      right_fb.push_back(p);
    }
  }
  quickhull_side(right_af, a, f, out);
  out.push_back(f);
  quickhull_side(right_fb, f, b, out);
}

}  // namespace detail

/// Quickhull. Counter-clockwise, starting at the lowest-y (then lowest-x) vertex.
/// Collinear boundary points are dropped.
inline std::vector<Point> convex_hull(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
  auto by_xy = [](const Point& l, const Point& r) { return l < r; };
  const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end(), by_xy);
  const Point lo = *lo_it;
  const Point hi = *hi_it;
  if (lo == hi) return {lo};

  std::vector<Point> upper;  // right of hi->lo
  std::vector<Point> lower;  // right of lo->hi
  for (const Point& p : points) {
    const double d = orient(lo, hi, p);
    if (d > 0.0) {
      upper.push_back(p);
    } else if (d < 0.0) {
      lower.push_back(p);
    }
  }
  std::vector<Point> hull;
  hull.push_back(lo);
  detail::quickhull_side(lower, lo, hi, hull);
  hull.push_back(hi);
  detail::quickhull_side(upper, hi, lo, hull);

  auto anchor = std::min_element(hull.begin(), hull.end(), [](const Point& l, const Point& r) {
    return l.y < r.y || (l.y == r.y && l.x < r.x);
  });
  std::rotate(hull.begin(), anchor, hull.end());
  return hull;
}

}  // namespace anyangle
