#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace geosurv {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Unit normal of direction `theta`.
inline Point direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Polyline {
  std::vector<Point> vertices;

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

inline double length(const Polyline& line) {
  double total = 0.0;
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    total += distance(line.vertices[i - 1], line.vertices[i]);
  }
  return total;
}

/// Convex hull in canonical form: counterclockwise, starting at the
/// lexicographically smallest vertex. Two vertices means a segment, one a point.
struct Hull {
  std::vector<Point> vertices;

  friend bool operator==(const Hull&, const Hull&) = default;
};

/// Diagonal of the axis-aligned bounding box; zero for a single point.
inline double bbox_diameter(std::span<const Point> points) {
  if (points.empty()) return 0.0;
  double lo_x = points[0].x, hi_x = points[0].x;
  double lo_y = points[0].y, hi_y = points[0].y;
  for (const Point& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

/// Relative tolerance used for vertex dedupe and collinearity.
inline constexpr double kRelativeEps = 1e-9;

inline double geometry_eps(std::span<const Point> points) {
  return kRelativeEps * bbox_diameter(points);
}

// Andrew's monotone chain. Points within eps of the supporting line of a hull
// edge are dropped, so collinear and duplicate inputs never survive as vertices.
inline Hull convex_hull(std::span<const Point> points) {
  if (points.empty()) throw GeometryError("empty geometry");
  for (const Point& p : points) {
    if (!is_finite(p)) throw GeometryError("non-finite coordinate");
  }
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const double diam = bbox_diameter(pts);
  const double eps = kRelativeEps * diam;

  std::vector<Point> unique;
  unique.reserve(pts.size());
  for (const Point& p : pts) {
    if (unique.empty() || distance(unique.back(), p) > eps) unique.push_back(p);
  }
  if (unique.size() == 1) return Hull{{unique[0]}};

  // Turn test scaled by the edge length so the threshold is a distance.
  auto left_turn = [eps](Point o, Point a, Point b) {
    const double base = distance(o, b);
    return cross(a - o, b - o) > eps * base;
  };

  std::vector<Point> chain(2 * unique.size());
  std::size_t k = 0;
  for (const Point& p : unique) {
    while (k >= 2 && !left_turn(chain[k - 2], chain[k - 1], p)) --k;
    chain[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = unique.size() - 1; i-- > 0;) {
    const Point& p = unique[i];
    while (k >= lower && !left_turn(chain[k - 2], chain[k - 1], p)) --k;
    chain[k++] = p;
  }
  chain.resize(k - 1);
  if (chain.size() == 1) chain.push_back(unique.back());
  return Hull{std::move(chain)};
}

inline Hull convex_hull(std::initializer_list<Point> points) {
  return convex_hull(std::span<const Point>(points.begin(), points.size()));
}

/// Closed-polygon perimeter. A segment hull counts both sides (2d) and a
/// point hull is 0, which keeps the support-function integral identity exact.
inline double hull_perimeter(const Hull& hull) {
  const auto& v = hull.vertices;
  if (v.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += distance(v[i], v[(i + 1) % v.size()]);
  }
  return total;
}

inline double support_function(const Hull& hull, double theta) {
  const Point u = direction(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& p : hull.vertices) best = std::max(best, dot(p, u));
  return best;
}

struct Disk {
  Point center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Bounded convex region: a strictly convex polygon (stored as its canonical
/// hull) or a disk.
class ConvexRegion {
 public:
  static ConvexRegion polygon(std::span<const Point> vertices) {
    if (vertices.size() < 3) throw GeometryError("polygon region needs at least 3 vertices");
    Hull hull = convex_hull(vertices);
    if (hull.vertices.size() != vertices.size()) {
      throw GeometryError("polygon region is not strictly convex");
    }
    return ConvexRegion(std::move(hull));
  }

  static ConvexRegion polygon(std::initializer_list<Point> vertices) {
    return polygon(std::span<const Point>(vertices.begin(), vertices.size()));
  }

  static ConvexRegion disk(Point center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !is_finite(center)) {
      throw GeometryError("disk radius must be positive and finite");
    }
    return ConvexRegion(Disk{center, radius});
  }

  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  const Disk& as_disk() const { return std::get<Disk>(shape_); }
  const Hull& as_polygon() const { return std::get<Hull>(shape_); }

  double perimeter() const {
    if (is_disk()) return 2.0 * std::numbers::pi * as_disk().radius;
    return hull_perimeter(as_polygon());
  }

  double support(double theta) const {
    if (is_disk()) {
      const Disk& d = as_disk();
      return dot(d.center, direction(theta)) + d.radius;
    }
    return support_function(as_polygon(), theta);
  }

  /// Largest support value over all directions (distance of the farthest point).
  double max_support() const {
    if (is_disk()) return norm(as_disk().center) + as_disk().radius;
    double best = 0.0;
    for (const Point& p : as_polygon().vertices) best = std::max(best, norm(p));
    return best;
  }

  double diameter_scale() const {
    if (is_disk()) return 2.0 * as_disk().radius;
    return bbox_diameter(as_polygon().vertices);
  }

  /// Closed containment with an absolute slack `eps`.
  bool contains(Point p, double eps = 0.0) const {
    if (is_disk()) return distance(p, as_disk().center) <= as_disk().radius + eps;
    const auto& v = as_polygon().vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i];
      const Point b = v[(i + 1) % v.size()];
      if (cross(b - a, p - a) < -eps * distance(a, b)) return false;
    }
    return true;
  }

  friend bool operator==(const ConvexRegion&, const ConvexRegion&) = default;

 private:
  explicit ConvexRegion(Hull h) : shape_(std::move(h)) {}
  explicit ConvexRegion(Disk d) : shape_(d) {}

  std::variant<Hull, Disk> shape_;
};

inline double support_function(const ConvexRegion& region, double theta) {
  return region.support(theta);
}

/// Closed half-plane {x : x . (cos theta, sin theta) >= p}.
struct HalfPlane {
  double p = 0.0;
  double theta = 0.0;
};

/// Strip of breadth w whose midparallel line is (p, theta).
struct Strip {
  double p = 0.0;
  double theta = 0.0;
  double w = 0.0;
};

inline bool halfplane_intersects(Point g, HalfPlane h) {
  return dot(g, direction(h.theta)) >= h.p;
}

// A segment's projection onto the normal is extremal at an endpoint, so
// checking vertices is the exact segment test.
inline bool halfplane_intersects(std::span<const Point> vertices, HalfPlane h) {
  const Point u = direction(h.theta);
  for (const Point& v : vertices) {
    if (dot(v, u) >= h.p) return true;
  }
  return false;
}

inline bool halfplane_intersects(const Polyline& g, HalfPlane h) {
  return halfplane_intersects(std::span<const Point>(g.vertices), h);
}

inline bool halfplane_intersects(const Hull& g, HalfPlane h) {
  return halfplane_intersects(std::span<const Point>(g.vertices), h);
}

inline bool strip_intersects(const ConvexRegion& region, Strip s) {
  const double half = 0.5 * s.w;
  return -region.support(s.theta + std::numbers::pi) - half <= s.p &&
         s.p <= region.support(s.theta) + half;
}

/// True iff the closed polyline bounds a convex region: every turn has the
/// same sign (sines of turning angles within eps of zero are ignored) and the
/// total turning is one full revolution.
inline bool is_convex_cycle(const Polyline& cycle, double eps) {
  const auto& raw = cycle.vertices;
  if (raw.size() < 2) throw GeometryError("not a cycle");
  const double tol = geometry_eps(raw);
  if (distance(raw.front(), raw.back()) > tol) throw GeometryError("not a cycle");

  std::vector<Point> v;
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    if (v.empty() || distance(v.back(), raw[i]) > tol) v.push_back(raw[i]);
  }
  while (v.size() > 1 && distance(v.back(), v.front()) <= tol) v.pop_back();
  if (v.size() < 3) return false;

  bool positive = false;
  bool negative = false;
  double turning = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % n];
    const Point c = v[(i + 2) % n];
    const Point e1 = b - a;
    const Point e2 = c - b;
    const double s = cross(e1, e2) / (norm(e1) * norm(e2));
    const double co = dot(e1, e2) / (norm(e1) * norm(e2));
    if (s > eps) positive = true;
    if (s < -eps) negative = true;
    if (std::abs(s) <= eps && co < 0.0) return false;  // fold-back
    turning += std::atan2(s, co);
  }
  if (positive && negative) return false;
  return std::abs(std::abs(turning) - 2.0 * std::numbers::pi) < 1e-6;
}

}  // namespace geosurv
