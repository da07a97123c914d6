#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geosurv/geometry.hpp"
#include "geosurv/network.hpp"

namespace geosurv {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Disaster model parameters. `w` is the breadth of the random strip whose
/// right side (from its left boundary on) is destroyed. With `wide_strip`
/// set, the destroyed area is the strip of that breadth itself.
struct DisasterParams {
  double w = 0.0;
  std::optional<double> wide_strip;

  static DisasterParams half_plane(double w = 0.0) { return {w, std::nullopt}; }
  static DisasterParams wide(double breadth) { return {0.0, breadth}; }

  /// Breadth of the sampled strip.
  double breadth() const { return wide_strip ? *wide_strip : w; }
};

struct Probability {
  double value = 0.0;

  friend auto operator<=>(const Probability&, const Probability&) = default;
};

/// 2 L(A0) + 2 pi b, the measure of strips of breadth b meeting A0.
inline double denominator(const AreaOfInterest& area, const DisasterParams& dp) {
  if (dp.w < 0.0 || !std::isfinite(dp.w)) throw ModelError("strip breadth w must be >= 0");
  if (dp.wide_strip && !(*dp.wide_strip > 0.0)) throw ModelError("wide strip breadth W must be > 0");
  return 2.0 * area.region.perimeter() + 2.0 * std::numbers::pi * dp.breadth();
}

namespace detail {

// Measure of strip positions (within the conditioning set) for which the
// disaster misses a connected set with hull perimeter `hull_len`. A half-plane
// misses only from one side; a strip can also pass wholly beyond the set.
inline double miss_measure(double area_len, double hull_len, const DisasterParams& dp) {
  const double gap = area_len - hull_len;
  return dp.wide_strip ? 2.0 * gap : gap;
}

inline double set_diameter(const Hull& h) {
  double best = 0.0;
  for (std::size_t a = 0; a < h.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < h.vertices.size(); ++b) {
      best = std::max(best, distance(h.vertices[a], h.vertices[b]));
    }
  }
  return best;
}

inline Hull checked_hull(const AreaOfInterest& area, std::span<const Point> pts, double eps,
                         const DisasterParams& dp) {
  for (const Point& p : pts) {
    if (!area.region.contains(p, eps)) throw ModelError("C not contained in A0");
  }
  Hull h = convex_hull(pts);
  if (dp.wide_strip && !(*dp.wide_strip > set_diameter(h))) {
    throw ModelError("wide strip breadth W must exceed d_max of the evaluated configuration");
  }
  return h;
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace detail

/// Probability that the disaster misses every point of C, conditioned on the
/// strip meeting A0.
inline Probability pr_miss(const AreaOfInterest& area, std::span<const Point> c, const DisasterParams& dp,
                           double eps = 0.0) {
  const double denom = denominator(area, dp);
  const Hull h = detail::checked_hull(area, c, eps, dp);
  const double area_len = area.region.perimeter();
  return {detail::clamp01(detail::miss_measure(area_len, hull_perimeter(h), dp) / denom)};
}

inline Probability pr_miss(const Network& net, std::span<const Point> c, const DisasterParams& dp) {
  return pr_miss(net.area(), c, dp, net.eps());
}

/// Inclusion-exclusion over two alternatives sharing `base`: the disaster
/// misses base+{a} or base+{b}.
inline Probability pr_miss_either(const Network& net, std::vector<Point> base, Point a, Point b,
                                  const DisasterParams& dp) {
  const double denom = denominator(net.area(), dp);
  const double area_len = net.area().region.perimeter();
  auto len = [&](std::initializer_list<Point> extra) {
    std::vector<Point> pts = base;
    pts.insert(pts.end(), extra);
    return hull_perimeter(detail::checked_hull(net.area(), pts, net.eps(), dp));
  };
  const double la = len({a});
  const double lb = len({b});
  const double lab = len({a, b});
  const double measure = detail::miss_measure(area_len, la, dp) + detail::miss_measure(area_len, lb, dp) -
                         detail::miss_measure(area_len, lab, dp);
  return {detail::clamp01(measure / denom)};
}

/// A single-route configuration hanging off `attach`. An empty `config`
/// stands for a zero-length stub: its geometry is the attach node alone.
struct StubRef {
  std::string config;
  std::string attach;
};

namespace detail {

inline const PathConfiguration& expect_kind(const Network& net, const std::string& id, ConfigKind kind) {
  const PathConfiguration& cfg = net.config(id);
  if (cfg.kind != kind) {
    throw ModelError("config " + id + " must be of kind " + std::string(to_string(kind)));
  }
  return cfg;
}

inline std::string other_end(const PathConfiguration& cfg, const std::string& node) {
  if (cfg.source == node) return cfg.dest;
  if (cfg.dest == node) return cfg.source;
  throw ModelError("node " + node + " is not an end of config " + cfg.id);
}

inline std::vector<Point> stub_points(const Network& net, const StubRef& stub) {
  if (stub.config.empty()) return {net.position(stub.attach)};
  const PathConfiguration& cfg = expect_kind(net, stub.config, ConfigKind::Single);
  other_end(cfg, stub.attach);
  return net.config_points(net.config_index(stub.config));
}

inline void expect_on_ring(const Network& net, const std::string& ring, std::initializer_list<std::string> ids) {
  expect_kind(net, ring, ConfigKind::Ring);
  const auto cycle = net.ring_cycle_nodes(net.config_index(ring));
  for (const std::string& id : ids) {
    if (std::find(cycle.begin(), cycle.end(), net.node_index(id)) == cycle.end()) {
      throw ModelError("node " + id + " is not on ring " + ring);
    }
  }
}

inline void append(std::vector<Point>& out, const std::vector<Point>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace detail

inline Probability pr_single_route(const Network& net, const DisasterParams& dp, const std::string& cfg) {
  detail::expect_kind(net, cfg, ConfigKind::Single);
  return pr_miss(net, net.config_points(net.config_index(cfg)), dp);
}

/// Joint connectivity from `source` to the far end of every listed single route.
inline Probability pr_all_destinations(const Network& net, const DisasterParams& dp, const std::string& source,
                                       const std::vector<std::string>& cfgs) {
  if (cfgs.empty()) throw ModelError("no destinations given");
  std::vector<Point> pts;
  for (const std::string& id : cfgs) {
    const PathConfiguration& cfg = detail::expect_kind(net, id, ConfigKind::Single);
    if (cfg.source != source) throw ModelError("config " + id + " does not start at " + source);
    detail::append(pts, net.config_points(net.config_index(id)));
  }
  return pr_miss(net, pts, dp);
}

/// Connectivity between two nodes of a convex ring; depends on the node
/// positions only. Defaults to the ring's own endpoints.
inline Probability pr_ring(const Network& net, const DisasterParams& dp, const std::string& ring,
                           std::optional<std::string> i = std::nullopt, std::optional<std::string> j = std::nullopt) {
  const PathConfiguration& cfg = detail::expect_kind(net, ring, ConfigKind::Ring);
  const std::string a = i.value_or(cfg.source);
  const std::string b = j.value_or(cfg.dest);
  detail::expect_on_ring(net, ring, {a, b});
  const std::vector<Point> pts{net.position(a), net.position(b)};
  return pr_miss(net, pts, dp);
}

/// Single route i->k followed by ring leg k->j.
inline Probability pr_stub_then_ring(const Network& net, const DisasterParams& dp, const StubRef& stub,
                                     const std::string& ring, const std::string& j) {
  detail::expect_on_ring(net, ring, {stub.attach, j});
  std::vector<Point> pts = detail::stub_points(net, stub);
  pts.push_back(net.position(j));
  return pr_miss(net, pts, dp);
}

/// Single route i->k1, ring legs k1->k->k2 on one ring, single route k2->j.
inline Probability pr_route_ring_route(const Network& net, const DisasterParams& dp, const StubRef& first,
                                       const std::string& ring, const std::string& k, const StubRef& second) {
  detail::expect_on_ring(net, ring, {first.attach, k, second.attach});
  std::vector<Point> pts = detail::stub_points(net, first);
  pts.push_back(net.position(k));
  detail::append(pts, detail::stub_points(net, second));
  return pr_miss(net, pts, dp);
}

/// Node i on a ring reaches every destination j hanging off ring node k(j)
/// by a single route.
inline Probability pr_ring_hub_stars(const Network& net, const DisasterParams& dp, const std::string& ring,
                                     const std::string& i, const std::vector<StubRef>& stubs) {
  if (stubs.empty()) throw ModelError("no destinations given");
  detail::expect_on_ring(net, ring, {i});
  std::vector<Point> pts{net.position(i)};
  for (const StubRef& s : stubs) {
    try {
      detail::expect_on_ring(net, ring, {s.attach});
    } catch (const ModelError&) {
      throw ModelError("attachment not on ring: " + s.attach);
    }
    detail::append(pts, detail::stub_points(net, s));
  }
  return pr_miss(net, pts, dp);
}

/// The two ring destinations that bound every other one: the first met
/// walking the ring clockwise from `attach`, and the first met walking
/// counterclockwise. Equal when only one distinct destination exists.
inline std::pair<std::string, std::string> nearest_ring_destinations(const Network& net, const std::string& ring,
                                                                     const std::string& attach,
                                                                     const std::vector<std::string>& dests) {
  const auto cycle = net.ring_cycle_nodes(net.config_index(ring));
  std::vector<Point> poly;
  for (std::size_t n : cycle) poly.push_back(net.nodes()[n].position);
  double twice_area = 0.0;
  for (std::size_t a = 0; a < poly.size(); ++a) twice_area += cross(poly[a], poly[(a + 1) % poly.size()]);
  const bool walk_is_clockwise = twice_area < 0.0;

  const auto at = std::find(cycle.begin(), cycle.end(), net.node_index(attach));
  const std::size_t start = static_cast<std::size_t>(at - cycle.begin());
  std::set<std::size_t> wanted;
  for (const std::string& d : dests) wanted.insert(net.node_index(d));

  auto first_hit = [&](int step) -> std::size_t {
    const std::size_t n = cycle.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pos = step > 0 ? (start + k) % n : (start + n - k) % n;
      if (wanted.contains(cycle[pos])) return cycle[pos];
    }
    throw ModelError("no destination on ring " + ring);
  };
  const std::size_t forward = first_hit(+1);
  const std::size_t backward = first_hit(-1);
  const std::size_t cw = walk_is_clockwise ? forward : backward;
  const std::size_t ccw = walk_is_clockwise ? backward : forward;
  return {net.nodes()[cw].id, net.nodes()[ccw].id};
}

/// Single route i->k, then at least one of the ring destinations reachable.
/// With more than two destinations only the two nearest along the ring
/// matter.
inline Probability pr_backup_destinations(const Network& net, const DisasterParams& dp, const StubRef& stub,
                                          const std::string& ring, const std::vector<std::string>& dests) {
  if (dests.empty()) throw ModelError("no destinations given");
  detail::expect_on_ring(net, ring, {stub.attach});
  for (const std::string& d : dests) detail::expect_on_ring(net, ring, {d});
  auto [j1, j2] = dests.size() <= 2 ? std::pair{dests.front(), dests.back()}
                                    : nearest_ring_destinations(net, ring, stub.attach, dests);
  if (j1 == j2) return pr_stub_then_ring(net, dp, stub, ring, j1);
  return pr_miss_either(net, detail::stub_points(net, stub), net.position(j1), net.position(j2), dp);
}

/// Single routes i->i0 and j->j0 joined through either of two ring centers.
inline Probability pr_backup_centers(const Network& net, const DisasterParams& dp, const StubRef& first,
                                     const StubRef& second, const std::string& ring, const std::string& k1,
                                     const std::string& k2) {
  detail::expect_on_ring(net, ring, {first.attach, second.attach, k1, k2});
  std::vector<Point> base = detail::stub_points(net, first);
  detail::append(base, detail::stub_points(net, second));
  if (k1 == k2) {
    base.push_back(net.position(k1));
    return pr_miss(net, base, dp);
  }
  return pr_miss_either(net, std::move(base), net.position(k1), net.position(k2), dp);
}

/// Points whose hull governs a composed path: single legs contribute their
/// geometry, ring legs only their two end nodes.
inline std::vector<Point> composition_points(const Network& net, const Composition& legs) {
  std::vector<Point> pts;
  for (const Leg& leg : legs) {
    if (net.configs()[leg.config].kind == ConfigKind::Single) {
      detail::append(pts, net.config_points(leg.config));
    } else {
      pts.push_back(net.nodes()[leg.from].position);
      pts.push_back(net.nodes()[leg.to].position);
    }
  }
  return pts;
}

inline Probability pr_composition(const Network& net, const DisasterParams& dp, const Composition& legs) {
  if (legs.empty()) throw ModelError("empty composition");
  return pr_miss(net, composition_points(net, legs), dp);
}

/// Expected number of the configurations' far ends cut off from `source`.
inline double expected_disconnected(const Network& net, const DisasterParams& dp, const std::string& source,
                                    const std::vector<std::string>& cfgs) {
  const double denom = denominator(net.area(), dp);
  const double area_len = net.area().region.perimeter();
  double total = 0.0;
  for (const std::string& id : cfgs) {
    const PathConfiguration& cfg = net.config(id);
    const std::string dest = detail::other_end(cfg, source);
    std::vector<Point> pts;
    if (cfg.kind == ConfigKind::Single) {
      pts = net.config_points(net.config_index(id));
    } else {
      pts = {net.position(source), net.position(dest)};
    }
    const double hull_len = hull_perimeter(detail::checked_hull(net.area(), pts, net.eps(), dp));
    if (dp.wide_strip) {
      total += 1.0 - detail::miss_measure(area_len, hull_len, dp) / denom;
    } else {
      total += (area_len + hull_len + 2.0 * std::numbers::pi * dp.w) / denom;
    }
  }
  return total;
}

}  // namespace geosurv
