#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geosurv/generators.hpp"
#include "geosurv/montecarlo.hpp"
#include "geosurv/network.hpp"
#include "geosurv/survivability.hpp"

namespace fixtures {

using namespace geosurv;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Vertices of a random convex polygon around `center`: points on an ellipse
/// at sorted random angles.
inline std::vector<Point> random_convex(std::mt19937_64& rng, std::size_t n, Point center, double scale) {
  const double a = scale * uniform(rng, 0.6, 1.0);
  const double b = scale * uniform(rng, 0.3, 1.0);
  const double tilt = uniform(rng, 0.0, std::numbers::pi);
  std::vector<double> angles;
  for (std::size_t k = 0; k < n; ++k) angles.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
  std::sort(angles.begin(), angles.end());
  std::vector<Point> out;
  for (double t : angles) {
    const Point local{a * std::cos(t), b * std::sin(t)};
    out.push_back(center + Point{local.x * std::cos(tilt) - local.y * std::sin(tilt),
                                 local.x * std::sin(tilt) + local.y * std::cos(tilt)});
  }
  return out;
}

/// Random convex area of interest containing every point of `pts`, with
/// generous margin.
inline AreaOfInterest random_area(std::mt19937_64& rng, const std::vector<Point>& pts) {
  double reach = 0.0;
  for (const Point& p : pts) reach = std::max(reach, norm(p));
  if (uniform(rng, 0.0, 1.0) < 0.3) return {ConvexRegion::disk({0.0, 0.0}, reach * uniform(rng, 1.2, 3.0))};
  for (;;) {
    const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 6.0));
    const double r = reach * uniform(rng, 1.5, 3.0);
    std::vector<Point> poly;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * (static_cast<double>(k) + uniform(rng, -0.3, 0.3)) / n;
      poly.push_back(r * uniform(rng, 0.9, 1.1) * direction(t));
    }
    const Hull h = convex_hull(poly);
    if (h.vertices.size() != poly.size()) continue;
    ConvexRegion region = ConvexRegion::polygon(h.vertices);
    bool inside = true;
    for (const Point& p : pts) inside = inside && region.contains(p);
    if (inside) return {region};
  }
}

/// Closed-form value paired with the matching simulation event.
struct Instance {
  Network net;
  EventSpec event;
  double exact = 0.0;
  bool count = false;
};

enum class Formula { Theorem, SingleRoute, AllDestinations, Ring, StubRing, RouteRingRoute, HubStars,
                     BackupDestinations, BackupCenters, Expected };

inline const std::vector<std::pair<Formula, std::string>>& formulas() {
  static const std::vector<std::pair<Formula, std::string>> all{
      {Formula::Theorem, "convex set"},
      {Formula::SingleRoute, "single route"},
      {Formula::AllDestinations, "all destinations"},
      {Formula::Ring, "ring"},
      {Formula::StubRing, "stub then ring"},
      {Formula::RouteRingRoute, "route ring route"},
      {Formula::HubStars, "ring hub stars"},
      {Formula::BackupDestinations, "backup destinations"},
      {Formula::BackupCenters, "backup centers"},
      {Formula::Expected, "expected disconnected"},
  };
  return all;
}

namespace detail {

// Polyline from `from` through random bends to a new node; returns node id.
inline std::string stub(NetworkBuilder& b, std::mt19937_64& rng, const std::string& from, const std::string& id,
                        double heading, double len, std::vector<std::string>& links) {
  const Point base = b.position(from);
  const Point end = base + len * direction(heading + uniform(rng, -0.6, 0.6));
  std::vector<Point> bends;
  const int nb = static_cast<int>(uniform(rng, 0.0, 3.0));
  for (int k = 1; k <= nb; ++k) {
    const double f = static_cast<double>(k) / (nb + 1);
    const Point along = base + f * (end - base);
    const Point normal = direction(heading + std::numbers::pi / 2);
    bends.push_back(along + uniform(rng, -0.3, 0.3) * len * normal);
  }
  b.node(id, end);
  links.push_back(b.link(from, id, bends));
  return id;
}

struct Ring {
  std::vector<std::string> cycle;
  std::vector<std::string> links;
  std::vector<double> angles;
};

// Convex ring of `n` nodes named prefix0.. on a random ellipse, with some
// links bent along the ellipse.
inline Ring ring(NetworkBuilder& b, std::mt19937_64& rng, std::size_t n, const std::string& prefix,
                 double scale) {
  const double a = scale * uniform(rng, 0.7, 1.0);
  const double c = scale * uniform(rng, 0.5, 1.0);
  auto at = [&](double t) { return Point{a * std::cos(t), c * std::sin(t)}; };
  Ring r;
  for (std::size_t k = 0; k < n; ++k) {
    r.angles.push_back(2.0 * std::numbers::pi * (static_cast<double>(k) + uniform(rng, -0.3, 0.3)) / n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    r.cycle.push_back(prefix + std::to_string(k));
    b.node(r.cycle.back(), at(r.angles[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = r.angles[k];
    double t1 = r.angles[(k + 1) % n];
    if (t1 <= t0) t1 += 2.0 * std::numbers::pi;
    std::vector<Point> bends;
    if (uniform(rng, 0.0, 1.0) < 0.5) bends.push_back(at(0.5 * (t0 + t1)));
    r.links.push_back(b.link(r.cycle[k], r.cycle[(k + 1) % n], bends));
  }
  return r;
}

}  // namespace detail

inline Instance make_instance(Formula f, std::mt19937_64& rng, const DisasterParams& dp) {
  NetworkBuilder b;
  std::optional<std::string> center;
  EventSpec event;
  bool count = false;
  // Each case records how to evaluate its closed form once the network exists.
  std::function<double(const Network&)> exact;

  switch (f) {
    case Formula::Theorem: {
      // A route visiting every vertex of a random convex polygon.
      auto pts = random_convex(rng, 3 + static_cast<std::size_t>(uniform(rng, 0.0, 6.0)), {uniform(rng, -1, 1), uniform(rng, -1, 1)},
                               uniform(rng, 0.5, 2.0));
      std::shuffle(pts.begin(), pts.end(), rng);
      b.node("a", pts.front());
      b.node("z", pts.back());
      std::vector<Point> bends(pts.begin() + 1, pts.end() - 1);
      b.single("a", "z", {b.link("a", "z", bends)});
      event = PairEvent{"a", "z"};
      exact = [pts, dp](const Network& net) { return pr_miss(net, pts, dp).value; };
      break;
    }
    case Formula::SingleRoute: {
      b.node("i", {uniform(rng, -1, 1), uniform(rng, -1, 1)});
      std::vector<std::string> links;
      std::string prev = "i";
      const int hops = 1 + static_cast<int>(uniform(rng, 0.0, 3.0));
      double heading = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      for (int h = 0; h < hops; ++h) {
        heading += uniform(rng, -1.2, 1.2);
        prev = detail::stub(b, rng, prev, h + 1 == hops ? "j" : "m" + std::to_string(h), heading,
                            uniform(rng, 0.5, 2.0), links);
      }
      const std::string cfg = b.single("i", "j", links);
      event = PairEvent{"i", "j"};
      exact = [cfg, dp](const Network& net) { return pr_single_route(net, dp, cfg).value; };
      break;
    }
    case Formula::AllDestinations: {
      b.node("i", {uniform(rng, -1, 1), uniform(rng, -1, 1)});
      const int n = 2 + static_cast<int>(uniform(rng, 0.0, 4.0));
      AllOfEvent all;
      std::vector<std::string> cfgs;
      for (int k = 0; k < n; ++k) {
        std::vector<std::string> links;
        const std::string j = "j" + std::to_string(k);
        detail::stub(b, rng, "i", j, 2.0 * std::numbers::pi * k / n, uniform(rng, 0.5, 2.0), links);
        cfgs.push_back(b.single("i", j, links));
        all.pairs.emplace_back("i", j);
      }
      event = all;
      exact = [cfgs, dp](const Network& net) { return pr_all_destinations(net, dp, "i", cfgs).value; };
      break;
    }
    case Formula::Ring: {
      const std::size_t n = 4 + static_cast<std::size_t>(uniform(rng, 0.0, 5.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      const std::size_t j = 1 + static_cast<std::size_t>(uniform(rng, 0.0, n - 1.0));
      const std::string cfg = b.ring(r.cycle, r.links, 0, j);
      event = PairEvent{r.cycle[0], r.cycle[j]};
      exact = [cfg, dp](const Network& net) { return pr_ring(net, dp, cfg).value; };
      break;
    }
    case Formula::StubRing: {
      const std::size_t n = 4 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      const std::size_t j = 1 + static_cast<std::size_t>(uniform(rng, 0.0, n - 1.0));
      std::vector<std::string> links;
      detail::stub(b, rng, r.cycle[0], "i", r.angles[0], uniform(rng, 0.5, 2.0), links);
      const std::string s = b.single("i", r.cycle[0], links);
      const std::string ring = b.ring(r.cycle, r.links, 0, j);
      event = PairEvent{"i", r.cycle[j]};
      const std::string attach = r.cycle[0], dest = r.cycle[j];
      exact = [=](const Network& net) { return pr_stub_then_ring(net, dp, {s, attach}, ring, dest).value; };
      break;
    }
    case Formula::RouteRingRoute: {
      const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      std::vector<std::size_t> idx(n);
      for (std::size_t k = 0; k < n; ++k) idx[k] = k;
      std::shuffle(idx.begin(), idx.end(), rng);
      const std::size_t k1 = idx[0], kc = idx[1], k2 = idx[2];
      std::vector<std::string> l1, l2;
      detail::stub(b, rng, r.cycle[k1], "i", r.angles[k1], uniform(rng, 0.5, 2.0), l1);
      detail::stub(b, rng, r.cycle[k2], "j", r.angles[k2], uniform(rng, 0.5, 2.0), l2);
      const std::string s1 = b.single("i", r.cycle[k1], l1);
      const std::string s2 = b.single(r.cycle[k2], "j", l2);
      const std::string ring = b.ring(r.cycle, r.links, k1, kc);
      b.ring(r.cycle, r.links, kc, k2);
      center = r.cycle[kc];
      event = PairEvent{"i", "j"};
      const std::string a1 = r.cycle[k1], a2 = r.cycle[k2], mid = r.cycle[kc];
      exact = [=](const Network& net) { return pr_route_ring_route(net, dp, {s1, a1}, ring, mid, {s2, a2}).value; };
      break;
    }
    case Formula::HubStars: {
      const std::size_t n = 4 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      AllOfEvent all;
      std::vector<StubRef> stubs;
      std::string ring_id;
      const int dests = 2 + static_cast<int>(uniform(rng, 0.0, 3.0));
      std::vector<bool> declared(n, false);
      for (int d = 0; d < dests; ++d) {
        const std::size_t k = 1 + static_cast<std::size_t>(uniform(rng, 0.0, n - 1.0));
        if (!declared[k]) {
          const std::string id = b.ring(r.cycle, r.links, 0, k);
          if (ring_id.empty()) ring_id = id;
          declared[k] = true;
        }
        std::vector<std::string> links;
        const std::string j = "j" + std::to_string(d);
        detail::stub(b, rng, r.cycle[k], j, r.angles[k], uniform(rng, 0.5, 2.0), links);
        stubs.push_back({b.single(r.cycle[k], j, links), r.cycle[k]});
        all.pairs.emplace_back(r.cycle[0], j);
      }
      event = all;
      const std::string hub = r.cycle[0];
      exact = [=](const Network& net) { return pr_ring_hub_stars(net, dp, ring_id, hub, stubs).value; };
      break;
    }
    case Formula::BackupDestinations: {
      const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      std::vector<std::size_t> idx(n - 1);
      for (std::size_t k = 0; k + 1 < n; ++k) idx[k] = k + 1;
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<std::string> links;
      detail::stub(b, rng, r.cycle[0], "i", r.angles[0], uniform(rng, 0.5, 2.0), links);
      const std::string s = b.single("i", r.cycle[0], links);
      const std::string ring = b.ring(r.cycle, r.links, 0, idx[0]);
      b.ring(r.cycle, r.links, 0, idx[1]);
      const std::string j1 = r.cycle[idx[0]], j2 = r.cycle[idx[1]], attach = r.cycle[0];
      event = AnyDestEvent{"i", {j1, j2}};
      exact = [=](const Network& net) { return pr_backup_destinations(net, dp, {s, attach}, ring, {j1, j2}).value; };
      break;
    }
    case Formula::BackupCenters: {
      const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      std::vector<std::size_t> idx(n);
      for (std::size_t k = 0; k < n; ++k) idx[k] = k;
      std::shuffle(idx.begin(), idx.end(), rng);
      const std::size_t i0 = idx[0], j0 = idx[1], k1 = idx[2], k2 = idx[3];
      std::vector<std::string> l1, l2;
      detail::stub(b, rng, r.cycle[i0], "i", r.angles[i0], uniform(rng, 0.5, 2.0), l1);
      detail::stub(b, rng, r.cycle[j0], "j", r.angles[j0], uniform(rng, 0.5, 2.0), l2);
      const std::string s1 = b.single("i", r.cycle[i0], l1);
      const std::string s2 = b.single(r.cycle[j0], "j", l2);
      const std::string ring = b.ring(r.cycle, r.links, i0, k1);
      b.ring(r.cycle, r.links, i0, k2);
      b.ring(r.cycle, r.links, k1, j0);
      b.ring(r.cycle, r.links, k2, j0);
      const std::string a1 = r.cycle[i0], a2 = r.cycle[j0], c1 = r.cycle[k1], c2 = r.cycle[k2];
      event = ThroughAnyEvent{"i", "j", {c1, c2}};
      exact = [=](const Network& net) { return pr_backup_centers(net, dp, {s1, a1}, {s2, a2}, ring, c1, c2).value; };
      break;
    }
    case Formula::Expected: {
      const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 3.0));
      const auto r = detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
      std::vector<std::string> cfgs, dests;
      for (std::size_t k : {std::size_t{1}, n / 2}) {
        cfgs.push_back(b.ring(r.cycle, r.links, 0, k));
        dests.push_back(r.cycle[k]);
      }
      const int singles = 1 + static_cast<int>(uniform(rng, 0.0, 3.0));
      for (int d = 0; d < singles; ++d) {
        std::vector<std::string> links;
        const std::string j = "j" + std::to_string(d);
        detail::stub(b, rng, r.cycle[0], j, r.angles[0] + uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.5), links);
        cfgs.push_back(b.single(r.cycle[0], j, links));
        dests.push_back(j);
      }
      event = DisconnectedCountEvent{r.cycle[0], dests};
      count = true;
      const std::string source = r.cycle[0];
      exact = [=](const Network& net) { return expected_disconnected(net, dp, source, cfgs); };
      break;
    }
  }

  std::vector<Point> everything;
  // A 64-gon circumscribing the disk that holds every vertex.
  const double reach = 1.01 * b.reach({0.0, 0.0});
  for (int k = 0; k < 64; ++k) everything.push_back(reach * direction(2.0 * std::numbers::pi * k / 64));
  Network net = b.build(random_area(rng, everything), center);
  const double value = exact(net);
  return {std::move(net), std::move(event), value, count};
}

}  // namespace fixtures
