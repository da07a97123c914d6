#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geosurv/geometry.hpp"
#include "geosurv/network.hpp"

namespace geosurv {

/// Incremental construction of network documents with generated ids.
class NetworkBuilder {
 public:
  const std::string& node(const std::string& id, Point p) {
    nodes_.push_back({id, p});
    return nodes_.back().id;
  }

  /// Link between two declared nodes; `bends` are interior vertices.
  std::string link(const std::string& from, const std::string& to, const std::vector<Point>& bends = {}) {
    Link l;
    l.id = "l" + std::to_string(links_.size() + 1);
    l.from = from;
    l.to = to;
    l.geometry.vertices.push_back(position(from));
    l.geometry.vertices.insert(l.geometry.vertices.end(), bends.begin(), bends.end());
    l.geometry.vertices.push_back(position(to));
    links_.push_back(std::move(l));
    return links_.back().id;
  }

  std::string route(std::vector<std::string> links) {
    routes_.push_back({"r" + std::to_string(routes_.size() + 1), std::move(links)});
    return routes_.back().id;
  }

  std::string single(const std::string& source, const std::string& dest, std::vector<std::string> links) {
    const std::string r = route(std::move(links));
    configs_.push_back({config_id(source, dest), source, dest, ConfigKind::Single, {r}});
    return configs_.back().id;
  }

  /// Ring configuration between two nodes of a cycle. `cycle` lists the
  /// cycle's nodes in order and `cycle_links[k]` joins cycle[k] to
  /// cycle[k+1] (wrapping).
  std::string ring(const std::vector<std::string>& cycle, const std::vector<std::string>& cycle_links,
                   std::size_t a, std::size_t b) {
    const std::size_t n = cycle.size();
    std::vector<std::string> forward, backward;
    for (std::size_t k = a; k != b; k = (k + 1) % n) forward.push_back(cycle_links[k]);
    for (std::size_t k = b; k != a; k = (k + 1) % n) backward.push_back(cycle_links[k]);
    const std::string r1 = route(std::move(forward));
    const std::string r2 = route(std::move(backward));
    configs_.push_back({config_id(cycle[a], cycle[b]), cycle[a], cycle[b], ConfigKind::Ring, {r1, r2}});
    return configs_.back().id;
  }

  /// "source~dest", suffixed with "#n" for the n-th duplicate pair.
  std::string config_id(const std::string& source, const std::string& dest) const {
    const std::string base = source + "~" + dest;
    int seen = 0;
    for (const PathConfiguration& c : configs_) seen += c.source == source && c.dest == dest;
    return seen == 0 ? base : base + "#" + std::to_string(seen + 1);
  }

  Point position(const std::string& id) const {
    for (const Node& n : nodes_) {
      if (n.id == id) return n.position;
    }
    throw NetworkError("unknown node id: " + id);
  }

  /// Largest distance of any vertex from `origin`.
  double reach(Point origin) const {
    double r = 0.0;
    for (const Node& n : nodes_) r = std::max(r, distance(n.position, origin));
    for (const Link& l : links_) {
      for (const Point& p : l.geometry.vertices) r = std::max(r, distance(p, origin));
    }
    return r;
  }

  Network build(AreaOfInterest area, std::optional<std::string> center = std::nullopt) const {
    return Network::create(std::move(area), nodes_, links_, routes_, configs_, std::move(center));
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Route> routes_;
  std::vector<PathConfiguration> configs_;
};

struct GeneratorParams {
  std::size_t subscribers = 12;
  std::uint64_t seed = 1;
  // A0 is the disk about the center node whose radius is this multiple of
  // the farthest vertex.
  double area_scale = 1.5;
};

inline const std::vector<std::string>& generator_templates() {
  static const std::vector<std::string> names{"tree", "loop", "ring-hub", "random-subscriber"};
  return names;
}

namespace detail {

inline AreaOfInterest area_around(const NetworkBuilder& b, const GeneratorParams& gp) {
  if (!(gp.area_scale >= 1.0)) throw NetworkError("area scale must be >= 1");
  return {ConvexRegion::disk({0.0, 0.0}, gp.area_scale * b.reach({0.0, 0.0}))};
}

inline std::string sub_id(std::size_t k) { return "s" + std::to_string(k + 1); }

}  // namespace detail

/// Tree model: feeders from the center `lc` to branch points, subscribers
/// dropped off each branch point. Every subscriber has one single route to lc.
inline Network generate_tree(const GeneratorParams& gp) {
  if (gp.subscribers < 2) throw NetworkError("tree needs at least 2 subscribers");
  std::mt19937_64 rng(gp.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NetworkBuilder b;
  b.node("lc", {0.0, 0.0});
  const std::size_t branches =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(gp.subscribers)))));
  std::vector<std::string> trunk(branches), junction(branches);
  std::vector<double> heading(branches);
  for (std::size_t k = 0; k < branches; ++k) {
    heading[k] = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.3 * unit(rng)) / static_cast<double>(branches);
    const double len = 2.0 + 1.5 * unit(rng);
    const Point end = len * direction(heading[k]);
    const Point bend = 0.5 * len * direction(heading[k] + 0.25 * (unit(rng) - 0.5));
    junction[k] = b.node("b" + std::to_string(k + 1), end);
    trunk[k] = b.link("lc", junction[k], {bend});
  }
  for (std::size_t s = 0; s < gp.subscribers; ++s) {
    const std::size_t k = s % branches;
    const Point base = b.position(junction[k]);
    const double angle = heading[k] + (unit(rng) - 0.5) * 1.6;
    const Point at = base + (0.6 + 0.9 * unit(rng)) * direction(angle);
    const std::string id = b.node(detail::sub_id(s), at);
    const std::string drop = b.link(junction[k], id);
    b.single("lc", id, {trunk[k], drop});
  }
  return b.build(detail::area_around(b, gp), "lc");
}

namespace detail {

// Ring on a circle through sorted angles, lc at angle 0. Straight links keep
// the cycle convex. Returns cycle node ids and links.
inline std::pair<std::vector<std::string>, std::vector<std::string>> circle_ring(NetworkBuilder& b,
                                                                                const std::vector<double>& angles,
                                                                                double radius) {
  std::vector<std::string> cycle, links;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    cycle.push_back(k == 0 ? std::string("lc") : "k" + std::to_string(k));
    b.node(cycle.back(), radius * direction(angles[k]));
  }
  for (std::size_t k = 0; k < cycle.size(); ++k) links.push_back(b.link(cycle[k], cycle[(k + 1) % cycle.size()]));
  return {cycle, links};
}

}  // namespace detail

/// Loop model: subscribers hang off nodes of a local ring that also holds
/// the center lc. Drops are bent polylines pointing outward.
inline Network generate_loop(const GeneratorParams& gp) {
  if (gp.subscribers < 2) throw NetworkError("loop needs at least 2 subscribers");
  std::mt19937_64 rng(gp.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NetworkBuilder b;
  const std::size_t ring_nodes = std::max<std::size_t>(4, gp.subscribers / 2 + 1);
  std::vector<double> angles{0.0};
  const double slot = 2.0 * std::numbers::pi / static_cast<double>(ring_nodes);
  for (std::size_t k = 1; k < ring_nodes; ++k) angles.push_back(slot * (static_cast<double>(k) + 0.6 * (unit(rng) - 0.5)));
  const double radius = 3.0;
  auto [cycle, links] = detail::circle_ring(b, angles, radius);
  std::vector<bool> declared(ring_nodes, false);
  for (std::size_t s = 0; s < gp.subscribers; ++s) {
    const std::size_t k = 1 + s % (ring_nodes - 1);
    if (!declared[k]) {
      b.ring(cycle, links, 0, k);
      declared[k] = true;
    }
    const double out = angles[k] + (unit(rng) - 0.5) * 0.9;
    const Point base = b.position(cycle[k]);
    const double len = 0.8 + 1.2 * unit(rng);
    const Point at = base + len * direction(out);
    const Point bend = base + 0.5 * len * direction(out + (unit(rng) - 0.5) * 0.8);
    const std::string id = b.node(detail::sub_id(s), at);
    b.single(cycle[k], id, {b.link(cycle[k], id, {bend})});
  }
  return b.build(detail::area_around(b, gp), "lc");
}

/// Ring-hub model: evenly spaced ring with hub lc, and a star of straight
/// single routes at every other ring node.
inline Network generate_ring_hub(const GeneratorParams& gp) {
  if (gp.subscribers < 2) throw NetworkError("ring-hub needs at least 2 subscribers");
  std::mt19937_64 rng(gp.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NetworkBuilder b;
  const std::size_t ring_nodes = std::max<std::size_t>(3, gp.subscribers / 3 + 1);
  std::vector<double> angles;
  for (std::size_t k = 0; k < ring_nodes; ++k) angles.push_back(2.0 * std::numbers::pi * k / ring_nodes);
  auto [cycle, links] = detail::circle_ring(b, angles, 3.0);
  for (std::size_t k = 1; k < ring_nodes; ++k) b.ring(cycle, links, 0, k);
  for (std::size_t s = 0; s < gp.subscribers; ++s) {
    const std::size_t k = 1 + s % (ring_nodes - 1);
    const Point at = b.position(cycle[k]) + (0.5 + unit(rng)) * direction(angles[k] + (unit(rng) - 0.5) * 1.2);
    const std::string id = b.node(detail::sub_id(s), at);
    b.single(cycle[k], id, {b.link(cycle[k], id)});
  }
  return b.build(detail::area_around(b, gp), "lc");
}

/// Randomized stand-in for a real access network: a tree grown outward from
/// the center with bent feeder cables; every non-center node is a subscriber.
inline Network generate_random_subscriber(const GeneratorParams& gp) {
  if (gp.subscribers < 2) throw NetworkError("random-subscriber needs at least 2 subscribers");
  std::mt19937_64 rng(gp.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NetworkBuilder b;
  b.node("lc", {0.0, 0.0});
  struct Grown {
    std::string id;
    double heading;
    std::vector<std::string> path;  // links from lc
  };
  std::vector<Grown> grown{{"lc", 0.0, {}}};
  for (std::size_t s = 0; s < gp.subscribers; ++s) {
    // Early nodes spread around the center; later ones mostly extend feeders.
    const std::size_t parent = s < 4 ? 0 : static_cast<std::size_t>(unit(rng) * static_cast<double>(grown.size()));
    const Grown& from = grown[std::min(parent, grown.size() - 1)];
    const double heading = from.id == "lc" ? 2.0 * std::numbers::pi * unit(rng)
                                           : from.heading + (unit(rng) - 0.5) * 1.4;
    const Point base = b.position(from.id);
    const double len = 1.0 + 1.5 * unit(rng);
    const Point at = base + len * direction(heading);
    const Point bend = base + 0.5 * len * direction(heading + (unit(rng) - 0.5) * 0.6);
    const std::string id = b.node(detail::sub_id(s), at);
    std::vector<std::string> path = from.path;
    path.push_back(b.link(from.id, id, {bend}));
    b.single("lc", id, path);
    grown.push_back({id, heading, std::move(path)});
  }
  return b.build(detail::area_around(b, gp), "lc");
}

inline Network generate(const std::string& name, const GeneratorParams& gp) {
  if (name == "tree") return generate_tree(gp);
  if (name == "loop") return generate_loop(gp);
  if (name == "ring-hub") return generate_ring_hub(gp);
  if (name == "random-subscriber") return generate_random_subscriber(gp);
  throw NetworkError("unknown template: " + name);
}

}  // namespace geosurv
