#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "geosurv/geometry.hpp"

namespace geosurv {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  std::string id;
  Point position;
};

struct Link {
  std::string id;
  std::string from;
  std::string to;
  Polyline geometry;
};

struct Route {
  std::string id;
  std::vector<std::string> links;
};

enum class ConfigKind { Single, Ring };

inline std::string_view to_string(ConfigKind k) { return k == ConfigKind::Single ? "single" : "ring"; }

struct PathConfiguration {
  std::string id;
  std::string source;
  std::string dest;
  ConfigKind kind = ConfigKind::Single;
  std::vector<std::string> routes;
};

struct AreaOfInterest {
  ConvexRegion region;
};

/// A route walked from one of its ends.
struct OrientedRoute {
  std::vector<std::size_t> nodes;  // switching nodes in walk order
  std::vector<std::size_t> links;
  Polyline geometry;               // concatenation, shared vertices merged
};

/// One hop of a composed end-to-end path: a declared configuration traversed
/// from `from` to `to`.
struct Leg {
  std::size_t config = 0;
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const Leg&, const Leg&) = default;
};

using Composition = std::vector<Leg>;

/// Connected subgraph induced by a set of links, with node and link indices
/// referring to the owning Network.
class Subgraph {
 public:
  Subgraph() = default;

  Subgraph(std::span<const std::size_t> links, std::span<const Link> all_links,
           const std::function<std::size_t(const std::string&)>& node_index) {
    std::map<std::size_t, std::size_t> local;
    auto local_of = [&](std::size_t g) {
      auto [it, inserted] = local.emplace(g, nodes_.size());
      if (inserted) {
        nodes_.push_back(g);
        adjacency_.emplace_back();
      }
      return it->second;
    };
    for (std::size_t l : links) {
      if (std::find(links_.begin(), links_.end(), l) != links_.end()) continue;
      const std::size_t a = local_of(node_index(all_links[l].from));
      const std::size_t b = local_of(node_index(all_links[l].to));
      links_.push_back(l);
      adjacency_[a].push_back({l, b});
      adjacency_[b].push_back({l, a});
    }
  }

  const std::vector<std::size_t>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& links() const { return links_; }

  /// BFS from global node `from` to global node `to` over alive elements.
  /// `node_dead` and `link_dead` are indexed by global index.
  bool connected(std::size_t from, std::size_t to, const std::vector<char>& node_dead,
                 const std::vector<char>& link_dead) const {
    if (node_dead[from] || node_dead[to]) return false;
    if (from == to) return true;
    const auto start = std::find(nodes_.begin(), nodes_.end(), from);
    if (start == nodes_.end()) return false;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack{static_cast<std::size_t>(start - nodes_.begin())};
    seen[stack.back()] = 1;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (const auto& [link, next] : adjacency_[cur]) {
        if (seen[next] || link_dead[link] || node_dead[nodes_[next]]) continue;
        if (nodes_[next] == to) return true;
        seen[next] = 1;
        stack.push_back(next);
      }
    }
    return false;
  }

 private:
  std::vector<std::size_t> nodes_;
  std::vector<std::size_t> links_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

/// Validated, immutable network over an area of interest.
class Network {
 public:
  static Network create(AreaOfInterest area, std::vector<Node> nodes, std::vector<Link> links,
                        std::vector<Route> routes, std::vector<PathConfiguration> configs,
                        std::optional<std::string> center = std::nullopt) {
    Network net(std::move(area));
    net.nodes_ = std::move(nodes);
    net.links_ = std::move(links);
    net.routes_ = std::move(routes);
    net.configs_ = std::move(configs);
    net.center_ = std::move(center);
    net.validate();
    return net;
  }

  const AreaOfInterest& area() const { return area_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Route>& routes() const { return routes_; }
  const std::vector<PathConfiguration>& configs() const { return configs_; }
  const std::optional<std::string>& center() const { return center_; }
  double eps() const { return eps_; }

  std::size_t node_index(const std::string& id) const { return lookup(node_ids_, id, "node"); }
  std::size_t link_index(const std::string& id) const { return lookup(link_ids_, id, "link"); }
  std::size_t route_index(const std::string& id) const { return lookup(route_ids_, id, "route"); }
  std::size_t config_index(const std::string& id) const { return lookup(config_ids_, id, "config"); }
  bool has_node(const std::string& id) const { return node_ids_.contains(id); }

  const Node& node(const std::string& id) const { return nodes_[node_index(id)]; }
  const PathConfiguration& config(const std::string& id) const { return configs_[config_index(id)]; }
  Point position(const std::string& id) const { return node(id).position; }

  /// Walk route `r` starting from node `start`, which must be one of its ends.
  OrientedRoute orient(std::size_t r, std::size_t start) const {
    const Route& route = routes_[r];
    OrientedRoute out = walk_from(r, natural_start(r));
    if (out.nodes.front() == start) return out;
    if (out.nodes.back() != start) {
      throw NetworkError("route " + route.id + " does not end at node " + nodes_[start].id);
    }
    std::reverse(out.nodes.begin(), out.nodes.end());
    std::reverse(out.links.begin(), out.links.end());
    std::reverse(out.geometry.vertices.begin(), out.geometry.vertices.end());
    return out;
  }

  /// Both end nodes of route `r` in declaration order.
  std::pair<std::size_t, std::size_t> route_ends(std::size_t r) const {
    const OrientedRoute walk = walk_from(r, natural_start(r));
    return {walk.nodes.front(), walk.nodes.back()};
  }

  /// Polylines of configuration `c` oriented from source to dest. A ring
  /// yields a single closed cycle: first route forward, second route back.
  std::vector<Polyline> config_geometry(std::size_t c) const {
    const PathConfiguration& cfg = configs_[c];
    const std::size_t s = node_index(cfg.source);
    const std::size_t d = node_index(cfg.dest);
    if (cfg.kind == ConfigKind::Single) {
      return {orient(route_index(cfg.routes[0]), s).geometry};
    }
    Polyline cycle = orient(route_index(cfg.routes[0]), s).geometry;
    const Polyline back = orient(route_index(cfg.routes[1]), d).geometry;
    cycle.vertices.insert(cycle.vertices.end(), back.vertices.begin() + 1, back.vertices.end());
    return {std::move(cycle)};
  }

  std::vector<Point> config_points(std::size_t c) const {
    std::vector<Point> pts;
    for (const Polyline& line : config_geometry(c)) {
      pts.insert(pts.end(), line.vertices.begin(), line.vertices.end());
    }
    return pts;
  }

  std::vector<std::size_t> config_links(std::size_t c) const {
    std::vector<std::size_t> out;
    for (const std::string& rid : configs_[c].routes) {
      for (const std::string& lid : routes_[route_index(rid)].links) out.push_back(link_index(lid));
    }
    return out;
  }

  /// Switching nodes along the configuration's routes.
  std::vector<std::size_t> config_nodes(std::size_t c) const {
    std::vector<std::size_t> out;
    const std::size_t s = node_index(configs_[c].source);
    for (const std::string& rid : configs_[c].routes) {
      for (std::size_t n : orient(route_index(rid), s).nodes) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
      }
    }
    return out;
  }

  /// Ring nodes in walk order starting at the ring's source: first route
  /// forward, then the second route back (dest appears once).
  std::vector<std::size_t> ring_cycle_nodes(std::size_t c) const {
    const PathConfiguration& cfg = configs_[c];
    if (cfg.kind != ConfigKind::Ring) throw NetworkError("not a ring config: " + cfg.id);
    const std::size_t s = node_index(cfg.source);
    const std::size_t d = node_index(cfg.dest);
    std::vector<std::size_t> out = orient(route_index(cfg.routes[0]), s).nodes;
    const auto back = orient(route_index(cfg.routes[1]), d).nodes;
    out.insert(out.end(), back.begin() + 1, back.end() - 1);
    return out;
  }

  /// Largest distance between two points of the configuration.
  double d_max(std::size_t c) const {
    const std::vector<Point> pts = config_points(c);
    const Hull h = convex_hull(pts);
    double best = 0.0;
    for (std::size_t a = 0; a < h.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < h.vertices.size(); ++b) {
        best = std::max(best, distance(h.vertices[a], h.vertices[b]));
      }
    }
    return best;
  }

  Subgraph config_subgraph(std::size_t c) const {
    return Subgraph(config_links(c), links_, [this](const std::string& id) { return node_index(id); });
  }

  Subgraph full_subgraph() const {
    std::vector<std::size_t> all(links_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Subgraph(all, links_, [this](const std::string& id) { return node_index(id); });
  }

  /// Configurations as undirected edges; shortest path by leg count, ties by
  /// declaration order.
  std::optional<Composition> config_path(std::size_t from, std::size_t to) const {
    if (from == to) return Composition{};
    std::vector<std::optional<Leg>> parent(nodes_.size());
    std::vector<char> seen(nodes_.size(), 0);
    std::deque<std::size_t> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (std::size_t c = 0; c < configs_.size(); ++c) {
        const std::size_t s = node_index(configs_[c].source);
        const std::size_t d = node_index(configs_[c].dest);
        std::size_t next;
        if (s == cur) {
          next = d;
        } else if (d == cur) {
          next = s;
        } else {
          continue;
        }
        if (seen[next]) continue;
        seen[next] = 1;
        parent[next] = Leg{c, cur, next};
        if (next == to) {
          Composition path;
          for (std::size_t n = to; n != from; n = parent[n]->from) path.push_back(*parent[n]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  /// End-to-end composition for the pair (i, j). When a center node is
  /// declared and neither end is the center, the path is forced through it.
  std::optional<Composition> compose(std::size_t i, std::size_t j) const {
    if (center_) {
      const std::size_t c = node_index(*center_);
      if (i != c && j != c && i != j) {
        auto first = config_path(i, c);
        auto second = config_path(c, j);
        if (!first || !second) return std::nullopt;
        first->insert(first->end(), second->begin(), second->end());
        return first;
      }
    }
    return config_path(i, j);
  }

  /// Unordered pairs of configuration endpoints, the center excluded, in
  /// node declaration order.
  std::vector<std::pair<std::size_t, std::size_t>> analysis_pairs() const {
    std::vector<char> endpoint(nodes_.size(), 0);
    for (const PathConfiguration& c : configs_) {
      endpoint[node_index(c.source)] = 1;
      endpoint[node_index(c.dest)] = 1;
    }
    if (center_) endpoint[node_index(*center_)] = 0;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < nodes_.size(); ++a) {
      if (!endpoint[a]) continue;
      for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
        if (endpoint[b]) out.emplace_back(a, b);
      }
    }
    return out;
  }

 private:
  explicit Network(AreaOfInterest area) : area_(std::move(area)) {}

  std::size_t natural_start(std::size_t r) const {
    const Route& route = routes_[r];
    const Link& first = links_[link_index(route.links.front())];
    if (route.links.size() > 1) {
      const Link& second = links_[link_index(route.links[1])];
      if (first.from == second.from || first.from == second.to) return node_index(first.to);
    }
    return node_index(first.from);
  }

  OrientedRoute walk_from(std::size_t r, std::size_t start) const {
    const Route& route = routes_[r];
    OrientedRoute out;
    out.nodes.push_back(start);
    for (const std::string& lid : route.links) {
      const std::size_t l = link_index(lid);
      const Link& link = links_[l];
      const std::size_t a = node_index(link.from);
      const std::size_t b = node_index(link.to);
      const std::size_t cur = out.nodes.back();
      std::vector<Point> pts = link.geometry.vertices;
      std::size_t next;
      if (a == cur) {
        next = b;
      } else if (b == cur) {
        next = a;
        std::reverse(pts.begin(), pts.end());
      } else {
        throw NetworkError("route links not consecutive: " + route.id);
      }
      auto& g = out.geometry.vertices;
      g.insert(g.end(), pts.begin() + (g.empty() ? 0 : 1), pts.end());
      out.nodes.push_back(next);
      out.links.push_back(l);
    }
    return out;
  }

  static std::size_t lookup(const std::map<std::string, std::size_t>& ids, const std::string& id,
                            const char* what) {
    const auto it = ids.find(id);
    if (it == ids.end()) throw NetworkError(std::string("unknown ") + what + " id: " + id);
    return it->second;
  }

  template <typename T>
  static std::map<std::string, std::size_t> index(const std::vector<T>& items, const char* what) {
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].id.empty()) throw NetworkError(std::string("empty ") + what + " id");
      if (!ids.emplace(items[i].id, i).second) {
        throw NetworkError(std::string("duplicate ") + what + " id: " + items[i].id);
      }
    }
    return ids;
  }

  void validate() {
    node_ids_ = index(nodes_, "node");
    link_ids_ = index(links_, "link");
    route_ids_ = index(routes_, "route");
    config_ids_ = index(configs_, "config");

    std::vector<Point> all;
    for (const Node& n : nodes_) {
      if (!is_finite(n.position)) throw NetworkError("non-finite coordinate: " + n.id);
      all.push_back(n.position);
    }
    for (const Link& l : links_) {
      for (const Point& p : l.geometry.vertices) {
        if (!is_finite(p)) throw NetworkError("non-finite coordinate: " + l.id);
        all.push_back(p);
      }
    }
    eps_ = kRelativeEps * std::max(bbox_diameter(all), area_.region.diameter_scale());

    for (const Node& n : nodes_) {
      if (!area_.region.contains(n.position, eps_)) throw NetworkError("geometry outside A0: " + n.id);
    }
    for (const Link& l : links_) {
      const auto& v = l.geometry.vertices;
      if (v.size() < 2) throw NetworkError("degenerate polyline: " + l.id);
      for (std::size_t k = 1; k < v.size(); ++k) {
        if (distance(v[k - 1], v[k]) <= eps_) throw NetworkError("degenerate polyline: " + l.id);
      }
      if (l.from == l.to) throw NetworkError("self-loop link: " + l.id);
      const Point a = position(l.from);
      const Point b = position(l.to);
      if (distance(v.front(), a) > eps_ || distance(v.back(), b) > eps_) {
        throw NetworkError("link geometry does not meet its endpoints: " + l.id);
      }
      for (const Point& p : v) {
        if (!area_.region.contains(p, eps_)) throw NetworkError("geometry outside A0: " + l.id);
      }
    }
    for (std::size_t r = 0; r < routes_.size(); ++r) {
      const Route& route = routes_[r];
      if (route.links.empty()) throw NetworkError("empty route: " + route.id);
      for (const std::string& lid : route.links) link_index(lid);
      if (route.links.size() > 1) {
        const Link& a = links_[link_index(route.links[0])];
        const Link& b = links_[link_index(route.links[1])];
        const bool shares_from = a.from == b.from || a.from == b.to;
        const bool shares_to = a.to == b.from || a.to == b.to;
        if (shares_from && shares_to) throw NetworkError("ambiguous route orientation: " + route.id);
      }
      const OrientedRoute walk = walk_from(r, natural_start(r));
      std::set<std::size_t> visited(walk.nodes.begin(), walk.nodes.end());
      if (visited.size() != walk.nodes.size()) throw NetworkError("route revisits a node: " + route.id);
    }
    if (center_) node_index(*center_);
    for (std::size_t c = 0; c < configs_.size(); ++c) validate_config(c);
  }

  void validate_config(std::size_t c) {
    const PathConfiguration& cfg = configs_[c];
    const std::size_t s = node_index(cfg.source);
    const std::size_t d = node_index(cfg.dest);
    if (s == d) throw NetworkError("config source equals dest: " + cfg.id);
    const std::size_t expected = cfg.kind == ConfigKind::Single ? 1 : 2;
    if (cfg.routes.size() != expected) {
      throw NetworkError("config " + cfg.id + " of kind " + std::string(to_string(cfg.kind)) + " needs " +
                         std::to_string(expected) + " route(s)");
    }
    std::vector<OrientedRoute> walks;
    for (const std::string& rid : cfg.routes) {
      const std::size_t r = route_index(rid);
      const auto [a, b] = route_ends(r);
      if (!((a == s && b == d) || (a == d && b == s))) {
        throw NetworkError("route " + rid + " does not join " + cfg.source + " and " + cfg.dest);
      }
      walks.push_back(orient(r, s));
    }
    if (cfg.kind == ConfigKind::Single) return;

    std::set<std::size_t> links0(walks[0].links.begin(), walks[0].links.end());
    for (std::size_t l : walks[1].links) {
      if (links0.contains(l)) throw NetworkError("ring routes overlap: " + cfg.id);
    }
    std::set<std::size_t> inner0(walks[0].nodes.begin() + 1, walks[0].nodes.end() - 1);
    for (std::size_t k = 1; k + 1 < walks[1].nodes.size(); ++k) {
      if (inner0.contains(walks[1].nodes[k])) throw NetworkError("ring routes overlap: " + cfg.id);
    }
    const Polyline cycle = config_geometry(c).front();
    if (!is_convex_cycle(cycle, kRingConvexityEps)) throw NetworkError("ring not convex: " + cfg.id);
  }

 public:
  static constexpr double kRingConvexityEps = 1e-9;

 private:
  AreaOfInterest area_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Route> routes_;
  std::vector<PathConfiguration> configs_;
  std::optional<std::string> center_;
  std::map<std::string, std::size_t> node_ids_, link_ids_, route_ids_, config_ids_;
  double eps_ = 0.0;
};

/// Disaster given as two predicates, for callers that don't need a
/// dedicated geometric type.
struct PredicateDisaster {
  std::function<bool(Point)> point;
  std::function<bool(const Polyline&)> line;

  bool hits(Point p) const { return point(p); }
  bool hits(const Polyline& g) const { return line(g); }
};

struct HalfPlaneDisaster {
  HalfPlane plane;

  bool hits(Point p) const { return halfplane_intersects(p, plane); }
  bool hits(const Polyline& g) const { return halfplane_intersects(g, plane); }
};

/// Nodes whose position, and links any part of whose geometry, lies in the
/// disaster are removed; j must stay reachable from i over what survives.
template <typename Disaster>
bool surviving_connectivity(const Network& net, const Disaster& disaster, const std::string& i,
                            const std::string& j) {
  const std::size_t a = net.node_index(i);
  const std::size_t b = net.node_index(j);
  std::vector<char> node_dead(net.nodes().size());
  std::vector<char> link_dead(net.links().size());
  for (std::size_t n = 0; n < node_dead.size(); ++n) node_dead[n] = disaster.hits(net.nodes()[n].position);
  for (std::size_t l = 0; l < link_dead.size(); ++l) link_dead[l] = disaster.hits(net.links()[l].geometry);
  return net.full_subgraph().connected(a, b, node_dead, link_dead);
}

// ---------------------------------------------------------------------------
// JSON document

namespace detail {

inline Point read_xy(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw NetworkError("schema: expected [x, y] in " + where);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw NetworkError(std::string("schema: missing key '") + key + "' in " + where);
  }
  return obj.at(key);
}

inline std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw NetworkError(std::string("schema: '") + key + "' must be a string in " + where);
  return v.get<std::string>();
}

inline double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw NetworkError(std::string("schema: '") + key + "' must be a number in " + where);
  return v.get<double>();
}

inline const nlohmann::json& require_array(const nlohmann::json& obj, const char* key,
                                           const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_array()) throw NetworkError(std::string("schema: '") + key + "' must be an array in " + where);
  return v;
}

inline std::vector<std::string> string_list(const nlohmann::json& arr, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw NetworkError("schema: expected string ids in " + where);
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline Network parse_network(const nlohmann::json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw NetworkError("schema: document must be an object");

  const auto& area_j = require(doc, "area", "document");
  std::optional<ConvexRegion> region;
  try {
    if (area_j.contains("polygon")) {
      std::vector<Point> pts;
      for (const auto& p : require_array(area_j, "polygon", "area")) pts.push_back(read_xy(p, "area"));
      region = ConvexRegion::polygon(pts);
    } else if (area_j.contains("disk")) {
      const auto& disk = area_j.at("disk");
      region = ConvexRegion::disk(read_xy(require(disk, "center", "area.disk"), "area.disk"),
                                  require_number(disk, "radius", "area.disk"));
    } else {
      throw NetworkError("schema: area needs 'polygon' or 'disk'");
    }
  } catch (const GeometryError& e) {
    throw NetworkError(std::string("invalid area: ") + e.what());
  }

  std::vector<Node> nodes;
  for (const auto& n : require_array(doc, "nodes", "document")) {
    const std::string id = require_string(n, "id", "nodes");
    nodes.push_back({id, {require_number(n, "x", "node " + id), require_number(n, "y", "node " + id)}});
  }
  std::map<std::string, Point> pos;
  for (const Node& n : nodes) pos.emplace(n.id, n.position);

  std::vector<Link> links;
  for (const auto& l : require_array(doc, "links", "document")) {
    Link link;
    link.id = require_string(l, "id", "links");
    link.from = require_string(l, "from", "link " + link.id);
    link.to = require_string(l, "to", "link " + link.id);
    if (l.contains("polyline")) {
      for (const auto& p : require_array(l, "polyline", "link " + link.id)) {
        link.geometry.vertices.push_back(read_xy(p, "link " + link.id));
      }
    } else {
      if (!pos.contains(link.from)) throw NetworkError("unknown node id: " + link.from);
      if (!pos.contains(link.to)) throw NetworkError("unknown node id: " + link.to);
      link.geometry.vertices = {pos[link.from], pos[link.to]};
    }
    links.push_back(std::move(link));
  }

  std::vector<Route> routes;
  for (const auto& r : require_array(doc, "routes", "document")) {
    Route route;
    route.id = require_string(r, "id", "routes");
    route.links = string_list(require_array(r, "links", "route " + route.id), "route " + route.id);
    routes.push_back(std::move(route));
  }

  std::vector<PathConfiguration> configs;
  std::map<std::string, int> default_ids;
  for (const auto& c : require_array(doc, "configs", "document")) {
    PathConfiguration cfg;
    cfg.source = require_string(c, "source", "configs");
    cfg.dest = require_string(c, "dest", "configs");
    const std::string where = "config " + cfg.source + "->" + cfg.dest;
    const std::string kind = require_string(c, "kind", where);
    if (kind == "single") {
      cfg.kind = ConfigKind::Single;
    } else if (kind == "ring") {
      cfg.kind = ConfigKind::Ring;
    } else {
      throw NetworkError("schema: unknown config kind '" + kind + "' in " + where);
    }
    cfg.routes = string_list(require_array(c, "routes", where), where);
    if (c.contains("id")) {
      cfg.id = require_string(c, "id", where);
    } else {
      cfg.id = cfg.source + "~" + cfg.dest;
      const int seen = default_ids[cfg.id]++;
      if (seen > 0) cfg.id += "#" + std::to_string(seen + 1);
    }
    configs.push_back(std::move(cfg));
  }

  std::optional<std::string> center;
  if (doc.contains("center")) center = require_string(doc, "center", "document");

  try {
    return Network::create(AreaOfInterest{*region}, std::move(nodes), std::move(links), std::move(routes),
                           std::move(configs), std::move(center));
  } catch (const GeometryError& e) {
    throw NetworkError(e.what());
  }
}

inline Network parse_network(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw NetworkError(std::string("schema: malformed JSON: ") + e.what());
  }
  return parse_network(doc);
}

inline Network parse_network(const std::string& text) { return parse_network(std::string_view(text)); }
inline Network parse_network(const char* text) { return parse_network(std::string_view(text)); }

inline nlohmann::json to_json(const Network& net) {
  using nlohmann::json;
  json doc = json::object();
  const ConvexRegion& region = net.area().region;
  if (region.is_disk()) {
    const Disk& d = region.as_disk();
    doc["area"] = {{"disk", {{"center", {d.center.x, d.center.y}}, {"radius", d.radius}}}};
  } else {
    json poly = json::array();
    for (const Point& p : region.as_polygon().vertices) poly.push_back({p.x, p.y});
    doc["area"] = {{"polygon", poly}};
  }
  if (net.center()) doc["center"] = *net.center();
  json nodes = json::array();
  for (const Node& n : net.nodes()) nodes.push_back({{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}});
  doc["nodes"] = nodes;
  json links = json::array();
  for (const Link& l : net.links()) {
    json poly = json::array();
    for (const Point& p : l.geometry.vertices) poly.push_back({p.x, p.y});
    links.push_back({{"id", l.id}, {"from", l.from}, {"to", l.to}, {"polyline", poly}});
  }
  doc["links"] = links;
  json routes = json::array();
  for (const Route& r : net.routes()) routes.push_back({{"id", r.id}, {"links", r.links}});
  doc["routes"] = routes;
  json configs = json::array();
  for (const PathConfiguration& c : net.configs()) {
    configs.push_back({{"id", c.id},
                       {"source", c.source},
                       {"dest", c.dest},
                       {"kind", std::string(to_string(c.kind))},
                       {"routes", c.routes}});
  }
  doc["configs"] = configs;
  return doc;
}

inline std::string serialize_network(const Network& net) { return to_json(net).dump(2) + "\n"; }

}  // namespace geosurv
