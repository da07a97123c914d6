#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "geosurv/geometry.hpp"
#include "geosurv/montecarlo.hpp"
#include "geosurv/network.hpp"
#include "geosurv/survivability.hpp"

namespace geosurv {

// ---------------------------------------------------------------------------
// Route selection

struct RouteChoice {
  std::size_t best = 0;
  std::vector<Probability> probabilities;
};

/// Picks the single-route candidate most likely to survive; ties go to the
/// shorter route, then to the earlier candidate.
inline RouteChoice select_route(const Network& net, const DisasterParams& dp,
                                const std::vector<std::string>& candidates) {
  if (candidates.empty()) throw ModelError("no candidate routes");
  const PathConfiguration& first = detail::expect_kind(net, candidates.front(), ConfigKind::Single);
  RouteChoice out;
  std::vector<double> lengths;
  for (const std::string& id : candidates) {
    const PathConfiguration& cfg = detail::expect_kind(net, id, ConfigKind::Single);
    const bool same = (cfg.source == first.source && cfg.dest == first.dest) ||
                      (cfg.source == first.dest && cfg.dest == first.source);
    if (!same) throw ModelError("candidate " + id + " has different endpoints");
    out.probabilities.push_back(pr_single_route(net, dp, id));
    lengths.push_back(length(net.config_geometry(net.config_index(id)).front()));
  }
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double pk = out.probabilities[k].value;
    const double pb = out.probabilities[out.best].value;
    if (pk > pb || (pk == pb && lengths[k] < lengths[out.best])) out.best = k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair ranking

struct RankRow {
  std::string i;
  std::string j;
  double exact = 0.0;
  double independent = 0.0;
  double line = 0.0;
  bool simulated = false;
  std::optional<Estimate> estimate;  // set for simulated rows
};

namespace detail {

// Independent approximation: the path is split where it passes the center
// (or into its legs when no center is declared) and the parts are treated as
// failing independently.
inline double independent_approximation(const Network& net, const DisasterParams& dp, const Composition& legs) {
  std::vector<Composition> parts;
  if (net.center()) {
    const std::size_t c = net.node_index(*net.center());
    Composition cur;
    for (const Leg& leg : legs) {
      cur.push_back(leg);
      if (leg.to == c) {
        parts.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
  }
  if (parts.size() < 2) {
    parts.clear();
    for (const Leg& leg : legs) parts.push_back({leg});
  }
  double product = 1.0;
  for (const Composition& part : parts) product *= pr_composition(net, dp, part).value;
  return product;
}

}  // namespace detail

/// Exact end-to-end probability for every analysed pair, with the
/// independent and straight-line approximations, sorted by exact value
/// (descending, ties by node order). Pairs without a declared composition
/// are estimated by simulation over the whole network and flagged.
inline std::vector<RankRow> rank_pairs(const Network& net, const DisasterParams& dp,
                                       const SimConfig& fallback = {}) {
  std::vector<RankRow> rows;
  for (const auto& [a, b] : net.analysis_pairs()) {
    RankRow row;
    row.i = net.nodes()[a].id;
    row.j = net.nodes()[b].id;
    const std::vector<Point> chord{net.nodes()[a].position, net.nodes()[b].position};
    row.line = pr_miss(net, chord, dp).value;
    const auto legs = net.compose(a, b);
    if (legs && !legs->empty()) {
      row.exact = pr_composition(net, dp, *legs).value;
      row.independent = detail::independent_approximation(net, dp, *legs);
    } else {
      row.simulated = true;
      row.estimate = estimate_event(net, PairEvent{row.i, row.j}, dp, fallback);
      row.exact = row.estimate->mean;
      row.independent = row.exact;
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RankRow& x, const RankRow& y) { return x.exact > y.exact; });
  return rows;
}

// ---------------------------------------------------------------------------
// Backup center placement

struct RingPlanModel {
  double r_l = 1.0;
  double gamma = std::numbers::pi / 2.0;
  std::size_t node_count = 4;
  std::optional<AreaOfInterest> area;  // defaults to a concentric disk of radius 3 r_l
  double grid_step = std::numbers::pi / 180.0;
  double w = 0.0;

  /// Full circle of equally spaced nodes.
  static RingPlanModel uniform(double radius, std::size_t nodes) {
    RingPlanModel m;
    m.r_l = radius;
    m.node_count = nodes;
    m.gamma = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    return m;
  }

  AreaOfInterest effective_area() const {
    return area ? *area : AreaOfInterest{ConvexRegion::disk({0.0, 0.0}, 3.0 * r_l)};
  }

  std::vector<Point> nodes() const {
    std::vector<Point> out;
    for (std::size_t k = 0; k < node_count; ++k) out.push_back(r_l * direction(static_cast<double>(k) * gamma));
    return out;
  }

  void validate() const {
    if (!(r_l > 0.0) || !std::isfinite(r_l)) throw ModelError("ring radius must be positive");
    if (!(gamma > 0.0)) throw ModelError("node spacing must be positive");
    if (node_count == 0) throw ModelError("node count must be positive");
    if (static_cast<double>(node_count) * gamma > 2.0 * std::numbers::pi * (1.0 + 1e-12)) {
      throw ModelError("node_count * gamma exceeds a full turn");
    }
    if (!(grid_step > 0.0)) throw ModelError("grid step must be positive");
    if (w < 0.0) throw ModelError("strip breadth w must be >= 0");
    const AreaOfInterest a0 = effective_area();
    const double eps = kRelativeEps * std::max(2.0 * r_l, a0.region.diameter_scale());
    for (int k = 0; k < 3600; ++k) {
      const Point p = r_l * direction(2.0 * std::numbers::pi * k / 3600.0);
      if (!a0.region.contains(p, eps)) throw ModelError("ring not inside A0");
    }
    if (!a0.region.is_disk()) {
      // The polygon may cut the circle between samples; test each edge's distance.
      const auto& v = a0.region.as_polygon().vertices;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const Point a = v[k];
        const Point b = v[(k + 1) % v.size()];
        if (cross(b - a, Point{0.0, 0.0} - a) / distance(a, b) < r_l - eps) {
          throw ModelError("ring not inside A0");
        }
      }
    }
  }
};

struct PlacementCell {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
};

struct PlacementResult {
  double alpha1 = 0.0;                 // E1 optimum
  double primary = 0.0;                // primary center of the E2 optimum
  std::optional<double> alpha2;        // backup center of the E2 optimum
  double e1 = 0.0;
  std::optional<double> e2;
  std::vector<PlacementCell> grid;
};

/// Expected number of ring nodes cut off from a single center at `rc`.
inline double expected_cut_single(const AreaOfInterest& a0, double w, const std::vector<Point>& nodes, Point rc) {
  const DisasterParams dp = DisasterParams::half_plane(w);
  double total = 0.0;
  const double eps = kRelativeEps * a0.region.diameter_scale();
  for (const Point& n : nodes) total += 1.0 - pr_miss(a0, std::vector<Point>{rc, n}, dp, eps).value;
  return total;
}

/// Expected number of ring nodes cut off from both centers at `rc` and `rc2`.
inline double expected_cut_pair(const AreaOfInterest& a0, double w, const std::vector<Point>& nodes, Point rc,
                                Point rc2) {
  const DisasterParams dp = DisasterParams::half_plane(w);
  const double denom = denominator(a0, dp);
  const double l0 = a0.region.perimeter();
  double total = 0.0;
  for (const Point& n : nodes) {
    // Hull perimeters of two and three points; the latter is the sum of the
    // pairwise distances, collinear triples included.
    const double la = 2.0 * distance(n, rc);
    const double lb = 2.0 * distance(n, rc2);
    const double lab = distance(n, rc) + distance(n, rc2) + distance(rc, rc2);
    const double pr = detail::clamp01((l0 - la - lb + lab) / denom);
    total += 1.0 - pr;
  }
  return total;
}

/// Grid search over center angles. E1 uses one center at alpha1; E2 adds a
/// backup at alpha2. Angles run over k * grid_step in [0, 2 pi).
inline PlacementResult optimize_backup(const RingPlanModel& model) {
  model.validate();
  const AreaOfInterest a0 = model.effective_area();
  const std::vector<Point> nodes = model.nodes();
  const auto steps = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / model.grid_step - 1e-9));
  std::vector<double> angles(steps);
  std::vector<Point> centers(steps);
  std::vector<double> e1(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    angles[k] = static_cast<double>(k) * model.grid_step;
    centers[k] = model.r_l * direction(angles[k]);
    e1[k] = expected_cut_single(a0, model.w, nodes, centers[k]);
  }

  PlacementResult out;
  std::size_t best1 = 0;
  for (std::size_t k = 1; k < steps; ++k) {
    if (e1[k] < e1[best1]) best1 = k;
  }
  out.alpha1 = angles[best1];
  out.e1 = e1[best1];

  std::size_t b1 = 0, b2 = 0;
  double best2 = std::numeric_limits<double>::infinity();
  out.grid.reserve(steps * steps);
  for (std::size_t a = 0; a < steps; ++a) {
    for (std::size_t b = 0; b < steps; ++b) {
      const double e2 =
          a == b ? e1[a] : expected_cut_pair(a0, model.w, nodes, centers[a], centers[b]);
      out.grid.push_back({angles[a], angles[b], e1[a], e2});
      if (e2 < best2) {
        best2 = e2;
        b1 = a;
        b2 = b;
      }
    }
  }
  // Prefer a best pair whose primary is the E1 optimum, so alpha2 is read
  // against alpha1. Equal up to rounding counts as a tie.
  const double tol = 1e-12 * std::max(1.0, std::abs(best2));
  for (std::size_t b = 0; b < steps; ++b) {
    if (out.grid[best1 * steps + b].e2 <= best2 + tol) {
      b1 = best1;
      b2 = b;
      break;
    }
  }
  out.primary = angles[b1];
  out.alpha2 = angles[b2];
  out.e2 = out.grid[b1 * steps + b2].e2;
  return out;
}

}  // namespace geosurv
