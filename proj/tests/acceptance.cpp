// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "geosurv/cli.hpp"
#include "geosurv/generators.hpp"
#include "geosurv/montecarlo.hpp"
#include "geosurv/planner.hpp"

namespace fs = std::filesystem;
using namespace geosurv;
using fixtures::uniform;

namespace {

// Tree fixture shared by the ordering and validity criteria, with A0 large
// against the network.
const GeneratorParams kTreeFixture{.subscribers = 12, .seed = 1, .area_scale = 30.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& what, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, what.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

void note(const std::string& line) {
  std::printf("  %s\n", line.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SimConfig sim(std::uint64_t trials, std::uint64_t seed, unsigned parallelism = 1) {
  SimConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.parallelism = parallelism;
  return cfg;
}

bool same_to_12_digits(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// ---------------------------------------------------------------------------

Outcome closed_form_agreement() {
  Outcome o;
  int total = 0, agree = 0;
  double worst_se = 0.0;
  int formula_index = 0;
  for (const auto& [formula, label] : fixtures::formulas()) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1000 + formula_index);
    int ok = 0;
    double worst_z = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto dp = DisasterParams::half_plane(uniform(rng, 0.0, 0.5));
      const auto inst = fixtures::make_instance(formula, rng, dp);
      const Estimate e = estimate_event(inst.net, inst.event, dp, sim(1000000, 1 + 100 * formula_index + k));
      const double z = std::abs(e.mean - inst.exact) / e.std_error;
      worst_z = std::max(worst_z, z);
      if (!inst.count) worst_se = std::max(worst_se, e.std_error);
      if (z <= 3.0) ++ok;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note(fmt("%-20s %d/20 within 3 SE, max |z| %.2f, %.1f s", label.c_str(), ok, worst_z, secs));
    total += 20;
    agree += ok;
    ++formula_index;
  }
  o.pass = agree == total;
  o.detail = fmt("%d/%d instances within 3 SE at 1e6 trials, max probability SE %.2e", agree, total, worst_se);
  return o;
}

Outcome exact_fixture_values() {
  const AreaOfInterest square{ConvexRegion::polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}})};
  const std::vector<Point> seg{{3, 5}, {7, 5}};
  const double p0 = pr_miss(square, seg, DisasterParams::half_plane()).value;
  const double p1 = pr_miss(square, seg, DisasterParams::half_plane(1.0)).value;
  const double pt = pr_miss(square, std::vector<Point>{{4, 6}}, DisasterParams::half_plane()).value;
  Outcome o;
  o.pass = same_to_12_digits(p0, 0.4) && same_to_12_digits(p1, 32.0 / (80.0 + 2.0 * std::numbers::pi)) && pt == 0.5;
  o.detail = fmt("w=0: %.15g, w=1: %.15g, point: %.17g", p0, p1, pt);
  return o;
}

// Convex ring through a = (-2, 0) and z = (2, 0): the hull of the endpoints
// and random points strictly between them along x keeps both as vertices.
Network random_ring_through_endpoints(std::mt19937_64& rng, bool with_chord) {
  std::vector<Point> pts{{-2, 0}, {2, 0}};
  const int extra = 1 + static_cast<int>(uniform(rng, 0.0, 8.0));
  for (int k = 0; k < extra; ++k) pts.push_back({uniform(rng, -1.95, 1.95), uniform(rng, -2.5, 2.5)});
  const Hull hull = convex_hull(pts);
  if (hull.vertices.size() < 3) throw NetworkError("degenerate ring");
  NetworkBuilder b;
  std::vector<std::string> cycle;
  std::size_t ia = 0, iz = 0;
  for (std::size_t k = 0; k < hull.vertices.size(); ++k) {
    const Point p = hull.vertices[k];
    std::string id = "p" + std::to_string(k);
    if (p == Point{-2, 0}) {
      id = "a";
      ia = k;
    } else if (p == Point{2, 0}) {
      id = "z";
      iz = k;
    }
    b.node(id, p);
    cycle.push_back(id);
  }
  std::vector<std::string> links;
  for (std::size_t k = 0; k < cycle.size(); ++k) links.push_back(b.link(cycle[k], cycle[(k + 1) % cycle.size()]));
  b.ring(cycle, links, ia, iz);
  if (with_chord) b.single("a", "z", {b.link("a", "z")});
  return b.build({ConvexRegion::disk({0, 0}, 6)});
}

Outcome ring_invariance() {
  std::mt19937_64 rng(3);
  std::vector<double> values;
  std::vector<Estimate> estimates;
  const auto dp = DisasterParams::half_plane(0.3);
  int tried = 0;
  while (values.size() < 50) {
    ++tried;
    std::mt19937_64 local(rng());
    std::optional<Network> net;
    try {
      net = random_ring_through_endpoints(local, false);
    } catch (const NetworkError&) {
      continue;
    }
    values.push_back(pr_ring(*net, dp, "a~z").value);
    estimates.push_back(estimate_event(*net, PairEvent{"a", "z"}, dp, sim(200000, 1 + values.size())));
  }
  bool identical = true;
  for (double v : values) identical = identical && v == values.front();
  double worst = 0.0;
  for (std::size_t x = 0; x < estimates.size(); ++x) {
    for (std::size_t y = x + 1; y < estimates.size(); ++y) {
      const double gap = std::abs(estimates[x].mean - estimates[y].mean);
      worst = std::max(worst, gap / (3.0 * (estimates[x].std_error + estimates[y].std_error)));
    }
  }
  Outcome o;
  o.pass = identical && worst <= 1.0;
  o.detail = fmt("50 rings (%d drawn), pr_ring %s (%.17g), worst pairwise gap %.2f of the 3 SE overlap bound",
                 tried, identical ? "bit-identical" : "NOT identical", values.front(), worst);
  return o;
}

Outcome loop_equivalence() {
  std::mt19937_64 rng(4);
  int cases = 0, equal = 0;
  double worst = 0.0;
  auto check = [&](double ring, double chord) {
    ++cases;
    if (same_to_12_digits(ring, chord)) ++equal;
    worst = std::max(worst, std::abs(ring - chord) / std::abs(chord));
  };
  for (int k = 0; k < 50; ++k) {
    std::mt19937_64 local(rng());
    std::optional<Network> net;
    try {
      net = random_ring_through_endpoints(local, true);
    } catch (const NetworkError&) {
      continue;
    }
    for (double w : {0.0, 0.5, 1.5}) {
      const auto dp = DisasterParams::half_plane(w);
      check(pr_ring(*net, dp, "a~z").value, pr_single_route(*net, dp, "a~z#2").value);
    }
  }
  for (int k = 0; k < 50; ++k) {
    NetworkBuilder b;
    const std::size_t n = 4 + static_cast<std::size_t>(uniform(rng, 0.0, 6.0));
    const auto r = fixtures::detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
    const std::size_t j = 1 + static_cast<std::size_t>(uniform(rng, 0.0, n - 1.0));
    const std::string ring = b.ring(r.cycle, r.links, 0, j);
    const std::string chord = b.single(r.cycle[0], r.cycle[j], {b.link(r.cycle[0], r.cycle[j])});
    const Network net = b.build({ConvexRegion::disk({0, 0}, uniform(rng, 3.5, 8.0))});
    for (double w : {0.0, 0.5, 1.5}) {
      const auto dp = DisasterParams::half_plane(w);
      check(pr_ring(net, dp, ring).value, pr_single_route(net, dp, chord).value);
    }
  }
  Outcome o;
  o.pass = equal == cases && cases >= 200;
  o.detail = fmt("%d/%d ring/chord pairs equal to 12 digits, worst relative gap %.1e", equal, cases, worst);
  return o;
}

Outcome backup_reduction() {
  std::mt19937_64 rng(5);
  int ok = 0, identical = 0;
  const int instances = 10;
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    NetworkBuilder b;
    const std::size_t n = 8 + static_cast<std::size_t>(uniform(rng, 0.0, 4.0));
    const auto r = fixtures::detail::ring(b, rng, n, "k", uniform(rng, 1.0, 3.0));
    std::vector<std::string> links;
    fixtures::detail::stub(b, rng, r.cycle[0], "i", r.angles[0], uniform(rng, 0.5, 2.0), links);
    b.single("i", r.cycle[0], links);
    std::vector<std::size_t> idx(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) idx[t] = t + 1;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::string> dests;
    std::string ring_id;
    for (int d = 0; d < 5; ++d) {
      const std::string id = b.ring(r.cycle, r.links, 0, idx[d]);
      if (ring_id.empty()) ring_id = id;
      dests.push_back(r.cycle[idx[d]]);
    }
    const Network net = b.build({ConvexRegion::disk({0, 0}, 1.05 * b.reach({0, 0}))});
    const auto [cw, ccw] = nearest_ring_destinations(net, ring_id, r.cycle[0], dests);
    const auto dp = DisasterParams::half_plane(uniform(rng, 0.0, 0.3));
    const SimConfig cfg = sim(200000, 500 + k);
    const Estimate five = estimate_event(net, AnyDestEvent{"i", dests}, dp, cfg);
    const Estimate two = estimate_event(net, AnyDestEvent{"i", {cw, ccw}}, dp, cfg);
    const double gap = std::abs(five.mean - two.mean) / (2.0 * std::max(five.std_error, two.std_error));
    worst = std::max(worst, gap);
    if (gap <= 1.0) ++ok;
    if (five == two) ++identical;
  }
  Outcome o;
  o.pass = ok == instances;
  o.detail = fmt("%d/%d instances within 2 SE (%d per-trial identical), worst gap %.2f of the bound", ok, instances,
                 identical, worst);
  return o;
}

Outcome approximation_ordering() {
  Outcome o;
  int pairs = 0, ordered = 0;
  for (double scale : {kTreeFixture.area_scale, 1.5}) {
    GeneratorParams gp = kTreeFixture;
    gp.area_scale = scale;
    const Network net = generate("tree", gp);
    const double unit = mean_pair_distance(net);
    for (double w : {0.0, 0.25 * unit}) {
      for (const RankRow& r : rank_pairs(net, DisasterParams::half_plane(w))) {
        ++pairs;
        if (!r.simulated && r.independent <= r.exact && r.exact <= r.line) ++ordered;
      }
    }
  }

  const Network net = generate("tree", kTreeFixture);
  const auto pairs_list = net.analysis_pairs();
  AllOfEvent all;
  for (const auto& [a, b] : pairs_list) all.pairs.emplace_back(net.nodes()[a].id, net.nodes()[b].id);
  const CompiledEvent compiled(net, all);
  const SimConfig cfg = sim(1000000, 1);
  const auto dp = DisasterParams::half_plane();
  const SimulationTally tally = simulate(net, compiled, 0.0, cfg, model_disaster(dp));
  std::size_t covered = 0;
  double z_sum = 0.0;
  for (std::size_t p = 0; p < pairs_list.size(); ++p) {
    const Estimate e = bernoulli_estimate(tally.path_alive[p], tally.trials, cfg.confidence);
    const auto legs = net.compose(pairs_list[p].first, pairs_list[p].second);
    const double exact = pr_composition(net, dp, *legs).value;
    if (e.ci_low() <= exact && exact <= e.ci_high()) ++covered;
    z_sum += (e.mean - exact) / e.std_error;
  }
  const double share = static_cast<double>(covered) / static_cast<double>(pairs_list.size());
  o.pass = ordered == pairs && share >= 0.95;
  // Pairs share every sampled disaster, so their errors move together; the
  // mean z shows that common component.
  o.detail = fmt("ordering holds for %d/%d pair rows; 95%% CI covers exact for %zu/%zu pairs (%.1f%%), mean z %.2f",
                 ordered, pairs, covered, pairs_list.size(), 100.0 * share, z_sum / static_cast<double>(pairs_list.size()));
  return o;
}

Outcome validity_study_trend() {
  const Network net = generate("tree", kTreeFixture);
  const std::vector<double> lambdas{0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  const std::vector<double> ws{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
  const auto start = std::chrono::steady_clock::now();
  const ValidityReport rep = validity_study(net, lambdas, ws, sim(100000, 1));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst_valid = 0.0;
  for (std::size_t a = 0; a < lambdas.size(); ++a) {
    std::string line = fmt("lambda %-4g", lambdas[a]);
    for (std::size_t b = 0; b < ws.size(); ++b) line += fmt(" %7.4f", rep.rows[a * ws.size() + b].mean_rel_abs_error);
    note(line);
  }
  for (const ValidityRow& row : rep.rows) {
    if (row.lambda <= 0.5 || row.w < 1.0) worst_valid = std::max(worst_valid, row.mean_rel_abs_error);
  }
  // Diagonal cells (lambdas[k], ws[k]); the trend is checked from the last
  // cell outside the large-error region onwards.
  bool rising = true;
  std::string diag;
  double prev = -1.0;
  bool entered = false;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double e = rep.rows[k * ws.size() + k].mean_rel_abs_error;
    const bool inside = lambdas[k] >= 0.5 && ws[k] >= 1.0;
    const bool next_inside = k + 1 < lambdas.size() && lambdas[k + 1] >= 0.5 && ws[k + 1] >= 1.0;
    if (inside || next_inside) {
      if (entered && !(e > prev)) rising = false;
      entered = true;
      prev = e;
      diag += fmt("%s%.4f", diag.empty() ? "" : " < ", e);
    }
  }
  Outcome o;
  o.pass = worst_valid <= 0.02 && rising && secs < 600.0;
  o.detail = fmt("max error where lambda <= 0.5 or w < 1: %.4f; diagonal %s%s; %zu pairs; %.0f s", worst_valid,
                 diag.c_str(), rising ? "" : " NOT rising", rep.rows.front().pairs_used, secs);
  return o;
}

Outcome placement_trends() {
  Outcome o;
  const double step = std::numbers::pi / 180.0;
  bool symmetric = true;
  std::string by_nodes, by_radius;
  double prev = -1.0;
  bool nodes_ok = true;
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    auto m = RingPlanModel::uniform(1.0, n);
    m.grid_step = step;
    const auto r = optimize_backup(m);
    const double d = r.e1 - *r.e2;
    const double gap = std::abs(std::remainder(*r.alpha2 - r.primary, 2.0 * std::numbers::pi));
    symmetric = symmetric && std::abs(gap - std::numbers::pi) <= step + 1e-9;
    nodes_ok = nodes_ok && d >= prev;
    prev = d;
    by_nodes += fmt("%s%zu:%.4f", by_nodes.empty() ? "" : " ", n, d);
  }
  prev = -1.0;
  bool radius_ok = true;
  for (double radius : {1.0, 2.0, 3.0, 4.0}) {
    auto m = RingPlanModel::uniform(radius, 8);
    m.grid_step = step;
    m.area = AreaOfInterest{ConvexRegion::disk({0, 0}, 10.0)};
    const auto r = optimize_backup(m);
    const double d = r.e1 - *r.e2;
    const double gap = std::abs(std::remainder(*r.alpha2 - r.primary, 2.0 * std::numbers::pi));
    symmetric = symmetric && std::abs(gap - std::numbers::pi) <= step + 1e-9;
    radius_ok = radius_ok && d >= prev;
    prev = d;
    by_radius += fmt("%s%g:%.4f", by_radius.empty() ? "" : " ", radius, d);
  }
  o.pass = nodes_ok && radius_ok && symmetric;
  o.detail = fmt("E1*-E2* by nodes {%s}%s; by r_l in A0 radius 10 {%s}%s; backup opposite %s", by_nodes.c_str(),
                 nodes_ok ? "" : " NOT monotone", by_radius.c_str(), radius_ok ? "" : " NOT monotone",
                 symmetric ? "within 1 degree" : "FAILED");
  return o;
}

double oracle_perimeter(const std::vector<Point>& ccw) {
  double total = 0.0;
  for (std::size_t k = 0; k < ccw.size(); ++k) total += distance(ccw[k], ccw[(k + 1) % ccw.size()]);
  return total;
}

Outcome geometry_kernel() {
  std::mt19937_64 rng(9);
  double worst_cauchy = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto pts = fixtures::random_convex(rng, 3 + k % 20, {uniform(rng, -3, 3), uniform(rng, -3, 3)},
                                             uniform(rng, 0.2, 5.0));
    const Hull hull = convex_hull(pts);
    // Midpoint rule on the vertex-maximum support function.
    const int steps = 1 << 16;
    double integral = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double t = -std::numbers::pi + 2.0 * std::numbers::pi * (s + 0.5) / steps;
      double h = -std::numeric_limits<double>::infinity();
      for (const Point& p : pts) h = std::max(h, dot(p, direction(t)));
      integral += h;
    }
    integral *= 2.0 * std::numbers::pi / steps;
    worst_cauchy = std::max(worst_cauchy, std::abs(integral - hull_perimeter(hull)) / hull_perimeter(hull));
  }

  int cases = 0, ok = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<Point> pts;
    const int n = 1 + k % 30;
    for (int t = 0; t < n; ++t) pts.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
    const Hull h = convex_hull(pts);
    const Hull again = convex_hull(h.vertices);
    ++cases;
    if (again.vertices == h.vertices) ++ok;

    const std::vector<Point> subset(pts.begin(), pts.begin() + (n + 1) / 2);
    std::vector<Point> superset = pts;
    superset.push_back({uniform(rng, -8, 8), uniform(rng, -8, 8)});
    const double eps = 1e-12 * 20.0;
    ++cases;
    if (hull_perimeter(convex_hull(subset)) <= hull_perimeter(h) + eps &&
        hull_perimeter(h) <= hull_perimeter(convex_hull(superset)) + eps) {
      ++ok;
    }
    ++cases;
    if (h.vertices.size() >= 3 && std::abs(oracle_perimeter(h.vertices) - hull_perimeter(h)) <= eps) {
      ++ok;
    } else if (h.vertices.size() < 3) {
      const double expect = h.vertices.size() == 2 ? 2.0 * distance(h.vertices[0], h.vertices[1]) : 0.0;
      if (std::abs(expect - hull_perimeter(h)) <= eps) ++ok;
    }
  }
  Outcome o;
  o.pass = worst_cauchy <= 1e-6 && ok == cases;
  o.detail = fmt("Cauchy worst relative error %.1e on 100 polygons; %d/%d idempotence/monotonicity cases", worst_cauchy,
                 ok, cases);
  return o;
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.push_back(e.path().filename().string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b) {
    why = "file sets differ in " + a.string();
    return false;
  }
  for (const auto& n : names_a) {
    if (cli::read_file((a / n).string()) != cli::read_file((b / n).string())) {
      why = "bytes differ: " + (a / n).string();
      return false;
    }
  }
  return true;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "geosurv-acceptance";
  fs::remove_all(root);
  std::ostringstream out, err;
  auto run = [&](std::vector<std::string> args) { return cli::run(args, out, err); };
  const std::string net = (root / "gen/network.json").string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"gen", {"generate", "--template", "ring-hub", "--nodes", "8", "--seed", "2"}},
      {"analyze", {"analyze", "--network", net, "--w", "0.2"}},
      {"rank", {"rank", "--network", net}},
      {"simulate",
       {"simulate", "--network", net, "--event", "pair:s1,s3", "--event", "count:lc:k1,k2,s3", "--trials", "30000",
        "--seed", "5", "--parallelism", "3"}},
      {"sine", {"simulate", "--network", net, "--event", "pair:s1,s3", "--lambda", "0.7", "--w", "0.4", "--trials",
                "20000"}},
      {"validity", {"validate-strip", "--network", net, "--lambda", "0.5,1", "--w-list", "0,1", "--trials", "5000"}},
      {"backup", {"optimize-backup", "--radius", "1,2", "--nodes", "6", "--grid-step-deg", "15", "--dump-grid"}},
  };
  int replayed = 0;
  for (const auto& [name, args] : runs) {
    auto with_out = args;
    with_out.push_back("--out");
    with_out.push_back((root / name).string());
    if (run(with_out) != 0) {
      o.pass = false;
      o.detail = name + " failed: " + err.str();
      return o;
    }
    const fs::path again = root / (name + "-replay");
    std::string why;
    if (run({"replay", "--manifest", (root / name / "manifest.json").string(), "--out", again.string()}) != 0 ||
        !same_tree(root / name, again, why)) {
      o.pass = false;
      o.detail = name + " replay differs: " + why + err.str();
      return o;
    }
    ++replayed;
  }

  int sweeps = 0, stable = 0;
  const Network ring_hub = generate("ring-hub", {.subscribers = 10, .seed = 6});
  const Network tree = generate("tree", {.subscribers = 10, .seed = 6});
  const std::vector<std::pair<const Network*, std::string>> events{
      {&ring_hub, "pair:s1,s6"}, {&ring_hub, "count:lc:k1,k2,s4"}, {&tree, "all:s1,s2;s3,s4"}, {&tree, "any:s1:s2,s5"}};
  for (const auto& [n, text] : events) {
    std::vector<Estimate> got;
    for (unsigned p : {1u, 2u, 8u}) got.push_back(estimate_event(*n, parse_event(text), DisasterParams::half_plane(0.3), sim(50000, 8, p)));
    ++sweeps;
    if (got[0] == got[1] && got[0] == got[2]) ++stable;
  }
  std::vector<ValidityReport> studies;
  for (unsigned p : {1u, 2u, 8u}) studies.push_back(validity_study(tree, {0.5}, {1.0}, sim(20000, 8, p)));
  ++sweeps;
  if (studies[0].rows[0].mean_rel_abs_error == studies[1].rows[0].mean_rel_abs_error &&
      studies[0].rows[0].mean_rel_abs_error == studies[2].rows[0].mean_rel_abs_error) {
    ++stable;
  }
  fs::remove_all(root);
  o.pass = replayed == static_cast<int>(runs.size()) && stable == sweeps;
  o.detail = fmt("%d/%zu manifest replays byte-identical; %d/%d estimates unchanged over parallelism {1,2,8}", replayed,
                 runs.size(), stable, sweeps);
  return o;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  report(1, "closed forms agree with simulation", closed_form_agreement());
  report(2, "exact fixture values", exact_fixture_values());
  report(3, "ring invariance", ring_invariance());
  report(4, "loop equivalence", loop_equivalence());
  report(5, "backup reduction to the two nearest destinations", backup_reduction());
  report(6, "approximation ordering and simulation overlay", approximation_ordering());
  report(7, "strip-model validity study", validity_study_trend());
  report(8, "backup-placement trends", placement_trends());
  report(9, "geometry kernel", geometry_kernel());
  report(10, "determinism", determinism());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria failed; total %.0f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
