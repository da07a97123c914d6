#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "geosurv/geometry.hpp"
#include "geosurv/network.hpp"
#include "geosurv/survivability.hpp"

namespace geosurv {

struct DisasterSample {
  double p = 0.0;
  double theta = 0.0;
  double w = 0.0;
};

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  unsigned parallelism = 1;
  // Extra subdivision of the sine-boundary polyline sampling step.
  double sine_refine = 1.0;

  static constexpr std::uint64_t kMinTrials = 100;

  void validate() const {
    if (trials < kMinTrials) throw ModelError("trials must be at least 100");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ModelError("confidence must lie in (0, 1)");
    if (parallelism == 0) throw ModelError("parallelism must be positive");
    if (!(sine_refine >= 1.0)) throw ModelError("sine refinement must be >= 1");
  }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t trials = 0;

  double ci_low() const { return mean - ci_halfwidth; }
  double ci_high() const { return mean + ci_halfwidth; }

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

inline double z_value(double confidence) {
  const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 0.5 + 0.5 * confidence);
}

/// Draws (p, theta) uniformly from the strips of breadth w meeting the
/// region, by rejection from an angle-uniform bounding proposal.
/// `proposals`, when given, is incremented once per raw draw.
template <typename Engine>
DisasterSample sample_strip(const ConvexRegion& region, double w, Engine& rng,
                            std::uint64_t* proposals = nullptr) {
  if (w < 0.0) throw ModelError("strip breadth w must be >= 0");
  const double reach = region.max_support() + 0.5 * w;
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> offset(-reach, reach);
  for (;;) {
    const double theta = angle(rng);
    const double p = offset(rng);
    if (proposals) ++*proposals;
    if (strip_intersects(region, Strip{p, theta, w})) return {p, theta, w};
  }
}

/// Destroyed area equal to a strip.
struct StripDisaster {
  Strip strip;

  bool hits(Point x) const {
    return std::abs(dot(x, direction(strip.theta)) - strip.p) <= 0.5 * strip.w;
  }

  bool hits(const Polyline& g) const {
    const Point u = direction(strip.theta);
    const double lo = strip.p - 0.5 * strip.w;
    const double hi = strip.p + 0.5 * strip.w;
    const auto& v = g.vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double a = dot(v[k], u);
      const double b = k + 1 < v.size() ? dot(v[k + 1], u) : a;
      if (std::max(a, b) >= lo && std::min(a, b) <= hi) return true;
    }
    return false;
  }
};

/// Disaster boundary following a sine wave of the given amplitude and
/// wavelength around the line (p, theta); tangential coordinate measured
/// along (cos(theta + pi/2), sin(theta + pi/2)).
struct SineBoundary {
  double amplitude = 0.0;
  double wavelength = 1.0;
  double phase = 0.0;
  HalfPlane base;
};

struct SineDisaster {
  SineBoundary wave;
  double refine = 1.0;

  double offset(Point x) const { return dot(x, direction(wave.base.theta)) - wave.base.p; }

  bool hits(Point x) const {
    const Point t = direction(wave.base.theta + 0.5 * std::numbers::pi);
    const double arg = 2.0 * std::numbers::pi * (dot(x, t) + wave.phase) / wave.wavelength;
    return offset(x) >= wave.amplitude * std::sin(arg);
  }

  // Sampled at arc-length step min(wavelength/20, length/10); the only
  // discretised test in the oracle.
  bool hits(const Polyline& g) const {
    const auto& v = g.vertices;
    double hi = -std::numeric_limits<double>::infinity();
    for (const Point& x : v) {
      const double o = offset(x);
      if (o >= wave.amplitude) return true;
      hi = std::max(hi, o);
    }
    if (hi < -wave.amplitude) return false;
    for (const Point& x : v) {
      if (hits(x)) return true;
    }
    const double step = std::min(wave.wavelength / 20.0, length(g) / 10.0) / refine;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      const double seg = distance(v[k], v[k + 1]);
      const auto pieces = static_cast<std::size_t>(std::ceil(seg / step));
      for (std::size_t s = 1; s < pieces; ++s) {
        const double f = static_cast<double>(s) / static_cast<double>(pieces);
        if (hits(v[k] + f * (v[k + 1] - v[k]))) return true;
      }
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Events

struct PairEvent {
  std::string i, j;
};
struct AllOfEvent {
  std::vector<std::pair<std::string, std::string>> pairs;
};
struct AnyDestEvent {
  std::string i;
  std::vector<std::string> dests;
};
struct ThroughAnyEvent {
  std::string i, j;
  std::vector<std::string> via;
};
struct DisconnectedCountEvent {
  std::string i;
  std::vector<std::string> dests;
};

using EventSpec = std::variant<PairEvent, AllOfEvent, AnyDestEvent, ThroughAnyEvent, DisconnectedCountEvent>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

}  // namespace detail

/// Text form used on the command line and as CSV event ids:
///   pair:I,J  all:I,J;K,L  any:I:J1,J2  through:I:J:K1,K2  count:I:J1,J2
inline EventSpec parse_event(const std::string& text) {
  const auto bad = [&] { return ModelError("malformed event spec: " + text); };
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw bad();
  const std::string kind = text.substr(0, colon);
  const auto parts = detail::split(text.substr(colon + 1), ':');
  auto nonempty = [&](const std::vector<std::string>& v) {
    if (v.empty()) throw bad();
    for (const auto& s : v) {
      if (s.empty()) throw bad();
    }
    return v;
  };
  if (kind == "pair") {
    if (parts.size() != 1) throw bad();
    const auto ij = nonempty(detail::split(parts[0], ','));
    if (ij.size() != 2) throw bad();
    return PairEvent{ij[0], ij[1]};
  }
  if (kind == "all") {
    if (parts.size() != 1) throw bad();
    AllOfEvent ev;
    for (const auto& pair : nonempty(detail::split(parts[0], ';'))) {
      const auto ij = nonempty(detail::split(pair, ','));
      if (ij.size() != 2) throw bad();
      ev.pairs.emplace_back(ij[0], ij[1]);
    }
    return ev;
  }
  if (kind == "any" || kind == "count") {
    if (parts.size() != 2 || parts[0].empty()) throw bad();
    auto dests = nonempty(detail::split(parts[1], ','));
    if (kind == "any") return AnyDestEvent{parts[0], std::move(dests)};
    return DisconnectedCountEvent{parts[0], std::move(dests)};
  }
  if (kind == "through") {
    if (parts.size() != 3 || parts[0].empty() || parts[1].empty()) throw bad();
    return ThroughAnyEvent{parts[0], parts[1], nonempty(detail::split(parts[2], ','))};
  }
  throw bad();
}

inline std::string to_string(const EventSpec& ev) {
  struct Visitor {
    std::string operator()(const PairEvent& e) const { return "pair:" + e.i + "," + e.j; }
    std::string operator()(const AllOfEvent& e) const {
      std::vector<std::string> items;
      for (const auto& [a, b] : e.pairs) items.push_back(a + "," + b);
      return "all:" + detail::join(items, ';');
    }
    std::string operator()(const AnyDestEvent& e) const { return "any:" + e.i + ":" + detail::join(e.dests, ','); }
    std::string operator()(const ThroughAnyEvent& e) const {
      return "through:" + e.i + ":" + e.j + ":" + detail::join(e.via, ',');
    }
    std::string operator()(const DisconnectedCountEvent& e) const {
      return "count:" + e.i + ":" + detail::join(e.dests, ',');
    }
  };
  return std::visit(Visitor{}, ev);
}

/// An event lowered to paths of leg connectivity checks. A path holds when
/// all of its legs stay connected; the event combines paths by `mode`.
class CompiledEvent {
 public:
  enum class Mode { All, Any, Count };

  struct Atom {
    std::size_t graph = 0;
    std::size_t from = 0;
    std::size_t to = 0;
  };

  CompiledEvent(const Network& net, const EventSpec& ev) : net_(&net) {
    struct Visitor {
      CompiledEvent& self;
      void operator()(const PairEvent& e) const {
        self.mode_ = Mode::All;
        self.add_path(e.i, e.j);
      }
      void operator()(const AllOfEvent& e) const {
        self.mode_ = Mode::All;
        for (const auto& [a, b] : e.pairs) self.add_path(a, b);
      }
      void operator()(const AnyDestEvent& e) const {
        self.mode_ = Mode::Any;
        for (const auto& j : e.dests) self.add_path(e.i, j);
      }
      void operator()(const ThroughAnyEvent& e) const {
        self.mode_ = Mode::Any;
        for (const auto& k : e.via) {
          self.add_path(e.i, k);
          const std::vector<std::size_t> first = self.paths_.back();
          self.paths_.pop_back();
          self.add_path(k, e.j);
          self.paths_.back().insert(self.paths_.back().begin(), first.begin(), first.end());
        }
      }
      void operator()(const DisconnectedCountEvent& e) const {
        self.mode_ = Mode::Count;
        for (const auto& j : e.dests) self.add_path(e.i, j);
      }
    };
    std::visit(Visitor{*this}, ev);
    if (paths_.empty()) throw ModelError("event has no targets: " + to_string(ev));

    std::vector<char> node_seen(net.nodes().size(), 0);
    std::vector<char> link_seen(net.links().size(), 0);
    for (const Atom& a : atoms_) {
      for (std::size_t n : {a.from, a.to}) {
        if (!node_seen[n]) {
          node_seen[n] = 1;
          nodes_.push_back(n);
        }
      }
      for (std::size_t n : graphs_[a.graph].nodes()) {
        if (!node_seen[n]) {
          node_seen[n] = 1;
          nodes_.push_back(n);
        }
      }
      for (std::size_t l : graphs_[a.graph].links()) {
        if (!link_seen[l]) {
          link_seen[l] = 1;
          links_.push_back(l);
        }
      }
    }
  }

  Mode mode() const { return mode_; }
  std::size_t path_count() const { return paths_.size(); }
  const std::vector<std::vector<std::size_t>>& paths() const { return paths_; }

  struct Scratch {
    std::vector<char> node_dead;
    std::vector<char> link_dead;
    std::vector<signed char> atom_state;
    std::vector<char> path_alive;
  };

  Scratch make_scratch() const {
    return {std::vector<char>(net_->nodes().size(), 0), std::vector<char>(net_->links().size(), 0),
            std::vector<signed char>(atoms_.size(), -1), std::vector<char>(paths_.size(), 0)};
  }

  /// Evaluates every path under `disaster`; returns the event value (0/1 for
  /// All and Any, the number of broken paths for Count).
  template <typename Disaster>
  std::uint64_t evaluate(const Disaster& disaster, Scratch& s) const {
    for (std::size_t n : nodes_) s.node_dead[n] = disaster.hits(net_->nodes()[n].position);
    for (std::size_t l : links_) s.link_dead[l] = disaster.hits(net_->links()[l].geometry);
    std::fill(s.atom_state.begin(), s.atom_state.end(), -1);
    std::uint64_t alive = 0;
    for (std::size_t p = 0; p < paths_.size(); ++p) {
      bool ok = true;
      for (std::size_t a : paths_[p]) {
        if (s.atom_state[a] < 0) {
          const Atom& atom = atoms_[a];
          s.atom_state[a] = graphs_[atom.graph].connected(atom.from, atom.to, s.node_dead, s.link_dead) ? 1 : 0;
        }
        if (!s.atom_state[a]) {
          ok = false;
          break;
        }
      }
      s.path_alive[p] = ok;
      alive += ok;
    }
    switch (mode_) {
      case Mode::All:
        return alive == paths_.size();
      case Mode::Any:
        return alive > 0;
      case Mode::Count:
        return paths_.size() - alive;
    }
    return 0;
  }

 private:
  std::size_t graph_for_config(std::size_t c) {
    for (std::size_t g = 0; g < graph_configs_.size(); ++g) {
      if (graph_configs_[g] == c) return g;
    }
    graphs_.push_back(c == kFullGraph ? net_->full_subgraph() : net_->config_subgraph(c));
    graph_configs_.push_back(c);
    return graphs_.size() - 1;
  }

  std::size_t atom_for(std::size_t graph, std::size_t from, std::size_t to) {
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      const Atom& x = atoms_[a];
      if (x.graph == graph && ((x.from == from && x.to == to) || (x.from == to && x.to == from))) return a;
    }
    atoms_.push_back({graph, from, to});
    return atoms_.size() - 1;
  }

  void add_path(const std::string& i, const std::string& j) {
    const std::size_t a = net_->node_index(i);
    const std::size_t b = net_->node_index(j);
    std::vector<std::size_t> path;
    const auto legs = net_->compose(a, b);
    if (legs && !legs->empty()) {
      for (const Leg& leg : *legs) path.push_back(atom_for(graph_for_config(leg.config), leg.from, leg.to));
    } else {
      // No declared composition: plain reachability over the whole network.
      path.push_back(atom_for(graph_for_config(kFullGraph), a, b));
    }
    paths_.push_back(std::move(path));
  }

  static constexpr std::size_t kFullGraph = std::numeric_limits<std::size_t>::max();

  const Network* net_;
  Mode mode_ = Mode::All;
  std::vector<Subgraph> graphs_;
  std::vector<std::size_t> graph_configs_;
  std::vector<Atom> atoms_;
  std::vector<std::vector<std::size_t>> paths_;
  std::vector<std::size_t> nodes_;
  std::vector<std::size_t> links_;
};

/// Integer tallies of a simulation run; sums are order-independent.
struct SimulationTally {
  std::uint64_t trials = 0;
  std::uint64_t proposals = 0;
  std::uint64_t event_sum = 0;
  std::uint64_t event_sumsq = 0;
  std::vector<std::uint64_t> path_alive;
};

namespace detail {

inline constexpr std::uint64_t kBlockTrials = 1024;

/// Independent engine for (seed, block, stream). Blocks are the unit of work
/// handed to threads, so the sampled set does not depend on parallelism.
inline std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// Runs `cfg.trials` trials. Each trial draws a strip of breadth `breadth`
/// meeting A0, builds a disaster with `make(sample, aux_engine)` and
/// evaluates the event.
template <typename Factory>
SimulationTally simulate(const Network& net, const CompiledEvent& event, double breadth, const SimConfig& cfg,
                         Factory make) {
  cfg.validate();
  const std::uint64_t blocks = (cfg.trials + detail::kBlockTrials - 1) / detail::kBlockTrials;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.parallelism, blocks));
  std::vector<SimulationTally> partial(workers);

  auto work = [&](unsigned t) {
    SimulationTally& tally = partial[t];
    tally.path_alive.assign(event.path_count(), 0);
    auto scratch = event.make_scratch();
    for (std::uint64_t b = t; b < blocks; b += workers) {
      auto main = detail::block_engine(cfg.seed, b, 0);
      auto aux = detail::block_engine(cfg.seed, b, 1);
      const std::uint64_t first = b * detail::kBlockTrials;
      const std::uint64_t last = std::min(cfg.trials, first + detail::kBlockTrials);
      for (std::uint64_t trial = first; trial < last; ++trial) {
        const DisasterSample sample = sample_strip(net.area().region, breadth, main, &tally.proposals);
        const auto disaster = make(sample, aux);
        const std::uint64_t v = event.evaluate(disaster, scratch);
        tally.event_sum += v;
        tally.event_sumsq += v * v;
        for (std::size_t p = 0; p < scratch.path_alive.size(); ++p) tally.path_alive[p] += scratch.path_alive[p];
        ++tally.trials;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  SimulationTally total;
  total.path_alive.assign(event.path_count(), 0);
  for (const SimulationTally& t : partial) {
    total.trials += t.trials;
    total.proposals += t.proposals;
    total.event_sum += t.event_sum;
    total.event_sumsq += t.event_sumsq;
    for (std::size_t p = 0; p < t.path_alive.size(); ++p) total.path_alive[p] += t.path_alive[p];
  }
  return total;
}

inline Estimate bernoulli_estimate(std::uint64_t successes, std::uint64_t trials, double confidence) {
  const double n = static_cast<double>(trials);
  const double mean = static_cast<double>(successes) / n;
  const double se = std::sqrt(mean * (1.0 - mean) / n);
  return {mean, se, z_value(confidence) * se, trials};
}

inline Estimate count_estimate(std::uint64_t sum, std::uint64_t sumsq, std::uint64_t trials, double confidence) {
  const double n = static_cast<double>(trials);
  const double mean = static_cast<double>(sum) / n;
  const double var = (static_cast<double>(sumsq) - static_cast<double>(sum) * mean) / (n - 1.0);
  const double se = std::sqrt(std::max(var, 0.0) / n);
  return {mean, se, z_value(confidence) * se, trials};
}

inline Estimate to_estimate(const CompiledEvent& event, const SimulationTally& tally, double confidence) {
  if (event.mode() == CompiledEvent::Mode::Count) {
    return count_estimate(tally.event_sum, tally.event_sumsq, tally.trials, confidence);
  }
  return bernoulli_estimate(tally.event_sum, tally.trials, confidence);
}

/// Disaster for one sampled strip under the closed-form model: the closed
/// half-plane from the strip's left boundary on, or the strip itself.
inline auto model_disaster(const DisasterParams& dp) {
  return [dp](const DisasterSample& s, std::mt19937_64&) {
    struct Either {
      bool wide;
      HalfPlaneDisaster half;
      StripDisaster strip;
      bool hits(Point x) const { return wide ? strip.hits(x) : half.hits(x); }
      bool hits(const Polyline& g) const { return wide ? strip.hits(g) : half.hits(g); }
    };
    return Either{dp.wide_strip.has_value(), HalfPlaneDisaster{HalfPlane{s.p - 0.5 * s.w, s.theta}},
                  StripDisaster{Strip{s.p, s.theta, s.w}}};
  };
}

inline Estimate estimate_event(const Network& net, const EventSpec& event, const DisasterParams& dp,
                               const SimConfig& cfg) {
  denominator(net.area(), dp);
  const CompiledEvent compiled(net, event);
  return to_estimate(compiled, simulate(net, compiled, dp.breadth(), cfg, model_disaster(dp)), cfg.confidence);
}

/// Sine-wave boundary factory: amplitude w/2 around the sampled strip's
/// midparallel, phase uniform on [0, wavelength).
inline auto sine_disaster(double wavelength, double refine) {
  return [wavelength, refine](const DisasterSample& s, std::mt19937_64& aux) {
    std::uniform_real_distribution<double> phase(0.0, wavelength);
    return SineDisaster{SineBoundary{0.5 * s.w, wavelength, phase(aux), HalfPlane{s.p, s.theta}}, refine};
  };
}

inline Estimate estimate_sine(const Network& net, double wavelength, double w, const PairEvent& pair,
                              const SimConfig& cfg) {
  if (!(wavelength > 0.0)) throw ModelError("wavelength must be positive");
  if (w < 0.0) throw ModelError("strip breadth w must be >= 0");
  const CompiledEvent compiled(net, pair);
  return to_estimate(compiled, simulate(net, compiled, w, cfg, sine_disaster(wavelength, cfg.sine_refine)),
                     cfg.confidence);
}

// ---------------------------------------------------------------------------
// Strip-model validity study

struct ValidityRow {
  double lambda = 0.0;
  double w = 0.0;
  double mean_rel_abs_error = 0.0;
  std::size_t pairs_used = 0;
};

struct ValidityReport {
  double unit = 0.0;  // mean distance between distinct analysed nodes
  std::vector<ValidityRow> rows;
  std::vector<std::string> warnings;
};

inline double mean_pair_distance(const Network& net) {
  const auto pairs = net.analysis_pairs();
  if (pairs.empty()) throw ModelError("validity study needs at least two nodes");
  double total = 0.0;
  for (const auto& [a, b] : pairs) total += distance(net.nodes()[a].position, net.nodes()[b].position);
  return total / static_cast<double>(pairs.size());
}

/// Mean relative absolute error of the strip model against a sine-wave
/// boundary, for each (lambda, w) cell. Grid values are in units of the mean
/// pair distance. Every cell uses the same seed.
inline ValidityReport validity_study(const Network& net, const std::vector<double>& lambdas,
                                     const std::vector<double>& ws, const SimConfig& cfg) {
  if (lambdas.empty() || ws.empty()) throw ModelError("validity grids must be non-empty");
  ValidityReport report;
  report.unit = mean_pair_distance(net);
  const auto pairs = net.analysis_pairs();
  AllOfEvent all;
  for (const auto& [a, b] : pairs) all.pairs.emplace_back(net.nodes()[a].id, net.nodes()[b].id);
  const CompiledEvent compiled(net, all);

  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw ModelError("wavelength must be positive");
    for (double w : ws) {
      if (w < 0.0) throw ModelError("strip breadth w must be >= 0");
      const double wave = lambda * report.unit;
      const double breadth = w * report.unit;
      const SimulationTally tally =
          simulate(net, compiled, breadth, cfg, sine_disaster(wave, cfg.sine_refine));
      double err = 0.0;
      std::size_t used = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto legs = net.compose(pairs[p].first, pairs[p].second);
        const std::string label = net.nodes()[pairs[p].first].id + "," + net.nodes()[pairs[p].second].id;
        if (!legs || legs->empty()) {
          report.warnings.push_back("pair " + label + " has no closed form; excluded");
          continue;
        }
        const double theory = pr_composition(net, DisasterParams::half_plane(breadth), *legs).value;
        if (theory <= 0.0) {
          report.warnings.push_back("pair " + label + " has zero theoretical probability; excluded");
          continue;
        }
        const double sim = static_cast<double>(tally.path_alive[p]) / static_cast<double>(tally.trials);
        err += std::abs(sim - theory) / theory;
        ++used;
      }
      report.rows.push_back({lambda, w, used ? err / static_cast<double>(used) : 0.0, used});
    }
  }
  return report;
}

}  // namespace geosurv
