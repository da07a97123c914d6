#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geosurv/generators.hpp"
#include "geosurv/montecarlo.hpp"
#include "geosurv/network.hpp"
#include "geosurv/planner.hpp"
#include "geosurv/survivability.hpp"

namespace geosurv::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kValidationError = 1, kUsageError = 2 };

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }

inline double radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += quote(cells[k]);
    }
    text_ += '\n';
  }

  const std::string& str() const { return text_; }

  static std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

 private:
  std::string text_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

/// Splits one CSV line, honouring double-quoted fields.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        out.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (line.empty()) out.clear();
  return out;
}

/// Output directory plus the record of what a run wrote.
class RunContext {
 public:
  RunContext(std::string command, std::vector<std::string> argv, std::filesystem::path out_dir)
      : command_(std::move(command)), argv_(std::move(argv)), out_dir_(std::move(out_dir)) {
    std::filesystem::create_directories(out_dir_);
    manifest_["command"] = command_;
    manifest_["tool_version"] = kToolVersion;
    manifest_["argv"] = argv_;
    manifest_["inputs"] = nlohmann::json::object();
    manifest_["parameters"] = nlohmann::json::object();
    manifest_["outputs"] = nlohmann::json::array();
  }

  void input(const std::string& key, const std::string& path) { manifest_["inputs"][key] = path; }
  nlohmann::json& parameters() { return manifest_["parameters"]; }
  nlohmann::json& manifest() { return manifest_; }

  void output(const std::string& name, const std::string& text) {
    write_file(out_dir_ / name, text);
    manifest_["outputs"].push_back(name);
  }

  void finish() { write_file(out_dir_ / "manifest.json", manifest_.dump(2) + "\n"); }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::filesystem::path out_dir_;
  nlohmann::json manifest_;
};

namespace detail {

// Drops --out and its value so the echoed arguments do not depend on where
// the run was written.
inline std::vector<std::string> without_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--out") {
      ++k;
      continue;
    }
    if (args[k].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[k]);
  }
  return kept;
}

inline DisasterParams disaster_params(double w, const std::optional<double>& wide) {
  if (wide) {
    if (w != 0.0) throw ModelError("--w and --wide-strip are exclusive");
    return DisasterParams::wide(*wide);
  }
  return DisasterParams::half_plane(w);
}

inline void echo_disaster(nlohmann::json& params, const DisasterParams& dp) {
  params["w"] = dp.w;
  if (dp.wide_strip) params["wide_strip"] = *dp.wide_strip;
}

struct Shared {
  std::string network;
  std::string out;
  double w = 0.0;
  std::optional<double> wide;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned parallelism = 1;
  double confidence = 0.95;
};

inline void add_disaster_flags(CLI::App* cmd, Shared& s) {
  cmd->add_option("--w", s.w, "Strip breadth w (default 0). For w > 0 every probability shrinks by the factor "
                              "L(A0)/(L(A0)+pi w) relative to w = 0.")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--wide-strip", s.wide, "Use the wide-strip model with breadth W (must exceed d_max)");
}

inline void add_sim_flags(CLI::App* cmd, Shared& s) {
  cmd->add_option("--trials", s.trials, "Monte Carlo trials (at least 100)");
  cmd->add_option("--seed", s.seed, "Random seed");
  cmd->add_option("--parallelism", s.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--confidence", s.confidence, "Confidence level of reported intervals");
}

inline SimConfig sim_config(const Shared& s) {
  SimConfig cfg;
  cfg.trials = s.trials;
  cfg.seed = s.seed;
  cfg.parallelism = s.parallelism;
  cfg.confidence = s.confidence;
  cfg.validate();
  return cfg;
}

inline void echo_sim(nlohmann::json& params, const SimConfig& cfg) {
  params["trials"] = cfg.trials;
  params["seed"] = cfg.seed;
  params["parallelism"] = cfg.parallelism;
  params["confidence"] = cfg.confidence;
}

inline Network load_network(RunContext& ctx, const std::string& path) {
  ctx.input("network", path);
  return parse_network(read_file(path));
}

inline std::string leg_label(const Network& net, const Composition& legs) {
  std::string out;
  for (const Leg& leg : legs) {
    if (!out.empty()) out += '+';
    out += net.configs()[leg.config].id;
  }
  return out;
}

// ---------------------------------------------------------------------------

inline void cmd_analyze(const Shared& s, RunContext& ctx) {
  const Network net = load_network(ctx, s.network);
  const DisasterParams dp = disaster_params(s.w, s.wide);
  echo_disaster(ctx.parameters(), dp);

  CsvWriter pairs({"i", "j", "legs", "probability"});
  for (const auto& [a, b] : net.analysis_pairs()) {
    const auto legs = net.compose(a, b);
    const std::string& i = net.nodes()[a].id;
    const std::string& j = net.nodes()[b].id;
    if (!legs || legs->empty()) {
      pairs.row({i, j, "none", ""});
      continue;
    }
    pairs.row({i, j, leg_label(net, *legs), format_number(pr_composition(net, dp, *legs).value)});
  }
  ctx.output("pairs.csv", pairs.str());

  CsvWriter sources({"source", "destinations", "expected_disconnected"});
  for (const Node& n : net.nodes()) {
    std::vector<std::string> cfgs;
    for (const PathConfiguration& c : net.configs()) {
      if (c.source == n.id) cfgs.push_back(c.id);
    }
    if (cfgs.empty()) continue;
    sources.row({n.id, format_number(static_cast<std::uint64_t>(cfgs.size())),
                 format_number(expected_disconnected(net, dp, n.id, cfgs))});
  }
  ctx.output("sources.csv", sources.str());
}

inline void cmd_rank(const Shared& s, const std::string& analysis, RunContext& ctx) {
  if (!analysis.empty()) {
    // Re-rank a pairs table written by `analyze`.
    ctx.input("analysis", analysis);
    std::istringstream in(read_file(analysis));
    std::string line;
    std::getline(in, line);
    if (split_csv_line(line) != std::vector<std::string>{"i", "j", "legs", "probability"}) {
      throw NetworkError("schema: not an analyze pairs table: " + analysis);
    }
    struct Row {
      std::string i, j, text;
      double value;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() != 4) throw NetworkError("schema: malformed row in " + analysis);
      if (cells[3].empty()) continue;
      double v = 0.0;
      const auto res = std::from_chars(cells[3].data(), cells[3].data() + cells[3].size(), v);
      if (res.ec != std::errc{}) throw NetworkError("schema: bad probability in " + analysis);
      rows.push_back({cells[0], cells[1], cells[3], v});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.value > y.value; });
    CsvWriter out({"rank", "i", "j", "exact"});
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out.row({std::to_string(k + 1), rows[k].i, rows[k].j, rows[k].text});
    }
    ctx.output("ranking.csv", out.str());
    return;
  }

  const Network net = load_network(ctx, s.network);
  const DisasterParams dp = disaster_params(s.w, s.wide);
  const SimConfig cfg = sim_config(s);
  echo_disaster(ctx.parameters(), dp);
  echo_sim(ctx.parameters(), cfg);
  CsvWriter out({"rank", "i", "j", "exact", "independent", "line", "method", "ci_low", "ci_high"});
  const auto rows = rank_pairs(net, dp, cfg);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RankRow& r = rows[k];
    out.row({std::to_string(k + 1), r.i, r.j, format_number(r.exact),
             r.simulated ? "" : format_number(r.independent), format_number(r.line),
             r.simulated ? "simulated" : "exact", r.estimate ? format_number(r.estimate->ci_low()) : "",
             r.estimate ? format_number(r.estimate->ci_high()) : ""});
  }
  ctx.output("ranking.csv", out.str());
}

inline void cmd_simulate(const Shared& s, const std::vector<std::string>& events, const std::optional<double>& lambda,
                         RunContext& ctx) {
  const Network net = load_network(ctx, s.network);
  const DisasterParams dp = disaster_params(s.w, s.wide);
  const SimConfig cfg = sim_config(s);
  echo_disaster(ctx.parameters(), dp);
  echo_sim(ctx.parameters(), cfg);
  ctx.parameters()["events"] = events;
  if (lambda) ctx.parameters()["lambda"] = *lambda;

  CsvWriter out({"event_id", "mean", "stderr", "ci_low", "ci_high", "trials", "seed"});
  for (const std::string& text : events) {
    const EventSpec ev = parse_event(text);
    Estimate est;
    if (lambda) {
      const auto* pair = std::get_if<PairEvent>(&ev);
      if (!pair) throw ModelError("sine boundary supports pair events only: " + text);
      if (dp.wide_strip) throw ModelError("sine boundary does not combine with --wide-strip");
      est = estimate_sine(net, *lambda, dp.w, *pair, cfg);
    } else {
      est = estimate_event(net, ev, dp, cfg);
    }
    out.row({to_string(ev), format_number(est.mean), format_number(est.std_error), format_number(est.ci_low()),
             format_number(est.ci_high()), format_number(est.trials), format_number(cfg.seed)});
  }
  ctx.output("estimates.csv", out.str());
}

inline void cmd_validate_strip(const Shared& s, const std::vector<double>& lambdas, const std::vector<double>& ws,
                               RunContext& ctx) {
  const Network net = load_network(ctx, s.network);
  const SimConfig cfg = sim_config(s);
  echo_sim(ctx.parameters(), cfg);
  ctx.parameters()["lambda"] = lambdas;
  ctx.parameters()["w"] = ws;
  if (net.analysis_pairs().empty()) throw ModelError("degenerate network: fewer than two analysed nodes");
  const ValidityReport report = validity_study(net, lambdas, ws, cfg);
  ctx.manifest()["unit_length"] = report.unit;
  ctx.manifest()["warnings"] = report.warnings;
  CsvWriter out({"lambda", "w", "mean_rel_abs_error", "pairs_used"});
  for (const ValidityRow& r : report.rows) {
    out.row({format_number(r.lambda), format_number(r.w), format_number(r.mean_rel_abs_error),
             format_number(static_cast<std::uint64_t>(r.pairs_used))});
  }
  ctx.output("validity.csv", out.str());
}

struct BackupFlags {
  std::vector<double> radius{1.0};
  std::vector<std::size_t> nodes{8};
  std::optional<double> gamma_deg;
  std::optional<double> area_radius;
  double grid_step_deg = 1.0;
  double w = 0.0;
  bool dump_grid = false;
};

inline void cmd_optimize_backup(const BackupFlags& f, RunContext& ctx) {
  auto& params = ctx.parameters();
  params["radius"] = f.radius;
  params["nodes"] = f.nodes;
  if (f.gamma_deg) params["gamma_deg"] = *f.gamma_deg;
  if (f.area_radius) params["area_radius"] = *f.area_radius;
  params["grid_step_deg"] = f.grid_step_deg;
  params["w"] = f.w;

  const bool single = f.radius.size() == 1 && f.nodes.size() == 1;
  CsvWriter summary({"node_count", "r_l", "alpha1_deg", "primary_deg", "alpha2_deg", "E1", "E2", "E1_minus_E2",
                     "E1_over_E2"});
  std::size_t index = 0;
  for (std::size_t n : f.nodes) {
    for (double r : f.radius) {
      RingPlanModel m = RingPlanModel::uniform(r, n);
      if (f.gamma_deg) m.gamma = radians(*f.gamma_deg);
      if (f.area_radius) m.area = AreaOfInterest{ConvexRegion::disk({0.0, 0.0}, *f.area_radius)};
      m.grid_step = radians(f.grid_step_deg);
      m.w = f.w;
      const PlacementResult res = optimize_backup(m);
      summary.row({format_number(static_cast<std::uint64_t>(n)), format_number(r), format_number(degrees(res.alpha1)),
                   format_number(degrees(res.primary)), format_number(degrees(*res.alpha2)), format_number(res.e1),
                   format_number(*res.e2), format_number(res.e1 - *res.e2), format_number(res.e1 / *res.e2)});
      if (single || f.dump_grid) {
        CsvWriter grid({"alpha1_deg", "alpha2_deg", "E1", "E2"});
        for (const PlacementCell& c : res.grid) {
          grid.row({format_number(degrees(c.alpha1)), format_number(degrees(c.alpha2)), format_number(c.e1),
                    format_number(c.e2)});
        }
        ctx.output(single ? std::string("placement.csv") : "placement-" + std::to_string(index + 1) + ".csv",
                   grid.str());
      }
      ++index;
    }
  }
  ctx.output("summary.csv", summary.str());
}

inline void cmd_generate(const std::string& name, const GeneratorParams& gp, RunContext& ctx) {
  auto& params = ctx.parameters();
  params["template"] = name;
  params["nodes"] = gp.subscribers;
  params["seed"] = gp.seed;
  params["area_scale"] = gp.area_scale;
  ctx.output("network.json", serialize_network(generate(name, gp)));
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

namespace detail {

inline int cmd_replay(const std::string& manifest_path, const std::string& out_dir, std::ostream& out,
                      std::ostream& err) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw NetworkError(std::string("schema: malformed manifest: ") + e.what());
  }
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw NetworkError("schema: manifest has no argv");
  }
  std::vector<std::string> args = manifest["argv"].get<std::vector<std::string>>();
  args.push_back("--out");
  args.push_back(out_dir);
  return run(args, out, err);
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Survivability of physical networks under very large regional disasters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  detail::Shared s;

  auto* analyze = app.add_subcommand("analyze", "Closed-form probabilities for every node pair and source");
  analyze->add_option("--network", s.network, "Network JSON document")->required();
  detail::add_disaster_flags(analyze, s);

  std::string analysis;
  auto* rank = app.add_subcommand("rank", "Pairs sorted by exact probability with approximations");
  auto* rank_net = rank->add_option("--network", s.network, "Network JSON document");
  rank->add_option("--analysis", analysis, "Re-rank a pairs.csv written by analyze")->excludes(rank_net);
  detail::add_disaster_flags(rank, s);
  detail::add_sim_flags(rank, s);

  std::vector<std::string> events;
  std::optional<double> lambda;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of connectivity events");
  simulate->add_option("--network", s.network, "Network JSON document")->required();
  simulate->add_option("--event", events,
                       "Event: pair:I,J  all:I,J;K,L  any:I:J1,J2  through:I:J:K1,K2  count:I:J1,J2")
      ->required();
  simulate->add_option("--lambda", lambda, "Sine boundary wavelength (pair events only)");
  detail::add_disaster_flags(simulate, s);
  detail::add_sim_flags(simulate, s);

  std::vector<double> lambdas, ws;
  auto* validate = app.add_subcommand("validate-strip", "Strip-model error against sine-wave boundaries");
  validate->add_option("--network", s.network, "Network JSON document")->required();
  validate->add_option("--lambda", lambdas, "Wavelengths in units of the mean pair distance")
      ->required()
      ->delimiter(',');
  validate->add_option("--w-list", ws, "Breadths in units of the mean pair distance")->required()->delimiter(',');
  detail::add_sim_flags(validate, s);

  detail::BackupFlags bf;
  auto* backup = app.add_subcommand("optimize-backup", "Grid search for primary and backup center angles");
  backup->add_option("--radius", bf.radius, "Ring radius r_l (list sweeps)")->delimiter(',');
  backup->add_option("--nodes", bf.nodes, "Number of ring nodes (list sweeps)")->delimiter(',');
  backup->add_option("--gamma-deg", bf.gamma_deg, "Angle between consecutive nodes (default 360/nodes)");
  backup->add_option("--area-radius", bf.area_radius, "Radius of the concentric disk A0 (default 3 r_l)");
  backup->add_option("--grid-step-deg", bf.grid_step_deg, "Angular grid step");
  backup->add_option("--w", bf.w, "Strip breadth w")->check(CLI::NonNegativeNumber);
  backup->add_flag("--dump-grid", bf.dump_grid, "Write the full grid for every model of a sweep");

  std::string template_name;
  GeneratorParams gp;
  auto* gen = app.add_subcommand("generate", "Synthetic network document");
  gen->add_option("--template", template_name, "tree, loop, ring-hub or random-subscriber")->required();
  gen->add_option("--nodes", gp.subscribers, "Number of subscribers");
  gen->add_option("--seed", gp.seed, "Random seed");
  gen->add_option("--area-scale", gp.area_scale, "A0 radius as a multiple of the network's reach");

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "manifest.json of an earlier run")->required();

  for (CLI::App* cmd : {analyze, rank, simulate, validate, backup, gen, replay}) {
    cmd->add_option("--out", s.out, "Output directory")->required();
  }

  std::vector<std::string> argv_store{"geosurv"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (replay->parsed()) return detail::cmd_replay(manifest_path, s.out, out, err);
    if (rank->parsed() && s.network.empty() && analysis.empty()) {
      err << "rank: one of --network or --analysis is required\n";
      return kUsageError;
    }
    CLI::App* cmd = app.get_subcommands().front();
    RunContext ctx(cmd->get_name(), detail::without_out(args), s.out);
    if (cmd == analyze) detail::cmd_analyze(s, ctx);
    if (cmd == rank) detail::cmd_rank(s, analysis, ctx);
    if (cmd == simulate) detail::cmd_simulate(s, events, lambda, ctx);
    if (cmd == validate) detail::cmd_validate_strip(s, lambdas, ws, ctx);
    if (cmd == backup) detail::cmd_optimize_backup(bf, ctx);
    if (cmd == gen) detail::cmd_generate(template_name, gp, ctx);
    ctx.finish();
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace geosurv::cli
