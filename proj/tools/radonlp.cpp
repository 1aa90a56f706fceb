// radonlp: curvature, Newton polytope and restricted weak-type analysis of
// Radon-like operators from the command line.

#include "radonlp/cli/commands.hpp"
#include "radonlp/polyalg/rational.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <iostream>

using namespace radonlp;
using namespace radonlp::cli;

namespace {

struct OperatorFlags {
  std::string preset, config;
  std::optional<std::size_t> n;
  std::vector<std::string> params;  // name=value
};

struct Common {
  OperatorFlags op;
  std::string out;
  bool json = false;
};

void add_operator_flags(CLI::App* app, Common& c) {
  app->add_option("--preset", c.op.preset, "Built-in operator (see `radonlp presets`)");
  app->add_option("--n", c.op.n, "Dimension for presets that take one");
  app->add_option("--config", c.op.config, "Config file with [operator] and parameter sections")->check(CLI::ExistingFile);
  app->add_option("--param", c.op.params,
                  "name=value specializes a parameter, a bare value the only one, a bare name keeps it symbolic");
  app->add_option("--out", c.out, "Write outputs and manifest.cfg into this directory");
}

RunConfig base_config(const std::string& command, const Common& c) {
  RunConfig cfg;
  cfg.command = command;
  if (!c.op.config.empty()) cfg = run_config_from(Config::load(c.op.config), command);
  if (!c.op.preset.empty()) {
    if (cfg.spec) throw std::invalid_argument("--preset conflicts with the [operator] section of --config");
    cfg.spec = make_preset(c.op.preset, c.op.n);
  } else if (c.op.n) {
    throw std::invalid_argument("--n only applies to --preset");
  }
  for (const auto& p : c.op.params) {
    if (!cfg.spec) throw std::invalid_argument("--param needs an operator");
    const auto& names = cfg.spec->params;
    auto eq = p.find('=');
    std::string name = eq == std::string::npos ? p : p.substr(0, eq);
    bool known = std::find(names.begin(), names.end(), name) != names.end();
    if (eq == std::string::npos && known) continue;  // `--param a` keeps a symbolic
    if (eq == std::string::npos) {
      // `--param 1/6` specializes the operator's only parameter
      if (names.size() != 1) throw std::invalid_argument("--param expects name=value, got '" + p + "'");
      cfg.spec->param_values[names[0]] = parse_rational(p);
      continue;
    }
    if (!known) throw std::invalid_argument("operator has no parameter '" + name + "'");
    cfg.spec->param_values[name] = parse_rational(p.substr(eq + 1));
  }
  return cfg;
}

template <class T>
void set_if(const std::optional<T>& v, T& out) {
  if (v) out = *v;
}

int emit(const RunConfig& cfg, const Common& c) {
  auto result = run(cfg, c.json);
  std::cout << result.summary;
  if (!c.out.empty()) write_outputs(c.out, cfg, result);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and restricted weak-type analysis of Radon-like operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP worker count (default: all cores)")->check(CLI::PositiveNumber);

  Common common;

  auto* analyze = app.add_subcommand("analyze", "Word table, Pareto generators, Newton polytope and exponent verdicts");
  add_operator_flags(analyze, common);
  analyze->add_flag("--json", common.json, "Print the JSON report instead of text");
  std::optional<unsigned> an_cap;
  std::vector<std::string> queries;
  analyze->add_option("--cap", an_cap, "Word length cap");
  analyze->add_option("--pair", queries, "Exponent pair p1,p2' to classify (repeatable)");

  auto* brackets = app.add_subcommand("brackets", "Dump iterated brackets and lambda_I values");
  add_operator_flags(brackets, common);
  brackets->add_flag("--json", common.json, "Print JSON instead of CSV");
  std::optional<unsigned> br_cap;
  std::vector<std::string> tuples;
  brackets->add_option("--cap", br_cap, "Word length cap");
  brackets->add_option("--tuple", tuples, "Comma-separated word tuple for lambda_I (repeatable)");

  auto* ball = app.add_subcommand("ball-volume", "Monte-Carlo control-ball volumes and log-log slope");
  add_operator_flags(ball, common);
  std::optional<std::string> ball_deltas;
  std::optional<double> relation;
  std::optional<std::size_t> ball_samples;
  std::optional<std::uint64_t> ball_seed;
  ball->add_option("--delta", ball_deltas, "Radii, a list or 2^a..2^b");
  ball->add_option("--relation", relation, "delta2 = delta1^relation");
  ball->add_option("--samples", ball_samples, "Points per radius");
  ball->add_option("--seed", ball_seed, "Master seed");

  auto* probe = app.add_subcommand("probe", "Sharpness probe along a separating half-plane");
  add_operator_flags(probe, common);
  std::optional<std::string> pr_pair, pr_deltas, pr_p1, pr_q;
  std::optional<std::size_t> pr_samples;
  std::optional<std::uint64_t> pr_seed;
  bool allow_interior = false;
  probe->add_option("--pair", pr_pair, "Exponent pair p1,p2'");
  probe->add_option("--p1", pr_p1, "Exponent p1");
  probe->add_option("--q", pr_q, "Exponent p2'");
  probe->add_option("--delta0", pr_deltas, "Scales, a list or 2^a..2^b");
  probe->add_option("--samples", pr_samples, "Monte-Carlo samples per scale");
  probe->add_option("--seed", pr_seed, "Master seed");
  probe->add_flag("--allow-interior", allow_interior, "Run control probes on non-exterior pairs");

  auto* refine = app.add_subcommand("refine", "Sheaf refinement of a grid set along one field");
  add_operator_flags(refine, common);
  std::optional<unsigned> direction;
  std::optional<std::string> grid;
  std::optional<std::size_t> axis;
  std::optional<double> epsilon, unit;
  refine->add_option("--direction", direction, "Field index 1 or 2");
  refine->add_option("--grid", grid, "Run-length grid set file (default: a sampled control ball)");
  refine->add_option("--axis", axis, "Fiber axis for identity straightening (0-based)");
  refine->add_option("--epsilon", epsilon, "Centrality exponent");
  refine->add_option("--unit", unit, "Ambient length unit (default: smallest power of two covering the fibers)");

  auto* extremal = app.add_subcommand("extremal", "Local search for sets with a large restricted weak-type ratio");
  add_operator_flags(extremal, common);
  std::optional<std::string> ex_pair, ex_p1, ex_q;
  std::optional<double> ex_delta0;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> ex_seed;
  extremal->add_option("--pair", ex_pair, "Exponent pair p1,p2'");
  extremal->add_option("--p1", ex_p1, "Exponent p1");
  extremal->add_option("--q", ex_q, "Exponent p2'");
  extremal->add_option("--delta0", ex_delta0, "Scale of the seed set");
  extremal->add_option("--budget", budget, "Number of proposals");
  extremal->add_option("--seed", ex_seed, "Master seed");

  auto* rerun = app.add_subcommand("rerun", "Re-run a manifest and compare every output digest");
  std::string manifest;
  rerun->add_option("manifest", manifest, "manifest.cfg written by --out")->required()->check(CLI::ExistingFile);
  rerun->add_option("--out", common.out, "Also write the regenerated outputs here");

  auto* presets = app.add_subcommand("presets", "List built-in operators, or print one as config text");
  std::optional<std::string> show;
  presets->add_option("--show", show, "Print this preset as a config file");
  presets->add_option("--n", common.op.n, "Dimension for presets that take one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  auto split_pair = [](const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("exponent pair must be p1,p2', got '" + s + "'");
    return std::pair{s.substr(0, comma), s.substr(comma + 1)};
  };

  try {
    if (*presets) {
      if (show) {
        Config c;
        operator_to_config(make_preset(*show, common.op.n), c);
        std::cout << to_text(c);
      } else {
        for (const auto& name : preset_names()) std::cout << name << '\n';
      }
      return kOk;
    }
    if (*rerun) {
      Config c = Config::load(manifest);
      RunConfig cfg = run_config_from(c);
      auto want = manifest_digests(c);
      auto result = run(cfg);
      int status = kOk;
      for (const auto& [name, d] : want) {
        auto it = result.files.find(name);
        std::string got = it == result.files.end() ? "missing" : digest(it->second);
        bool same = got == d;
        std::cout << (same ? "same     " : "DIFFERS  ") << name << "  " << got << '\n';
        if (!same) status = kInternal;
      }
      for (const auto& [name, bytes] : result.files)
        if (!want.count(name)) {
          std::cout << "NEW      " << name << '\n';
          status = kInternal;
        }
      if (!common.out.empty()) write_outputs(common.out, cfg, result);
      return status;
    }
    if (*analyze) {
      auto cfg = base_config("analyze", common);
      set_if(an_cap, cfg.analyze.cap);
      for (const auto& q : queries) {
        auto [p1, p2] = split_pair(q);
        cfg.analyze.queries.push_back({p1, p2});
      }
      return emit(cfg, common);
    }
    if (*brackets) {
      auto cfg = base_config("brackets", common);
      set_if(br_cap, cfg.brackets.cap);
      for (const auto& t : tuples) cfg.brackets.tuples.push_back(t);
      return emit(cfg, common);
    }
    if (*ball) {
      auto cfg = base_config("ball-volume", common);
      if (ball_deltas) cfg.ball.deltas = parse_radii(*ball_deltas);
      set_if(relation, cfg.ball.relation);
      set_if(ball_samples, cfg.ball.samples);
      set_if(ball_seed, cfg.ball.seed);
      return emit(cfg, common);
    }
    if (*probe) {
      auto cfg = base_config("probe", common);
      if (pr_pair) std::tie(cfg.probe.p1, cfg.probe.q) = split_pair(*pr_pair);
      set_if(pr_p1, cfg.probe.p1);
      set_if(pr_q, cfg.probe.q);
      if (pr_deltas) cfg.probe.delta0 = parse_radii(*pr_deltas);
      set_if(pr_samples, cfg.probe.samples);
      set_if(pr_seed, cfg.probe.seed);
      if (allow_interior) cfg.probe.allow_interior = true;
      return emit(cfg, common);
    }
    if (*refine) {
      auto cfg = base_config("refine", common);
      set_if(direction, cfg.refine.direction);
      set_if(grid, cfg.refine.grid);
      if (axis) cfg.refine.axis = *axis;
      set_if(epsilon, cfg.refine.epsilon);
      if (unit) cfg.refine.unit = *unit;
      return emit(cfg, common);
    }
    if (*extremal) {
      auto cfg = base_config("extremal", common);
      if (ex_pair) std::tie(cfg.extremal.p1, cfg.extremal.q) = split_pair(*ex_pair);
      set_if(ex_p1, cfg.extremal.p1);
      set_if(ex_q, cfg.extremal.q);
      set_if(ex_delta0, cfg.extremal.delta0);
      set_if(budget, cfg.extremal.budget);
      set_if(ex_seed, cfg.extremal.seed);
      return emit(cfg, common);
    }
  } catch (...) {
    auto [code, kind] = classify_error(std::current_exception());
    try {
      throw;
    } catch (const std::exception& e) {
      std::cerr << "radonlp: " << kind << ": " << e.what() << '\n';
    } catch (...) {
      std::cerr << "radonlp: " << kind << '\n';
    }
    return code;
  }
  return kInternal;
}
