#include "radonlp/cli/commands.hpp"

#include "radonlp/ccflow/probe.hpp"
#include "radonlp/ccflow/scaling.hpp"
#include "radonlp/polyalg/parser.hpp"
#include "radonlp/polytope/generators.hpp"
#include "radonlp/setcomb/extremal.hpp"
#include "radonlp/setcomb/prune.hpp"
#include "radonlp/setcomb/sheaf.hpp"
#include "radonlp/vfcalc/word_table.hpp"

#include <gmp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef RADONLP_VERSION
#define RADONLP_VERSION "0.0.0"
#endif

namespace radonlp::cli {

using nlohmann::json;

std::string version() { return RADONLP_VERSION; }

std::pair<int, std::string> classify_error(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const ConfigError&) {
    return {kUsage, "config error"};
  } catch (const ParseError&) {
    return {kUsage, "parse error"};
  } catch (const HormanderFailure&) {
    return {kDomain, "Hormander failure"};
  } catch (const TrivialRegime&) {
    return {kDomain, "trivial regime"};
  } catch (const NotExterior&) {
    return {kDomain, "pair not exterior"};
  } catch (const PruneHypothesis&) {
    return {kDomain, "hypothesis failed"};
  } catch (const SpecError&) {
    return {kDomain, "invalid operator"};
  } catch (const std::domain_error&) {
    return {kDomain, "domain error"};
  } catch (const std::invalid_argument&) {
    return {kUsage, "invalid argument"};
  } catch (const FlowError&) {
    return {kResource, "flow failure"};
  } catch (const IoError&) {
    return {kResource, "I/O error"};
  } catch (const std::runtime_error&) {
    return {kResource, "resource limit"};
  } catch (...) {
    return {kInternal, "internal error"};
  }
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string csv_real(double v) { return format_real(v); }

ConfigEntry entry(const std::string& key, std::vector<std::string> values, bool quoted = false) {
  ConfigEntry e;
  e.key = key;
  for (auto& v : values) e.values.push_back({std::move(v), quoted, 0});
  return e;
}

std::vector<std::string> reals(const std::vector<double>& v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(format_real(x));
  return out;
}

// Typed readers over a section; each reports the config position on error.
struct Reader {
  const ConfigSection* s;

  const ConfigValue* single(const std::string& key) const {
    if (!s || !s->has(key)) return nullptr;
    const auto& e = s->one(key);
    if (e.values.size() != 1) throw ConfigError(e.line, 0, "'" + key + "' takes one value");
    return &e.values[0];
  }
  std::size_t line(const std::string& key) const { return s->one(key).line; }
  void real(const std::string& key, double& out) const {
    if (auto v = single(key)) out = parse_real(*v, line(key));
  }
  template <class T>
  void count(const std::string& key, T& out) const {
    if (auto v = single(key)) out = static_cast<T>(parse_unsigned(*v, line(key)));
  }
  void text(const std::string& key, std::string& out) const {
    if (auto v = single(key)) out = v->text;
  }
  void flag(const std::string& key, bool& out) const {
    if (auto v = single(key)) {
      if (v->text != "true" && v->text != "false") throw ConfigError(line(key), v->column, "expected true or false");
      out = v->text == "true";
    }
  }
  void list(const std::string& key, std::vector<double>& out) const {
    if (!s || !s->has(key)) return;
    const auto& e = s->one(key);
    out.clear();
    for (const auto& v : e.values) {
      try {
        auto part = parse_radii(v.text);
        out.insert(out.end(), part.begin(), part.end());
      } catch (const std::exception& ex) {
        throw ConfigError(e.line, v.column, ex.what());
      }
    }
  }
  void check_known(const std::vector<std::string>& keys) const {
    if (!s) return;
    for (const auto& e : s->entries)
      if (std::find(keys.begin(), keys.end(), e.key) == keys.end())
        throw ConfigError(e.line, 1, "unknown key '" + e.key + "' in [" + s->name + "]");
  }
};

Frame frame_from(const std::string& f) {
  if (f == "axis") return Frame::Axis;
  if (f == "principal") return Frame::Principal;
  throw std::invalid_argument("frame must be axis or principal, got '" + f + "'");
}

struct Analysis {
  FieldData fd;
  WordTable table;
  GeneratorSearch search;
};

Analysis analyze_spec(const RunConfig& cfg) {
  if (!cfg.spec) throw std::invalid_argument("command '" + cfg.command + "' needs an operator (--preset or --config)");
  FieldData fd = spec_to_fields(*cfg.spec);
  WordTable table = build_words(fd.x1, fd.x2, cfg.analyze.cap);
  auto search = find_generators(table, fd.base, cfg.analyze.tuple_cap);
  return {std::move(fd), std::move(table), std::move(search)};
}

RunResult run_analyze(const RunConfig& cfg, bool as_json) {
  if (!cfg.spec) throw std::invalid_argument("analyze needs an operator (--preset or --config)");
  auto report = build_analysis(*cfg.spec, cfg.analyze);
  RunResult r;
  r.files["analysis.json"] = to_json(report).dump(2) + "\n";
  r.files["analysis.txt"] = render_text(report);
  r.summary = as_json ? r.files["analysis.json"] : r.files["analysis.txt"];
  return r;
}

RunResult run_brackets(const RunConfig& cfg, bool as_json) {
  if (!cfg.spec) throw std::invalid_argument("brackets needs an operator (--preset or --config)");
  auto dump = brackets_json(*cfg.spec, cfg.brackets);
  RunResult r;
  r.files["brackets.json"] = dump.dump(2) + "\n";
  r.files["brackets.csv"] = brackets_csv(dump);
  if (as_json) {
    r.summary = r.files["brackets.json"];
  } else {
    r.summary = r.files["brackets.csv"];
    for (const auto& l : dump["lambda"])
      r.summary += "lambda(" + l["tuple"].get<std::string>() + ") = " + l["lambda"].get<std::string>() + "  [" +
                   l["status"].get<std::string>() + "]\n";
  }
  return r;
}

RunResult run_ball(const RunConfig& cfg) {
  auto a = analyze_spec(cfg);
  auto model = compile_model(a.fd);
  const auto& p = cfg.ball;
  ScalingConfig sc;
  sc.relation = p.relation;
  sc.samples = p.samples;
  sc.k_max = p.k_max;
  sc.seed = p.seed;
  sc.resolution = p.resolution;
  sc.min_occupied = p.min_occupied;
  sc.frame = frame_from(p.frame);
  std::vector<Degree> degs;
  for (const auto& g : a.search.generators) degs.push_back(g.degree);
  auto study = ball_scaling_study(model, degs, p.deltas, sc);
  std::ostringstream csv;
  csv << "delta1,delta2,volume,occupied,points,points_per_cell,extent_in_cells,dropped,fitted_slope,predicted_slope\n";
  for (const auto& row : study.rows)
    csv << csv_real(row.delta1) << ',' << csv_real(row.delta2) << ',' << csv_real(row.estimate.volume) << ','
        << row.estimate.occupied << ',' << row.estimate.points << ',' << csv_real(row.estimate.points_per_cell) << ','
        << csv_real(row.estimate.extent_in_cells) << ',' << row.dropped << ',' << csv_real(study.slope) << ','
        << csv_real(study.predicted) << '\n';
  RunResult r;
  r.files["ball_volume.csv"] = csv.str();
  std::ostringstream s;
  s << "fitted slope " << csv_real(study.slope) << ", predicted " << csv_real(study.predicted) << " from generator "
    << study.dominant.to_string() << " (delta2 = delta1^" << csv_real(p.relation) << ")\n";
  r.summary = s.str() + r.files["ball_volume.csv"];
  return r;
}

RunResult run_probe(const RunConfig& cfg) {
  auto a = analyze_spec(cfg);
  auto model = compile_model(a.fd);
  const auto& p = cfg.probe;
  ProbeConfig pc;
  pc.K = p.K;
  pc.samples = p.samples;
  pc.seed = p.seed;
  pc.resolution = p.resolution;
  pc.min_occupied = p.min_occupied;
  pc.allow_interior = p.allow_interior;
  pc.a_min = parse_rational(p.a_min);
  pc.frame = frame_from(p.frame);
  auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse(p.p1), LebesgueExponent::parse(p.q));
  auto res = sharpness_probe(model, a.table, a.search, pair, p.delta0, pc);
  std::ostringstream csv;
  csv << "delta0,delta1,delta2,omega,pi1,pi2,ratio,dropped\n";
  for (const auto& row : res.rows)
    csv << csv_real(row.delta0) << ',' << csv_real(row.delta1) << ',' << csv_real(row.delta2) << ','
        << csv_real(row.omega.volume) << ',' << csv_real(row.pi1.volume) << ',' << csv_real(row.pi2.volume) << ','
        << csv_real(row.ratio) << ',' << row.dropped << '\n';
  json j;
  j["schema"] = "radonlp.probe/1";
  j["c"] = {to_fraction_string(res.c.x), to_fraction_string(res.c.y)};
  j["membership"] = to_string(res.membership);
  j["plane"] = {{"a1", to_fraction_string(res.plane.a1)}, {"a2", to_fraction_string(res.plane.a2)},
                {"a_dot_c", to_fraction_string(res.plane.at_c)}};
  std::vector<std::string> witness;
  for (const auto& w : res.witness) witness.push_back(w.to_string());
  j["witness"] = witness;
  j["degree"] = {res.degree.d1, res.degree.d2};
  j["strictly_increasing"] = res.strictly_increasing;
  j["spread"] = res.spread;
  RunResult r;
  r.files["probe.csv"] = csv.str();
  r.files["probe.json"] = j.dump(2) + "\n";
  std::ostringstream s;
  s << "c = (" << to_string(res.c.x) << ", " << to_string(res.c.y) << ") " << to_string(res.membership)
    << ", a = (" << to_string(res.plane.a1) << ", " << to_string(res.plane.a2) << "), ratio "
    << (res.strictly_increasing ? "strictly increasing" : "not strictly increasing") << ", spread "
    << csv_real(res.spread) << "\n";
  r.summary = s.str() + r.files["probe.csv"];
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string grid_text(const GridSet& g) {
  std::ostringstream o;
  write_grid_set(o, g);
  return o.str();
}

GridSet ball_fixture(const RunConfig& cfg, const FieldData& fd) {
  const auto& p = cfg.refine;
  auto model = compile_model(fd);
  BallSpec bs{model.base, p.ball_delta, p.ball_delta, 6, p.ball_samples, p.seed};
  auto cloud = sample_ball(bs, model.x1, model.x2);
  const std::size_t n = cloud.dim;
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (std::size_t i = 0; i < cloud.coords.size(); ++i) {
    lo[i % n] = std::min(lo[i % n], cloud.coords[i]);
    hi[i % n] = std::max(hi[i % n], cloud.coords[i]);
  }
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ext = hi[i] - lo[i];
    if (!(ext > 0)) throw std::domain_error("ball fixture is flat along an axis");
    h[i] = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(ext / p.cells))));
  }
  return GridSet::from_points(n, cloud.coords, std::vector<double>(n, 0.0), h);
}

RunResult run_refine(const RunConfig& cfg) {
  const auto& p = cfg.refine;
  std::optional<FieldData> fd;
  if (cfg.spec) fd = spec_to_fields(*cfg.spec);
  GridSet g;
  if (!p.grid.empty()) {
    std::istringstream in(read_file(p.grid));
    g = read_grid_set(in);
  } else {
    if (!fd) throw std::invalid_argument("refine needs --grid or an operator for the ball fixture");
    g = ball_fixture(cfg, *fd);
  }
  Straightening st;
  if (p.axis) {
    st = Straightening::identity(p.direction, *p.axis);
  } else {
    if (!fd) throw std::invalid_argument("refine without an operator needs --axis");
    st = make_straightening(*fd, p.direction);
  }
  SheafConfig sc;
  sc.epsilon = p.epsilon;
  sc.constant = p.constant;
  sc.level = p.level;
  sc.unit = p.unit;
  auto rep = sheaf_refine(g, st, sc);

  json j;
  j["schema"] = "radonlp.sheaf/1";
  j["direction"] = rep.direction;
  j["axis"] = rep.axis;
  j["straightening"] = to_string(rep.kind);
  j["width"] = rep.width;
  j["unit"] = rep.unit;
  j["epsilon"] = rep.epsilon;
  j["constant"] = rep.constant;
  j["measure"] = rep.measure;
  j["refined_measure"] = rep.refined_measure;
  j["ratio"] = rep.ratio;
  j["level"] = rep.level;
  j["fibers"] = rep.fibers;
  j["level_fibers"] = rep.level_fibers;
  json hist = json::array();
  for (const auto& [scale, c] : rep.histogram)
    hist.push_back({{"scale", scale}, {"width", std::ldexp(1.0, scale)}, {"fibers", c.fibers}, {"mass", c.mass}});
  j["histogram"] = hist;
  double worst = 0;
  for (const auto& c : rep.certificates) worst = std::max(worst, c.worst_ratio);
  j["certificates"] = rep.certificates.size();
  j["worst_ratio"] = worst;
  j["all_pass"] = rep.all_pass;
  j["speed"] = {rep.speed_min, rep.speed_max};

  std::ostringstream csv;
  csv << "fiber,interval_lo,interval_hi,mass,kept,threshold,worst_ratio,pass\n";
  for (const auto& c : rep.certificates) {
    std::string key;
    for (std::size_t i = 0; i + 1 < g.n(); ++i) key += (i ? " " : "") + std::to_string(c.fiber[i]);
    csv << key << ',' << csv_real(c.interval.lo()) << ',' << csv_real(c.interval.hi()) << ',' << csv_real(c.mass)
        << ',' << csv_real(c.kept) << ',' << csv_real(c.threshold) << ',' << csv_real(c.worst_ratio) << ','
        << (c.pass ? 1 : 0) << '\n';
  }
  RunResult r;
  r.files["sheaf.json"] = j.dump(2) + "\n";
  r.files["certificates.csv"] = csv.str();
  r.files["refined.grid"] = grid_text(rep.refined);
  std::ostringstream s;
  s << "direction " << rep.direction << " (" << to_string(rep.kind) << ", axis " << rep.axis << "): width "
    << csv_real(rep.width) << ", kept " << csv_real(rep.ratio) << " of the measure, " << rep.certificates.size()
    << " fibers certified, " << (rep.all_pass ? "all central" : "SOME NOT CENTRAL") << "\n";
  for (const auto& [scale, c] : rep.histogram)
    s << "  width 2^" << scale << ": " << c.fibers << " fibers, kept mass " << csv_real(c.mass) << "\n";
  r.summary = s.str();
  return r;
}

RunResult run_extremal(const RunConfig& cfg) {
  auto a = analyze_spec(cfg);
  auto model = compile_model(a.fd);
  const auto& p = cfg.extremal;
  ExtremalConfig ec;
  ec.K = p.K;
  ec.samples = p.samples;
  ec.seed = p.seed;
  ec.resolution = p.resolution;
  ec.supersample = p.supersample;
  ec.budget = p.budget;
  ec.a_min = parse_rational(p.a_min);
  auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse(p.p1), LebesgueExponent::parse(p.q));
  auto res = extremal_search(model, a.table, a.search, pair, p.delta0, ec);
  std::ostringstream csv;
  csv << "iteration,ratio\n";
  for (std::size_t i = 0; i < res.trace.size(); ++i) csv << i + 1 << ',' << csv_real(res.trace[i]) << '\n';
  auto ratio_json = [](const RwtRatio& q) {
    return json{{"omega", q.omega}, {"pi1", q.pi1}, {"pi2", q.pi2}, {"alpha1", q.alpha1}, {"alpha2", q.alpha2},
                {"ratio", q.ratio}};
  };
  json j;
  j["schema"] = "radonlp.extremal/1";
  j["membership"] = to_string(res.membership);
  j["delta"] = {res.delta0, res.delta1, res.delta2};
  j["seed_set"] = ratio_json(res.seed_ratio);
  j["best"] = ratio_json(res.best_ratio);
  j["accepted"] = res.accepted;
  j["cells"] = {res.seed_set.size(), res.best.size()};
  RunResult r;
  r.files["extremal_trace.csv"] = csv.str();
  r.files["extremal.json"] = j.dump(2) + "\n";
  r.files["seed.grid"] = grid_text(res.seed_set);
  r.files["best.grid"] = grid_text(res.best);
  std::ostringstream s;
  s << "pair " << to_string(res.membership) << ", seed ratio " << csv_real(res.seed_ratio.ratio) << ", best "
    << csv_real(res.best_ratio.ratio) << " after " << res.trace.size() << " proposals (" << res.accepted
    << " accepted)\n";
  r.summary = s.str();
  return r;
}

}  // namespace

RunResult run(const RunConfig& cfg, bool as_json) {
  if (cfg.command == "analyze") return run_analyze(cfg, as_json);
  if (cfg.command == "brackets") return run_brackets(cfg, as_json);
  if (cfg.command == "ball-volume") return run_ball(cfg);
  if (cfg.command == "probe") return run_probe(cfg);
  if (cfg.command == "refine") return run_refine(cfg);
  if (cfg.command == "extremal") return run_extremal(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

namespace {

void command_section(const RunConfig& cfg, Config& c) {
  auto& an = c.add("analyze");
  an.entries.push_back(entry("cap", {std::to_string(cfg.analyze.cap)}));
  if (cfg.analyze.tuple_cap)
    an.entries.push_back(
        entry("tuple_cap", {std::to_string(cfg.analyze.tuple_cap->d1), std::to_string(cfg.analyze.tuple_cap->d2)}));
  for (const auto& q : cfg.analyze.queries) an.entries.push_back(entry("query", {q.p1, q.q}));
  if (cfg.command == "brackets") {
    auto& s = c.add("brackets");
    s.entries.push_back(entry("cap", {std::to_string(cfg.brackets.cap)}));
    for (const auto& t : cfg.brackets.tuples) s.entries.push_back(entry("tuple", {t}, true));
  } else if (cfg.command == "ball-volume") {
    const auto& p = cfg.ball;
    auto& s = c.add("ball-volume");
    s.entries.push_back(entry("delta", reals(p.deltas)));
    s.entries.push_back(entry("relation", {format_real(p.relation)}));
    s.entries.push_back(entry("samples", {std::to_string(p.samples)}));
    s.entries.push_back(entry("k_max", {std::to_string(p.k_max)}));
    s.entries.push_back(entry("seed", {std::to_string(p.seed)}));
    s.entries.push_back(entry("resolution", {std::to_string(p.resolution)}));
    s.entries.push_back(entry("min_occupied", {std::to_string(p.min_occupied)}));
    s.entries.push_back(entry("frame", {p.frame}));
  } else if (cfg.command == "probe") {
    const auto& p = cfg.probe;
    auto& s = c.add("probe");
    s.entries.push_back(entry("p1", {p.p1}));
    s.entries.push_back(entry("q", {p.q}));
    s.entries.push_back(entry("delta0", reals(p.delta0)));
    s.entries.push_back(entry("K", {format_real(p.K)}));
    s.entries.push_back(entry("samples", {std::to_string(p.samples)}));
    s.entries.push_back(entry("seed", {std::to_string(p.seed)}));
    s.entries.push_back(entry("resolution", {std::to_string(p.resolution)}));
    s.entries.push_back(entry("min_occupied", {std::to_string(p.min_occupied)}));
    s.entries.push_back(entry("allow_interior", {p.allow_interior ? "true" : "false"}));
    s.entries.push_back(entry("a_min", {p.a_min}));
    s.entries.push_back(entry("frame", {p.frame}));
  } else if (cfg.command == "refine") {
    const auto& p = cfg.refine;
    auto& s = c.add("refine");
    s.entries.push_back(entry("direction", {std::to_string(p.direction)}));
    s.entries.push_back(entry("epsilon", {format_real(p.epsilon)}));
    s.entries.push_back(entry("constant", {format_real(p.constant)}));
    s.entries.push_back(entry("level", {format_real(p.level)}));
    if (p.unit) s.entries.push_back(entry("unit", {format_real(*p.unit)}));
    if (!p.grid.empty()) {
      s.entries.push_back(entry("grid", {std::filesystem::absolute(p.grid).string()}, true));
      s.entries.push_back(entry("grid_digest", {digest(read_file(p.grid))}, true));
    }
    if (p.axis) s.entries.push_back(entry("axis", {std::to_string(*p.axis)}));
    s.entries.push_back(entry("ball_delta", {format_real(p.ball_delta)}));
    s.entries.push_back(entry("ball_samples", {std::to_string(p.ball_samples)}));
    s.entries.push_back(entry("seed", {std::to_string(p.seed)}));
    s.entries.push_back(entry("cells", {std::to_string(p.cells)}));
  } else if (cfg.command == "extremal") {
    const auto& p = cfg.extremal;
    auto& s = c.add("extremal");
    s.entries.push_back(entry("p1", {p.p1}));
    s.entries.push_back(entry("q", {p.q}));
    s.entries.push_back(entry("delta0", {format_real(p.delta0)}));
    s.entries.push_back(entry("K", {format_real(p.K)}));
    s.entries.push_back(entry("samples", {std::to_string(p.samples)}));
    s.entries.push_back(entry("seed", {std::to_string(p.seed)}));
    s.entries.push_back(entry("resolution", {std::to_string(p.resolution)}));
    s.entries.push_back(entry("supersample", {std::to_string(p.supersample)}));
    s.entries.push_back(entry("budget", {std::to_string(p.budget)}));
    s.entries.push_back(entry("a_min", {p.a_min}));
  }
}

}  // namespace

std::string manifest_text(const RunConfig& cfg, const RunResult& result) {
  Config c;
  auto& m = c.add("manifest");
  m.entries.push_back(entry("command", {cfg.command}));
  m.entries.push_back(entry("version", {version()}, true));
  m.entries.push_back(entry("gmp", {gmp_version}, true));
  m.entries.push_back(entry("compiler", {__VERSION__}, true));
  if (cfg.spec) operator_to_config(*cfg.spec, c);
  command_section(cfg, c);
  auto& out = c.add("outputs");
  for (const auto& [name, bytes] : result.files) out.entries.push_back(entry(name, {digest(bytes)}, true));
  return "# run manifest: `radonlp rerun <this file>` reproduces every output\n" + to_text(c);
}

RunConfig run_config_from(const Config& c, const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  if (cfg.command.empty()) {
    if (!c.has("manifest")) throw ConfigError(0, 0, "no command given and no [manifest] section");
    cfg.command = c.section("manifest").scalar("command");
  }
  if (c.has("operator")) cfg.spec = operator_from_config(c);
  auto section = [&](const char* name) -> const ConfigSection* { return c.has(name) ? &c.section(name) : nullptr; };

  Reader an{section("analyze")};
  an.check_known({"cap", "tuple_cap", "query"});
  an.count("cap", cfg.analyze.cap);
  if (an.s && an.s->has("tuple_cap")) {
    const auto& e = an.s->one("tuple_cap");
    if (e.values.size() != 2) throw ConfigError(e.line, 0, "tuple_cap takes two integers");
    cfg.analyze.tuple_cap = Degree{static_cast<unsigned>(parse_unsigned(e.values[0], e.line)),
                                   static_cast<unsigned>(parse_unsigned(e.values[1], e.line))};
  }
  if (an.s)
    for (const auto* e : an.s->all("query")) {
      if (e->values.size() != 2) throw ConfigError(e->line, 0, "query takes p1, p2'");
      cfg.analyze.queries.push_back({e->values[0].text, e->values[1].text});
    }

  Reader br{section("brackets")};
  br.check_known({"cap", "tuple"});
  br.count("cap", cfg.brackets.cap);
  if (br.s)
    for (const auto* e : br.s->all("tuple"))
      for (const auto& v : e->values) cfg.brackets.tuples.push_back(v.text);

  Reader bv{section("ball-volume")};
  bv.check_known({"delta", "relation", "samples", "k_max", "seed", "resolution", "min_occupied", "frame"});
  bv.list("delta", cfg.ball.deltas);
  bv.real("relation", cfg.ball.relation);
  bv.count("samples", cfg.ball.samples);
  bv.count("k_max", cfg.ball.k_max);
  bv.count("seed", cfg.ball.seed);
  bv.count("resolution", cfg.ball.resolution);
  bv.count("min_occupied", cfg.ball.min_occupied);
  bv.text("frame", cfg.ball.frame);

  Reader pr{section("probe")};
  pr.check_known({"p1", "q", "delta0", "K", "samples", "seed", "resolution", "min_occupied", "allow_interior", "a_min",
                  "frame"});
  pr.text("p1", cfg.probe.p1);
  pr.text("q", cfg.probe.q);
  pr.list("delta0", cfg.probe.delta0);
  pr.real("K", cfg.probe.K);
  pr.count("samples", cfg.probe.samples);
  pr.count("seed", cfg.probe.seed);
  pr.count("resolution", cfg.probe.resolution);
  pr.count("min_occupied", cfg.probe.min_occupied);
  pr.flag("allow_interior", cfg.probe.allow_interior);
  pr.text("a_min", cfg.probe.a_min);
  pr.text("frame", cfg.probe.frame);

  Reader rf{section("refine")};
  rf.check_known({"direction", "epsilon", "constant", "level", "unit", "grid", "grid_digest", "axis", "ball_delta",
                  "ball_samples", "seed", "cells"});
  rf.count("direction", cfg.refine.direction);
  rf.real("epsilon", cfg.refine.epsilon);
  rf.real("constant", cfg.refine.constant);
  rf.real("level", cfg.refine.level);
  if (rf.single("unit")) {
    double u = 0;
    rf.real("unit", u);
    cfg.refine.unit = u;
  }
  rf.text("grid", cfg.refine.grid);
  if (rf.single("axis")) {
    std::size_t a = 0;
    rf.count("axis", a);
    cfg.refine.axis = a;
  }
  if (rf.single("grid_digest")) {
    std::string want;
    rf.text("grid_digest", want);
    if (digest(read_file(cfg.refine.grid)) != want)
      throw IoError("grid file '" + cfg.refine.grid + "' changed since the manifest was written");
  }
  rf.real("ball_delta", cfg.refine.ball_delta);
  rf.count("ball_samples", cfg.refine.ball_samples);
  rf.count("seed", cfg.refine.seed);
  rf.count("cells", cfg.refine.cells);

  Reader ex{section("extremal")};
  ex.check_known({"p1", "q", "delta0", "K", "samples", "seed", "resolution", "supersample", "budget", "a_min"});
  ex.text("p1", cfg.extremal.p1);
  ex.text("q", cfg.extremal.q);
  ex.real("delta0", cfg.extremal.delta0);
  ex.real("K", cfg.extremal.K);
  ex.count("samples", cfg.extremal.samples);
  ex.count("seed", cfg.extremal.seed);
  ex.count("resolution", cfg.extremal.resolution);
  ex.count("supersample", cfg.extremal.supersample);
  ex.count("budget", cfg.extremal.budget);
  ex.text("a_min", cfg.extremal.a_min);
  return cfg;
}

std::map<std::string, std::string> manifest_digests(const Config& c) {
  std::map<std::string, std::string> out;
  if (!c.has("outputs")) return out;
  for (const auto& e : c.section("outputs").entries) {
    if (e.values.size() != 1) throw ConfigError(e.line, 0, "output digests take one value");
    out[e.key] = e.values[0].text;
  }
  return out;
}

void write_outputs(const std::string& dir, const RunConfig& cfg, const RunResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  auto put = [&](const std::string& name, const std::string& bytes) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f || !(f << bytes)) throw IoError("cannot write '" + (fs::path(dir) / name).string() + "'");
  };
  for (const auto& [name, bytes] : result.files) put(name, bytes);
  put("manifest.cfg", manifest_text(cfg, result));
}

}  // namespace radonlp::cli
