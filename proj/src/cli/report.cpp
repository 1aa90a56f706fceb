#include "radonlp/cli/report.hpp"

#include "radonlp/polytope/generators.hpp"
#include "radonlp/vfcalc/word_table.hpp"

#include <cstdio>
#include <sstream>

namespace radonlp::cli {

using nlohmann::json;

namespace {

json qpoint(const QPoint& p) { return json::array({to_fraction_string(p.x), to_fraction_string(p.y)}); }

QPoint qpoint_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a rational pair");
  return {parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

json degree(Degree d) { return json::array({d.d1, d.d2}); }

Degree degree_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a degree pair");
  return {j[0].get<unsigned>(), j[1].get<unsigned>()};
}

std::vector<std::string> components(const VectorField& x, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& c : x.components()) out.push_back(c.to_string(names));
  return out;
}

std::vector<std::string> words(const std::vector<Word>& w) {
  std::vector<std::string> out;
  for (const auto& x : w) out.push_back(x.to_string());
  return out;
}

double approx(const Rational& q) { return to_double(q); }

}  // namespace

AnalysisReport build_analysis(const OperatorSpec& spec, const AnalyzeParams& params) {
  AnalysisReport r;
  r.spec = spec;
  FieldData fd = spec_to_fields(spec);
  const auto names = fd.names();
  r.coords = fd.coords;
  r.x1 = components(fd.x1, names);
  r.x2 = components(fd.x2, names);
  r.warnings = fd.warnings;
  WordTable table = build_words(fd.x1, fd.x2, params.cap);
  r.word_cap = params.cap;
  r.words = table.word_count();
  r.stored = table.entries().size();
  r.zero = table.zero_count();
  auto verdict = hormander_check(table, fd.base);
  r.hormander_witness = words(verdict.witness);
  r.hormander_degree = verdict.witness_degree;
  GeneratorSearch search = find_generators(table, fd.base, params.tuple_cap);
  r.tuple_cap = search.cap;
  std::vector<Degree> degs;
  for (const auto& g : search.generators) {
    GeneratorRow row{g.degree, words(g.witness), ""};
    if (g.lambda.is_constant()) {
      row.lambda = to_fraction_string(g.lambda.constant_value());
    } else {
      row.lambda = g.lambda.to_string(names);
      r.warnings.push_back("generator " + g.degree.to_string() + " is " + describe_value(g.lambda, names));
    }
    r.generators.push_back(row);
    degs.push_back(g.degree);
  }
  NewtonPolytope polytope(degs);
  ExponentRegion region(degs);
  r.polytope_vertices = polytope.vertices();
  r.region_vertices = region.vertices();
  for (const auto& q : params.queries) {
    auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse(q.p1), LebesgueExponent::parse(q.q));
    auto cls = classify_pair(polytope, region, pair);
    QueryRow row;
    row.query = q;
    row.p2 = pair.p2().to_string();
    row.verdict = to_string(cls.verdict);
    row.c = cls.c;
    row.region_point = cls.region_point;
    if (cls.membership) row.membership = to_string(*cls.membership);
    r.queries.push_back(row);
  }
  return r;
}

json spec_to_json(const OperatorSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["name"] = s.name;
  j["n"] = s.n;
  j["params"] = s.params;
  json values = json::object();
  for (const auto& [k, v] : s.param_values) values[k] = to_fraction_string(v);
  j["param_values"] = values;
  j["curve"] = s.curve;
  j["map"] = s.map;
  j["coords"] = s.coords;
  j["x1"] = s.x1;
  j["x2"] = s.x2;
  j["pi1"] = s.pi1;
  j["pi2"] = s.pi2;
  json base = json::array();
  for (const auto& q : s.base) base.push_back(to_fraction_string(q));
  j["base"] = base;
  return j;
}

OperatorSpec spec_from_json(const json& j) {
  OperatorSpec s;
  s.kind = spec_kind_from_string(j.at("kind").get<std::string>());
  s.name = j.at("name").get<std::string>();
  s.n = j.at("n").get<std::size_t>();
  s.params = j.at("params").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("param_values").items()) s.param_values[k] = parse_rational(v.get<std::string>());
  s.curve = j.at("curve").get<std::vector<std::string>>();
  s.map = j.at("map").get<std::vector<std::string>>();
  s.coords = j.at("coords").get<std::vector<std::string>>();
  s.x1 = j.at("x1").get<std::vector<std::string>>();
  s.x2 = j.at("x2").get<std::vector<std::string>>();
  s.pi1 = j.at("pi1").get<std::vector<std::string>>();
  s.pi2 = j.at("pi2").get<std::vector<std::string>>();
  for (const auto& q : j.at("base")) s.base.push_back(parse_rational(q.get<std::string>()));
  return s;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["schema"] = "radonlp.analysis/1";
  j["spec"] = spec_to_json(r.spec);
  j["coords"] = r.coords;
  j["fields"] = {{"X1", r.x1}, {"X2", r.x2}};
  j["word_table"] = {{"cap", r.word_cap}, {"words", r.words}, {"stored", r.stored}, {"zero", r.zero}};
  j["hormander"] = {{"witness", r.hormander_witness}, {"degree", degree(r.hormander_degree)}};
  j["tuple_cap"] = degree(r.tuple_cap);
  json gens = json::array();
  for (const auto& g : r.generators) gens.push_back({{"degree", degree(g.degree)}, {"witness", g.witness}, {"lambda", g.lambda}});
  j["generators"] = gens;
  json pv = json::array();
  for (auto d : r.polytope_vertices) pv.push_back(degree(d));
  j["polytope_vertices"] = pv;
  json rv = json::array();
  for (const auto& p : r.region_vertices) rv.push_back(qpoint(p));
  j["region_vertices"] = rv;
  json qs = json::array();
  for (const auto& q : r.queries) {
    json e{{"p1", q.query.p1}, {"q", q.query.q}, {"p2", q.p2}, {"verdict", q.verdict},
           {"region_point", qpoint(q.region_point)}};
    e["c"] = q.c ? qpoint(*q.c) : json(nullptr);
    e["membership"] = q.membership ? json(*q.membership) : json(nullptr);
    qs.push_back(e);
  }
  j["queries"] = qs;
  j["warnings"] = r.warnings;
  return j;
}

AnalysisReport analysis_from_json(const json& j) {
  try {
    if (j.at("schema") != "radonlp.analysis/1") throw std::invalid_argument("unknown report schema");
    AnalysisReport r;
    r.spec = spec_from_json(j.at("spec"));
    r.coords = j.at("coords").get<std::vector<std::string>>();
    r.x1 = j.at("fields").at("X1").get<std::vector<std::string>>();
    r.x2 = j.at("fields").at("X2").get<std::vector<std::string>>();
    const auto& wt = j.at("word_table");
    r.word_cap = wt.at("cap").get<unsigned>();
    r.words = wt.at("words").get<std::size_t>();
    r.stored = wt.at("stored").get<std::size_t>();
    r.zero = wt.at("zero").get<std::size_t>();
    r.hormander_witness = j.at("hormander").at("witness").get<std::vector<std::string>>();
    r.hormander_degree = degree_from(j.at("hormander").at("degree"));
    r.tuple_cap = degree_from(j.at("tuple_cap"));
    for (const auto& g : j.at("generators"))
      r.generators.push_back({degree_from(g.at("degree")), g.at("witness").get<std::vector<std::string>>(),
                              g.at("lambda").get<std::string>()});
    for (const auto& d : j.at("polytope_vertices")) r.polytope_vertices.push_back(degree_from(d));
    for (const auto& p : j.at("region_vertices")) r.region_vertices.push_back(qpoint_from(p));
    for (const auto& q : j.at("queries")) {
      QueryRow row;
      row.query = {q.at("p1").get<std::string>(), q.at("q").get<std::string>()};
      row.p2 = q.at("p2").get<std::string>();
      row.verdict = q.at("verdict").get<std::string>();
      row.region_point = qpoint_from(q.at("region_point"));
      if (!q.at("c").is_null()) row.c = qpoint_from(q.at("c"));
      if (!q.at("membership").is_null()) row.membership = q.at("membership").get<std::string>();
      r.queries.push_back(row);
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("analysis report: ") + e.what());
  }
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream o;
  o << "operator   " << (r.spec.name.empty() ? to_string(r.spec.kind) : r.spec.name) << " (" << to_string(r.spec.kind)
    << ", n = " << r.spec.n << ")\n";
  o << "coords     ";
  for (std::size_t i = 0; i < r.coords.size(); ++i) o << (i ? ", " : "") << r.coords[i];
  o << "\n";
  auto field = [&](const char* name, const std::vector<std::string>& c) {
    o << name << "         (";
    for (std::size_t i = 0; i < c.size(); ++i) o << (i ? ", " : "") << c[i];
    o << ")\n";
  };
  field("X1", r.x1);
  field("X2", r.x2);
  o << "words      " << r.words << " up to degree " << r.word_cap << ", " << r.stored << " stored, " << r.zero
    << " vanishing\n";
  o << "hormander  spans with";
  for (const auto& w : r.hormander_witness) o << " X" << w;
  o << ", degree " << r.hormander_degree.to_string() << "\n";
  o << "tuple cap  " << r.tuple_cap.to_string() << "\n";
  o << "generators\n";
  for (const auto& g : r.generators) {
    o << "  " << g.degree.to_string() << "  I = (";
    for (std::size_t i = 0; i < g.witness.size(); ++i) o << (i ? ", " : "") << g.witness[i];
    o << ")  lambda_I = " << g.lambda << "\n";
  }
  o << "polytope vertices ";
  for (auto d : r.polytope_vertices) o << " " << d.to_string();
  o << "\nregion vertices (1/p1, 1/p2')\n";
  for (const auto& p : r.region_vertices) o << "  (" << to_string(p.x) << ", " << to_string(p.y) << ")\n";
  o << "svg points ";
  for (const auto& p : r.region_vertices) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.6f,%.6f", approx(p.x), 1 - approx(p.y));
    o << buf;
  }
  o << "   (unit square, y flipped)\n";
  for (const auto& q : r.queries) {
    o << "query p1 = " << q.query.p1 << ", p2' = " << q.query.q << ": " << q.verdict;
    if (q.c) o << "  c = (" << to_string(q.c->x) << ", " << to_string(q.c->y) << ")";
    if (q.membership) o << " " << *q.membership;
    o << "\n";
  }
  for (const auto& w : r.warnings) o << "warning: " << w << "\n";
  return o.str();
}

json brackets_json(const OperatorSpec& spec, const BracketsParams& params) {
  FieldData fd = spec_to_fields(spec);
  const auto names = fd.names();
  WordTable table = build_words(fd.x1, fd.x2, params.cap);
  json j;
  j["schema"] = "radonlp.brackets/1";
  j["spec"] = spec_to_json(spec);
  j["coords"] = fd.coords;
  j["cap"] = params.cap;
  json rows = json::array();
  for (const auto& e : table.entries())
    rows.push_back({{"word", e.word.to_string()}, {"degree", degree(e.degree)}, {"field", components(e.field, names)}});
  j["words"] = rows;
  j["vanishing"] = table.zero_count();
  json lambdas = json::array();
  for (const auto& t : params.tuples) {
    std::vector<Word> tuple;
    std::stringstream ss(t);
    std::string w;
    while (std::getline(ss, w, ',')) tuple.push_back(Word::parse(w));
    if (tuple.size() != fd.n) throw std::invalid_argument("tuple '" + t + "' needs " + std::to_string(fd.n) + " words");
    RationalFn v = lambda_I(table, tuple, fd.base);
    lambdas.push_back({{"tuple", t},
                       {"lambda", v.is_constant() ? to_fraction_string(v.constant_value()) : v.to_string(names)},
                       {"status", describe_value(v, names)}});
  }
  j["lambda"] = lambdas;
  return j;
}

std::string brackets_csv(const json& dump) {
  std::ostringstream o;
  o << "word,d1,d2";
  const auto& coords = dump.at("coords");
  for (const auto& c : coords) o << ",X_" << c.get<std::string>();
  o << "\n";
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out.push_back('"');
      out.push_back(ch);
    }
    return out + "\"";
  };
  for (const auto& row : dump.at("words")) {
    o << row.at("word").get<std::string>() << "," << row.at("degree")[0] << "," << row.at("degree")[1];
    for (const auto& c : row.at("field")) o << "," << cell(c.get<std::string>());
    o << "\n";
  }
  return o.str();
}

}  // namespace radonlp::cli
