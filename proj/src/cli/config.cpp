#include "radonlp/cli/config.hpp"

#include "radonlp/polyalg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radonlp::cli {

ConfigError::ConfigError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(line == 0 ? "config: " + msg
                                   : "config line " + std::to_string(line) +
                                         (column ? ", column " + std::to_string(column) : std::string()) + ": " + msg),
      line(line),
      column(column) {}

bool ConfigSection::has(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return true;
  return false;
}

const ConfigEntry& ConfigSection::one(const std::string& key) const {
  const ConfigEntry* found = nullptr;
  for (const auto& e : entries) {
    if (e.key != key) continue;
    if (found) throw ConfigError(e.line, 0, "key '" + key + "' given twice in [" + name + "]");
    found = &e;
  }
  if (!found) throw ConfigError(line, 0, "missing key '" + key + "' in [" + name + "]");
  return *found;
}

std::vector<const ConfigEntry*> ConfigSection::all(const std::string& key) const {
  std::vector<const ConfigEntry*> out;
  for (const auto& e : entries)
    if (e.key == key) out.push_back(&e);
  return out;
}

std::string ConfigSection::scalar(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const auto& e = one(key);
  if (e.values.size() != 1) throw ConfigError(e.line, 0, "key '" + key + "' takes exactly one value");
  return e.values[0].text;
}

namespace {

bool key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

bool bare_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '#' && c != '"' && c != '=' && c != '[' &&
         c != ']';
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t i = 0;
    auto skip = [&] {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
    };
    skip();
    if (i == raw.size() || raw[i] == '#') continue;
    if (raw[i] == '[') {
      std::size_t close = raw.find(']', i);
      if (close == std::string::npos) throw ConfigError(lineno, i + 1, "unterminated section header");
      std::string name = raw.substr(i + 1, close - i - 1);
      if (name.empty() || !std::all_of(name.begin(), name.end(), key_char))
        throw ConfigError(lineno, i + 2, "bad section name '" + name + "'");
      i = close + 1;
      skip();
      if (i < raw.size() && raw[i] != '#') throw ConfigError(lineno, i + 1, "text after section header");
      current = &c.add(name);
      if (current->line == 0) current->line = lineno;
      continue;
    }
    if (!current) throw ConfigError(lineno, i + 1, "key outside any [section]");
    ConfigEntry e;
    e.line = lineno;
    std::size_t start = i;
    while (i < raw.size() && key_char(raw[i])) ++i;
    e.key = raw.substr(start, i - start);
    if (e.key.empty()) throw ConfigError(lineno, i + 1, "expected a key");
    skip();
    if (i == raw.size() || raw[i] != '=') throw ConfigError(lineno, i + 1, "expected '=' after '" + e.key + "'");
    ++i;
    skip();
    bool expect_value = false;
    while (i < raw.size() && raw[i] != '#') {
      ConfigValue v;
      v.column = i + 1;
      if (raw[i] == '"') {
        v.quoted = true;
        ++i;
        bool closed = false;
        while (i < raw.size()) {
          char ch = raw[i++];
          if (ch == '"') {
            closed = true;
            break;
          }
          if (ch == '\\') {
            if (i == raw.size()) break;
            char esc = raw[i++];
            if (esc != '"' && esc != '\\') throw ConfigError(lineno, i - 1, "unknown escape '\\" + std::string(1, esc) + "'");
            ch = esc;
          }
          v.text.push_back(ch);
        }
        if (!closed) throw ConfigError(lineno, v.column, "unterminated string");
      } else {
        start = i;
        while (i < raw.size() && bare_char(raw[i])) ++i;
        if (i == start) throw ConfigError(lineno, i + 1, "expected a value");
        v.text = raw.substr(start, i - start);
      }
      e.values.push_back(std::move(v));
      skip();
      expect_value = false;
      if (i < raw.size() && raw[i] == ',') {
        ++i;
        skip();
        expect_value = true;
      } else if (i < raw.size() && raw[i] != '#') {
        throw ConfigError(lineno, i + 1, "expected ',' between values");
      }
    }
    if (expect_value) throw ConfigError(lineno, i + 1, "expected a value after ','");
    current->entries.push_back(std::move(e));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, 0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return true;
  return false;
}

const ConfigSection& Config::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return s;
  throw ConfigError(0, 0, "missing section [" + name + "]");
}

ConfigSection& Config::add(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back({name, 0, {}});
  return sections.back();
}

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

}  // namespace

std::string config_quote(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), bare_char)) return text;
  return quoted(text);
}

std::string to_text(const Config& c) {
  std::string out;
  for (std::size_t s = 0; s < c.sections.size(); ++s) {
    if (s) out += '\n';
    out += "[" + c.sections[s].name + "]\n";
    for (const auto& e : c.sections[s].entries) {
      out += e.key + " =";
      for (std::size_t i = 0; i < e.values.size(); ++i) {
        out += i ? ", " : " ";
        out += e.values[i].quoted ? quoted(e.values[i].text) : e.values[i].text;
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

ConfigEntry make_entry(const std::string& key, const std::vector<std::string>& values, bool quoted) {
  ConfigEntry e;
  e.key = key;
  for (const auto& v : values) e.values.push_back({v, quoted, 0});
  return e;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> texts(const ConfigEntry& e) {
  std::vector<std::string> out;
  for (const auto& v : e.values) out.push_back(v.text);
  return out;
}

void check_expressions(const ConfigSection& s, const std::string& key, const std::vector<std::string>& vars) {
  if (!s.has(key)) return;
  const auto& e = s.one(key);
  for (const auto& v : e.values) {
    try {
      parse_poly(v.text, vars);
    } catch (const ParseError& err) {
      throw ConfigError(e.line, v.column + (v.quoted ? 1 : 0) + err.position,
                        "in '" + key + "': " + std::string(err.what()));
    }
  }
}

}  // namespace

OperatorSpec operator_from_config(const Config& c) {
  const auto& s = c.section("operator");
  OperatorSpec spec;
  const auto& kind = s.one("kind");
  try {
    spec.kind = spec_kind_from_string(s.scalar("kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(kind.line, kind.values.empty() ? 0 : kind.values[0].column, e.what());
  }
  spec.name = s.scalar("name");
  const auto& ne = s.one("n");
  if (ne.values.size() != 1) throw ConfigError(ne.line, 0, "n takes one value");
  spec.n = static_cast<std::size_t>(parse_unsigned(ne.values[0], ne.line));
  if (s.has("params")) spec.params = texts(s.one("params"));
  for (const auto& p : spec.params)
    if (p.empty() || !std::isalpha(static_cast<unsigned char>(p[0])))
      throw ConfigError(s.one("params").line, 0, "bad parameter name '" + p + "'");

  std::vector<std::string> coords;
  switch (spec.kind) {
    case SpecKind::Convolution:
    case SpecKind::Diffeo:
      coords = numbered("x", spec.n - 1);
      coords.push_back("t");
      break;
    case SpecKind::XRay:
      coords = numbered("x", spec.n >= 2 ? spec.n - 2 : 0);
      coords.push_back("t");
      coords.push_back("s");
      break;
    case SpecKind::Raw:
      spec.coords = texts(s.one("coords"));
      coords = spec.coords;
      break;
  }
  std::vector<std::string> vars = coords;
  vars.insert(vars.end(), spec.params.begin(), spec.params.end());
  for (const char* key : {"curve", "map", "x1", "x2", "pi1", "pi2"}) check_expressions(s, key, vars);
  if (s.has("curve")) spec.curve = texts(s.one("curve"));
  if (s.has("map")) spec.map = texts(s.one("map"));
  if (s.has("x1")) spec.x1 = texts(s.one("x1"));
  if (s.has("x2")) spec.x2 = texts(s.one("x2"));
  if (s.has("pi1")) spec.pi1 = texts(s.one("pi1"));
  if (s.has("pi2")) spec.pi2 = texts(s.one("pi2"));
  if (s.has("base")) {
    const auto& b = s.one("base");
    for (const auto& v : b.values) {
      try {
        spec.base.push_back(parse_rational(v.text));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(b.line, v.column, e.what());
      }
    }
  }
  for (const auto& e : s.entries) {
    static const std::vector<std::string> known{"kind", "name", "n",  "params", "curve", "map", "coords",
                                                "x1",   "x2",   "pi1", "pi2",   "base"};
    if (std::find(known.begin(), known.end(), e.key) == known.end())
      throw ConfigError(e.line, 1, "unknown key '" + e.key + "' in [operator]");
  }
  if (c.has("parameters")) {
    for (const auto& e : c.section("parameters").entries) {
      if (std::find(spec.params.begin(), spec.params.end(), e.key) == spec.params.end())
        throw ConfigError(e.line, 1, "value for undeclared parameter '" + e.key + "'");
      if (e.values.size() != 1) throw ConfigError(e.line, 0, "parameter values take one rational");
      try {
        spec.param_values[e.key] = parse_rational(e.values[0].text);
      } catch (const std::invalid_argument& err) {
        throw ConfigError(e.line, e.values[0].column, err.what());
      }
    }
  }
  return spec;
}

void operator_to_config(const OperatorSpec& spec, Config& out) {
  auto& s = out.add("operator");
  s.entries.push_back(make_entry("kind", {to_string(spec.kind)}, false));
  if (!spec.name.empty()) s.entries.push_back(make_entry("name", {spec.name}, true));
  s.entries.push_back(make_entry("n", {std::to_string(spec.n)}, false));
  if (!spec.params.empty()) s.entries.push_back(make_entry("params", spec.params, false));
  if (!spec.coords.empty()) s.entries.push_back(make_entry("coords", spec.coords, true));
  auto exprs = [&](const char* key, const std::vector<std::string>& v) {
    if (!v.empty()) s.entries.push_back(make_entry(key, v, true));
  };
  exprs("curve", spec.curve);
  exprs("map", spec.map);
  exprs("x1", spec.x1);
  exprs("x2", spec.x2);
  exprs("pi1", spec.pi1);
  exprs("pi2", spec.pi2);
  if (!spec.base.empty()) {
    std::vector<std::string> b;
    for (const auto& q : spec.base) b.push_back(to_string(q));
    s.entries.push_back(make_entry("base", b, false));
  }
  if (!spec.param_values.empty()) {
    auto& p = out.add("parameters");
    for (const auto& [k, v] : spec.param_values) p.entries.push_back(make_entry(k, {to_string(v)}, false));
  }
}

double parse_real(const ConfigValue& v, std::size_t line) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.text.size() || !std::isfinite(x)) {
    // Fall back to an exact rational such as 1/16.
    try {
      return to_double(parse_rational(v.text));
    } catch (const std::invalid_argument&) {
      throw ConfigError(line, v.column, "expected a number, got '" + v.text + "'");
    }
  }
  return x;
}

std::uint64_t parse_unsigned(const ConfigValue& v, std::size_t line) {
  if (v.text.empty() || !std::all_of(v.text.begin(), v.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ConfigError(line, v.column, "expected a non-negative integer, got '" + v.text + "'");
  try {
    return std::stoull(v.text);
  } catch (const std::out_of_range&) {
    throw ConfigError(line, v.column, "integer out of range");
  }
}

std::vector<double> parse_radii(const std::string& text) {
  auto dots = text.find("..");
  std::vector<double> out;
  if (dots != std::string::npos) {
    auto exponent = [&](const std::string& part) {
      if (part.rfind("2^", 0) != 0) throw std::invalid_argument("range bounds must read 2^k, got '" + part + "'");
      std::size_t used = 0;
      int k = std::stoi(part.substr(2), &used);
      if (used != part.size() - 2) throw std::invalid_argument("bad exponent in '" + part + "'");
      return k;
    };
    int a = exponent(text.substr(0, dots)), b = exponent(text.substr(dots + 2));
    int step = a <= b ? 1 : -1;
    for (int k = a;; k += step) {
      out.push_back(std::ldexp(1.0, k));
      if (k == b) break;
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty radius in '" + text + "'");
    item = item.substr(b, e - b + 1);
    if (item.rfind("2^", 0) == 0) {
      out.push_back(std::ldexp(1.0, std::stoi(item.substr(2))));
      continue;
    }
    ConfigValue v{item, false, 0};
    out.push_back(parse_real(v, 0));
  }
  if (out.empty()) throw std::invalid_argument("no radii given");
  return out;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace radonlp::cli
