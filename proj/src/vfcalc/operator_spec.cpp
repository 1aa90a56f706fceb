#include "radonlp/vfcalc/operator_spec.hpp"

#include "radonlp/polyalg/det.hpp"
#include "radonlp/polyalg/echelon.hpp"
#include "radonlp/polyalg/parser.hpp"

#include <stdexcept>

namespace radonlp {

std::string to_string(SpecKind k) {
  switch (k) {
    case SpecKind::Raw: return "raw";
    case SpecKind::Convolution: return "convolution";
    case SpecKind::XRay: return "xray";
    case SpecKind::Diffeo: return "diffeo";
  }
  return "?";
}

SpecKind spec_kind_from_string(const std::string& s) {
  if (s == "raw") return SpecKind::Raw;
  if (s == "convolution") return SpecKind::Convolution;
  if (s == "xray") return SpecKind::XRay;
  if (s == "diffeo") return SpecKind::Diffeo;
  throw std::invalid_argument("unknown operator kind '" + s + "' (expected raw, convolution, xray or diffeo)");
}

std::vector<std::string> FieldData::names() const {
  std::vector<std::string> out = coords;
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

std::vector<std::string> FieldData::free_params() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < params.size(); ++k) {
    bool used = false;
    auto uses = [&](const RationalFn& f) { return f.num().depends_on(n + k) || f.den().depends_on(n + k); };
    for (std::size_t i = 0; i < n && !used; ++i) used = uses(x1[i]) || uses(x2[i]);
    if (used) out.push_back(params[k]);
  }
  return out;
}

namespace {

struct Context {
  std::size_t n;
  std::vector<std::string> names;
  std::vector<std::optional<Rational>> specialization;

  std::size_t nvars() const { return names.size(); }

  RationalFn parse(const std::string& text) const {
    return RationalFn(parse_poly(text, names).substitute(specialization));
  }
  RationalFn var(std::size_t i) const { return RationalFn(MultiPoly::variable(nvars(), i)); }
  RationalFn constant(const Rational& c) const { return RationalFn::constant(nvars(), c); }
};

Context make_context(const OperatorSpec& spec, std::vector<std::string> coords) {
  Context ctx;
  ctx.n = coords.size();
  ctx.names = std::move(coords);
  for (const auto& p : spec.params) {
    for (const auto& c : ctx.names)
      if (c == p) throw SpecError("parameter '" + p + "' collides with a coordinate name");
    ctx.names.push_back(p);
  }
  ctx.specialization.assign(ctx.names.size(), std::nullopt);
  for (const auto& [name, value] : spec.param_values) {
    std::size_t k = 0;
    while (k < spec.params.size() && spec.params[k] != name) ++k;
    if (k == spec.params.size()) throw SpecError("value given for undeclared parameter '" + name + "'");
    ctx.specialization[ctx.n + k] = value;
  }
  return ctx;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

RationalFn at_time_zero(const RationalFn& f, std::size_t tvar) {
  std::vector<std::optional<Rational>> v(f.nvars());
  v[tvar] = Rational(0);
  return f.substitute(v);
}

void require_size(const std::vector<std::string>& v, std::size_t want, const std::string& what) {
  if (v.size() != want)
    throw SpecError(what + " needs " + std::to_string(want) + " expressions, got " + std::to_string(v.size()));
}

std::vector<Rational> base_point(const OperatorSpec& spec, std::size_t n) {
  if (spec.base.empty()) return std::vector<Rational>(n, Rational(0));
  if (spec.base.size() != n) throw SpecError("base point has " + std::to_string(spec.base.size()) +
                                             " coordinates, expected " + std::to_string(n));
  return spec.base;
}

void check_pushforward(const FieldData& fd) {
  for (int j = 1; j <= 2; ++j) {
    const VectorField& x = j == 1 ? fd.x1 : fd.x2;
    const auto& pi = j == 1 ? fd.pi1 : fd.pi2;
    for (const auto& comp : pi)
      if (!x.apply(comp).is_zero())
        throw SpecError("X" + std::to_string(j) + " is not tangent to the fibers of pi" + std::to_string(j) +
                        " (X" + std::to_string(j) + " applied to " + comp.to_string(fd.names()) + " is nonzero)");
    auto v = x.at(fd.base);
    bool nonzero = false;
    for (const auto& c : v) nonzero = nonzero || !c.is_zero();
    if (!nonzero) throw SpecError("X" + std::to_string(j) + " vanishes at the base point");
    Echelon<RationalFn> rank(fd.n);
    for (const auto& comp : pi) {
      std::vector<RationalFn> grad;
      for (std::size_t k = 0; k < fd.n; ++k) grad.push_back(comp.derivative(k));
      rank.try_add(VectorField(grad).at(fd.base));
    }
    if (rank.rank() != fd.n - 1)
      throw SpecError("pi" + std::to_string(j) + " is not a submersion at the base point");
  }
}

FieldData build_convolution(const OperatorSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw SpecError("convolution needs n >= 2");
  require_size(spec.curve, n - 1, "convolution curve");
  auto coords = numbered("x", n - 1);
  coords.push_back("t");
  Context ctx = make_context(spec, coords);
  const std::size_t t = n - 1;
  std::vector<RationalFn> gamma;
  for (const auto& e : spec.curve) {
    RationalFn g = ctx.parse(e);
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (g.num().depends_on(i)) throw SpecError("convolution curve component '" + e + "' depends on x");
    gamma.push_back(g);
  }
  bool derivative_nonzero = false;
  for (const auto& g : gamma) {
    if (!at_time_zero(g, t).is_zero()) throw SpecError("convolution curve must satisfy gamma(0) = 0");
    derivative_nonzero = derivative_nonzero || !at_time_zero(g.derivative(t), t).is_zero();
  }
  if (!derivative_nonzero) throw SpecError("convolution curve must satisfy gamma'(0) != 0");

  FieldData fd;
  fd.n = n;
  fd.coords = coords;
  fd.params = spec.params;
  fd.base = base_point(spec, n);
  fd.x1 = VectorField::coordinate(n, ctx.nvars(), t);
  std::vector<RationalFn> x2(n, RationalFn(ctx.nvars()));
  for (std::size_t i = 0; i + 1 < n; ++i) x2[i] = -gamma[i].derivative(t);
  x2[t] = ctx.constant(Rational(1));
  fd.x2 = VectorField(x2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    fd.pi1.push_back(ctx.var(i));
    fd.pi2.push_back(ctx.var(i) + gamma[i]);
  }
  return fd;
}

FieldData build_xray(const OperatorSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 3) throw SpecError("x-ray transform needs n >= 3");
  const std::size_t m = n - 2;
  auto coords = numbered("x", m);
  coords.push_back("t");
  coords.push_back("s");
  Context ctx = make_context(spec, coords);
  const std::size_t t = m, s = m + 1;
  FieldData fd;
  fd.n = n;
  fd.coords = coords;
  fd.params = spec.params;
  fd.base = base_point(spec, n);
  std::vector<RationalFn> x1(n, RationalFn(ctx.nvars()));
  RationalFn tv = ctx.var(t), sv = ctx.var(s);
  for (std::size_t i = 0; i < m; ++i) {
    RationalFn gi(MultiPoly::variable(ctx.nvars(), s).pow(static_cast<unsigned>(i + 1)));
    x1[i] = -(tv * gi.derivative(s));
    fd.pi1.push_back(ctx.var(i) + tv * gi);
    fd.pi2.push_back(ctx.var(i));
  }
  x1[s] = ctx.constant(Rational(1));
  fd.pi1.push_back(tv);
  fd.pi2.push_back(sv);
  fd.x1 = VectorField(x1);
  fd.x2 = VectorField::coordinate(n, ctx.nvars(), t);
  return fd;
}

Matrix<RationalFn> minor_of(const Matrix<RationalFn>& a, std::size_t r, std::size_t c) {
  Matrix<RationalFn> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == r) continue;
    std::vector<RationalFn> row;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != c) row.push_back(a[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

FieldData build_diffeo(const OperatorSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw SpecError("diffeomorphism family needs n >= 2");
  const std::size_t m = n - 1;
  require_size(spec.map, m, "diffeomorphism family");
  auto coords = numbered("x", m);
  coords.push_back("t");
  Context ctx = make_context(spec, coords);
  const std::size_t t = m;
  std::vector<RationalFn> gamma;
  for (const auto& e : spec.map) gamma.push_back(ctx.parse(e));
  for (std::size_t i = 0; i < m; ++i)
    if (!(at_time_zero(gamma[i], t) == ctx.var(i)))
      throw SpecError("diffeomorphism family must satisfy gamma(x, 0) = x (component " + std::to_string(i + 1) + ")");

  FieldData fd;
  fd.n = n;
  fd.coords = coords;
  fd.params = spec.params;
  fd.base = base_point(spec, n);

  Matrix<RationalFn> dx(m, std::vector<RationalFn>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dx[i][j] = gamma[i].derivative(j);
  RationalFn jac = det(dx);
  std::vector<std::optional<Rational>> at_base(ctx.nvars());
  for (std::size_t i = 0; i < m; ++i) at_base[i] = fd.base[i];
  at_base[t] = Rational(0);
  if (jac.substitute(at_base).is_zero()) throw SpecError("det(D_x gamma) vanishes at t = 0: not a local diffeomorphism family");

  // W = -(D_x gamma)^{-1} d_t gamma = adj(D_x gamma) (-d_t gamma) / det.
  std::vector<RationalFn> wnum(m, RationalFn(ctx.nvars()));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      RationalFn cof = m == 1 ? ctx.constant(Rational(1)) : det(minor_of(dx, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      wnum[i] -= cof * gamma[j].derivative(t);
    }
  }
  std::vector<RationalFn> w;
  for (const auto& c : wnum) w.push_back(c / jac);
  for (std::size_t i = 0; i < m; ++i) {
    RationalFn row(ctx.nvars());
    for (std::size_t j = 0; j < m; ++j) row += dx[i][j] * w[j];
    if (!(row + gamma[i].derivative(t)).is_zero()) throw std::logic_error("W fails D_x gamma W + d_t gamma = 0");
  }
  fd.w = w;

  std::vector<RationalFn> x1;
  if (jac == ctx.constant(Rational(1))) {
    x1 = w;
    x1.push_back(ctx.constant(Rational(1)));
  } else {
    x1 = wnum;
    x1.push_back(jac);
    fd.rescaled = true;
    fd.warnings.push_back("X1 rescaled by det(D_x gamma) = " + jac.to_string(ctx.names) +
                          " to keep polynomial coefficients; generator degrees are unaffected on the built-in examples");
  }
  fd.x1 = VectorField(x1);
  fd.x2 = VectorField::coordinate(n, ctx.nvars(), t);
  fd.pi1 = gamma;
  for (std::size_t i = 0; i < m; ++i) fd.pi2.push_back(ctx.var(i));
  return fd;
}

FieldData build_raw(const OperatorSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw SpecError("raw fields need n >= 2");
  require_size(spec.coords, n, "coordinate list");
  require_size(spec.x1, n, "X1");
  require_size(spec.x2, n, "X2");
  require_size(spec.pi1, n - 1, "pi1");
  require_size(spec.pi2, n - 1, "pi2");
  Context ctx = make_context(spec, spec.coords);
  FieldData fd;
  fd.n = n;
  fd.coords = spec.coords;
  fd.params = spec.params;
  fd.base = base_point(spec, n);
  std::vector<RationalFn> x1, x2;
  for (const auto& e : spec.x1) x1.push_back(ctx.parse(e));
  for (const auto& e : spec.x2) x2.push_back(ctx.parse(e));
  fd.x1 = VectorField(x1);
  fd.x2 = VectorField(x2);
  for (const auto& e : spec.pi1) fd.pi1.push_back(ctx.parse(e));
  for (const auto& e : spec.pi2) fd.pi2.push_back(ctx.parse(e));
  return fd;
}

}  // namespace

FieldData spec_to_fields(const OperatorSpec& spec) {
  FieldData fd;
  switch (spec.kind) {
    case SpecKind::Convolution: fd = build_convolution(spec); break;
    case SpecKind::XRay: fd = build_xray(spec); break;
    case SpecKind::Diffeo: fd = build_diffeo(spec); break;
    case SpecKind::Raw: fd = build_raw(spec); break;
  }
  check_pushforward(fd);
  return fd;
}

std::vector<std::string> preset_names() {
  return {"conv-poly", "conv-parabola", "xray", "r5-example", "secco", "diffeo-constant", "commuting"};
}

OperatorSpec make_preset(const std::string& name, std::optional<std::size_t> n) {
  OperatorSpec s;
  s.name = name;
  if (name == "conv-poly" || name == "conv-parabola") {
    s.kind = SpecKind::Convolution;
    s.n = name == "conv-parabola" ? 3 : n.value_or(4);
    if (name == "conv-parabola" && n && *n != 3) throw std::invalid_argument("conv-parabola is fixed at n = 3");
    if (s.n < 2) throw std::invalid_argument("conv-poly needs n >= 2");
    for (std::size_t k = 1; k < s.n; ++k) s.curve.push_back(k == 1 ? "t" : "t^" + std::to_string(k));
  } else if (name == "xray") {
    s.kind = SpecKind::XRay;
    s.n = n.value_or(4);
    if (s.n < 3) throw std::invalid_argument("xray needs n >= 3");
  } else if (name == "r5-example") {
    s.kind = SpecKind::Diffeo;
    s.n = 5;
    s.map = {"x1 + t", "x2 + t^2", "x3 + t^3", "x4 + t^4 + x2*t"};
  } else if (name == "secco") {
    s.kind = SpecKind::Diffeo;
    s.n = 4;
    s.params = {"a"};
    s.map = {"x1 + t", "x2 + t^2", "x3 + a*t^3 + 1/2*x1*t^2 - 1/2*x2*t"};
  } else if (name == "diffeo-constant") {
    s.kind = SpecKind::Diffeo;
    s.n = n.value_or(3);
    if (s.n < 2) throw std::invalid_argument("diffeo-constant needs n >= 2");
    for (std::size_t i = 1; i < s.n; ++i) s.map.push_back("x" + std::to_string(i));
  } else if (name == "commuting") {
    s.kind = SpecKind::Raw;
    s.n = 2;
    s.coords = {"x1", "x2"};
    s.x1 = {"1", "0"};
    s.x2 = {"0", "1"};
    s.pi1 = {"x2"};
    s.pi2 = {"x1"};
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  if (n && (name == "r5-example" || name == "secco" || name == "commuting") && *n != s.n)
    throw std::invalid_argument("preset " + name + " has fixed dimension " + std::to_string(s.n));
  return s;
}

}  // namespace radonlp
