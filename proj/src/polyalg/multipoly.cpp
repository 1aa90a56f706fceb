#include "radonlp/polyalg/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radonlp {

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  MultiPoly p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
  MultiPoly p(e.size());
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto k) { return k == 0; });
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MultiPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto k : e) s += k;
    best = std::max(best, s);
  }
  return best;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max<unsigned>(best, e[var]);
  return best;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
  MultiPoly out(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, Rational(ca * cb));
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(nvars_, Rational(1));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, Rational(c * e[var]));
  }
  return out;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong size");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term *= radonlp::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong size");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term *= std::pow(point[i], static_cast<int>(e[i]));
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(std::span<const std::optional<Rational>> values) const {
  if (values.size() != nvars_) throw std::invalid_argument("substitution has wrong size");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent kept = e;
    Rational coef = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (values[i] && e[i] != 0) {
        coef *= radonlp::pow(*values[i], e[i]);
        kept[i] = 0;
      }
    }
    out.add_term(kept, coef);
  }
  return out;
}

MultiPoly MultiPoly::compose(std::size_t var, const MultiPoly& value) const {
  if (value.nvars_ != nvars_) throw std::invalid_argument("variable count mismatch");
  MultiPoly out(nvars_);
  unsigned maxdeg = degree_in(var);
  std::vector<MultiPoly> powers{constant(nvars_, Rational(1))};
  for (unsigned k = 1; k <= maxdeg; ++k) powers.push_back(powers.back() * value);
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    rest[var] = 0;
    out += monomial(rest, c) * powers[e[var]];
  }
  return out;
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const {
  if (index_map.size() != nvars_) throw std::invalid_argument("index map has wrong size");
  MultiPoly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponent ne(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (index_map[i] >= new_nvars) throw std::out_of_range("index map target out of range");
      ne[index_map[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (names.size() != nvars_) throw std::invalid_argument("name list has wrong size");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool any_var = std::any_of(e.begin(), e.end(), [](auto k) { return k != 0; });
    bool wrote = false;
    if (!any_var || mag != 1) {
      os << radonlp::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact division and gcd

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
  MultiPoly q(a.nvars());
  MultiPoly r = a;
  const Exponent& lb = b.leading_exponent();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    Exponent d = r.leading_exponent();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < lb[i]) return std::nullopt;
      d[i] -= lb[i];
    }
    MultiPoly m = MultiPoly::monomial(d, Rational(r.leading_coefficient() / cb));
    q += m;
    r -= m * b;
  }
  return q;
}

namespace {

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coefficient());
}

}  // namespace

MultiPoly integer_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Integer den_lcm(1), num_gcd(0);
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_coefficient() < 0) scale = -scale;
  return p * scale;
}

namespace {

MultiPoly coefficient_in(const MultiPoly& p, std::size_t var, unsigned degree) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != degree) continue;
    Exponent f = e;
    f[var] = 0;
    out += MultiPoly::monomial(f, c);
  }
  return out;
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  std::map<unsigned, MultiPoly> by_degree;
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[var] = 0;
    auto [it, inserted] = by_degree.try_emplace(e[var], MultiPoly(p.nvars()));
    it->second += MultiPoly::monomial(f, c);
  }
  std::vector<MultiPoly> out;
  for (auto& [d, c] : by_degree) out.push_back(std::move(c));
  // Fewest terms first makes the running gcd collapse to 1 sooner.
  std::sort(out.begin(), out.end(),
            [](const MultiPoly& x, const MultiPoly& y) { return x.term_count() < y.term_count(); });
  return out;
}

int main_variable(const MultiPoly& a, const MultiPoly& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.depends_on(v) || b.depends_on(v)) return static_cast<int>(v);
  return -1;
}

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  MultiPoly g(p.nvars());
  for (const auto& c : coefficients_in(p, var)) {
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly::constant(p.nvars(), Rational(1));
  }
  return g;
}

MultiPoly primitive_part(const MultiPoly& p, std::size_t var) {
  MultiPoly c = content_in(p, var);
  if (c.is_constant()) return integer_primitive(p);
  return integer_primitive(*divide_exact(p, c));
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  unsigned db = b.degree_in(var);
  MultiPoly lcb = coefficient_in(b, var, db);
  MultiPoly r = a;
  Exponent shift(a.nvars(), 0);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    shift[var] = dr - db;
    MultiPoly t = coefficient_in(r, var, dr) * MultiPoly::monomial(shift, Rational(1));
    r = lcb * r - t * b;
  }
  return r;
}

Integer max_norm(const MultiPoly& p) {
  Integer best(0);
  for (const auto& [e, c] : p.terms()) {
    Integer v = abs(c.get_num());
    if (v > best) best = v;
  }
  return best;
}

Integer integer_content(const MultiPoly& p) {
  Integer g(0);
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
  return g;
}

// Rebuilds a polynomial in `var` from its value at var = x using balanced
// x-adic digits of the integer coefficients.
MultiPoly interpolate_adic(MultiPoly h, const Integer& x, std::size_t var) {
  MultiPoly out(h.nvars());
  Integer half = x / 2;
  Exponent shift(h.nvars(), 0);
  Rational inv_x(Integer(1), x);
  for (std::uint32_t i = 0; !h.is_zero(); ++i) {
    MultiPoly digit(h.nvars());
    for (const auto& [e, c] : h.terms()) {
      Integer r;
      mpz_mod(r.get_mpz_t(), c.get_num().get_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) digit += MultiPoly::monomial(e, Rational(r));
    }
    shift[var] = i;
    out += digit * MultiPoly::monomial(shift, Rational(1));
    h -= digit;
    h *= inv_x;
  }
  return out;
}

// Heuristic gcd over Z[vars] by evaluation at a large integer and x-adic
// reconstruction (Char, Geddes and Gonnet). Inputs have integer coefficients;
// the result is the full integer gcd with positive leading coefficient, or
// nullopt when every evaluation point was unlucky.
std::optional<MultiPoly> heuristic_gcd(const MultiPoly& f0, const MultiPoly& g0, int depth = 0) {
  const std::size_t n = f0.nvars();
  Integer cf = integer_content(f0), cg = integer_content(g0);
  Integer gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f0.is_constant() || g0.is_constant()) return MultiPoly::constant(n, Rational(gc));
  MultiPoly f = f0 * Rational(Integer(1), cf), g = g0 * Rational(Integer(1), cg);
  int mv = main_variable(f, g);
  auto v = static_cast<std::size_t>(mv);
  Integer bound = 2 * std::min(max_norm(f), max_norm(g)) + 29;
  Integer x = bound;
  std::vector<std::optional<Rational>> at(n);
  for (int attempt = 0; attempt < 6 && depth < 64; ++attempt, x = x * 3 + 7) {
    at[v] = Rational(x);
    MultiPoly ff = f.substitute(at), gg = g.substitute(at);
    if (ff.is_zero() || gg.is_zero()) continue;
    auto hh = heuristic_gcd(ff, gg, depth + 1);
    if (!hh) continue;
    MultiPoly h = interpolate_adic(*hh, x, v);
    if (h.is_zero()) continue;
    h = integer_primitive(h);
    if (divide_exact(f, h) && divide_exact(g, h)) return h * Rational(gc);
  }
  return std::nullopt;
}

MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.nvars(), Rational(1));
  if (auto h = heuristic_gcd(integer_primitive(a), integer_primitive(b))) return monic(*h);
  return prs_gcd(a, b);
}

namespace {

MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
  const std::size_t n = a.nvars();
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, Rational(1));

  int mv = main_variable(a, b);
  auto v = static_cast<std::size_t>(mv);
  unsigned da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return gcd(a, content_in(b, v));
  if (db == 0) return gcd(content_in(a, v), b);

  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = integer_primitive(ca.is_constant() ? a : *divide_exact(a, ca));
  MultiPoly pb = integer_primitive(cb.is_constant() ? b : *divide_exact(b, cb));
  if (divide_exact(pa, pb)) return monic(c * pb);
  if (divide_exact(pb, pa)) return monic(c * pa);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  MultiPoly g(n);
  for (;;) {
    MultiPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = MultiPoly::constant(n, Rational(1));
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return monic(c * primitive_part(g, v));
}

}  // namespace

}  // namespace radonlp
