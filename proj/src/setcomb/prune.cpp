#include "radonlp/setcomb/prune.hpp"

#include "radonlp/setcomb/central.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radonlp {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(unsigned k, const Rational& c) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& t) const {
  Rational s(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

double UPoly::operator()(double t) const {
  double s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + to_double(*it);
  return s;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
  return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& b) const {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = c_;
  std::vector<Rational> q(c_.size() >= b.c_.size() ? c_.size() - b.c_.size() + 1 : 0, Rational(0));
  const Rational& lead = b.c_.back();
  for (int k = static_cast<int>(r.size()) - 1; k >= b.degree(); --k) {
    if (r[k] == 0) continue;
    Rational f = r[k] / lead;
    std::size_t shift = static_cast<std::size_t>(k - b.degree());
    q[shift] = f;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[shift + i] -= f * b.c_[i];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  Rational lead = x.coeffs().back();
  std::vector<Rational> c = x.coeffs();
  for (auto& v : c) v /= lead;
  return UPoly(std::move(c));
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  if (p.degree() < 1) return {p};
  UPoly sf = p.divmod(gcd(p, p.derivative())).first;
  std::vector<UPoly> chain{sf, sf.derivative()};
  while (chain.back().degree() > 0) {
    UPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(UPoly() - r);
  }
  return chain;
}

namespace {

int sign(const Rational& v) { return sgn(v); }

int variations(const std::vector<UPoly>& chain, const Rational& t) {
  int count = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sign(q(t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                                         const Rational& tol) {
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no isolated roots");
  if (hi < lo) throw std::invalid_argument("empty search interval");
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() < 1) return out;
  auto chain = sturm_chain(p);
  const UPoly& sf = chain[0];
  // Roots at the endpoints are reported as points; Sturm counts roots in (a, b].
  if (sf(lo) == 0) out.push_back({lo, lo});
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  std::vector<std::pair<Rational, Rational>> found;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = variations(chain, a) - variations(chain, b);
    if (n == 0) continue;
    if (n == 1) {
      // Bisect on the sign of sf down to tol.
      Rational x = a, y = b;
      if (sf(y) == 0) {
        found.push_back({y, y});
        continue;
      }
      int sy = sign(sf(y));
      while (y - x > tol) {
        Rational mid = (x + y) / 2;
        int sm = sign(sf(mid));
        if (sm == 0) {
          x = y = mid;
          break;
        }
        if (sm == sy)
          y = mid;
        else
          x = mid;
      }
      found.push_back({x, y});
      continue;
    }
    Rational mid = (a + b) / 2;
    stack.push_back({mid, b});
    stack.push_back({a, mid});
  }
  std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

PruneResult prune_polynomial(const UPoly& p, const IntervalUnion& s, const Rational& w, unsigned m,
                             const PruneConfig& cfg) {
  if (s.empty()) throw std::invalid_argument("cannot prune an empty set");
  if (!(w > 0)) throw std::invalid_argument("width must be positive");
  if (p.is_zero()) throw PruneHypothesis("P vanishes identically: no derivative lower bound holds");
  const unsigned d = static_cast<unsigned>(p.degree());
  const double c = cfg.half_width > 0 ? cfg.half_width : ambient_unit(s);

  double norm = 0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) norm += std::abs(to_double(p.coeffs()[k])) * std::pow(c, k);
  if (norm > cfg.budget)
    throw std::invalid_argument("sup norm bound " + std::to_string(norm) + " on [-C, C] exceeds the budget");

  PruneResult r;
  const Rational wm = pow(w, m);
  bool ok = false;
  UPoly deriv = p;
  Rational fact(1);
  for (unsigned j = 0; j <= d && !ok; ++j) {
    if (j > 0) {
      deriv = deriv.derivative();
      fact *= j;
    }
    Rational v = deriv(Rational(0));
    if (abs(v) >= cfg.hypothesis_constant * wm) {
      ok = true;
      r.witness_order = j;
    }
  }
  if (!ok)
    throw PruneHypothesis("no derivative of order <= " + std::to_string(d) + " at 0 reaches " +
                          to_string(cfg.hypothesis_constant) + " * w^" + std::to_string(m));

  r.tau = pow(w, m + 2 * d);
  UPoly tau_poly(std::vector<Rational>{r.tau});
  UPoly q = p * p - tau_poly * tau_poly;  // <= 0 exactly on the sublevel set
  Rational lo = -rational_from_double(c), hi = rational_from_double(c);
  Rational tol = (hi - lo) / Rational(Integer(1) << 80);
  auto roots = isolate_roots(q, lo, hi, tol);

  std::vector<Rational> cuts{lo};
  for (const auto& [a, b] : roots) cuts.push_back((a + b) / 2);
  cuts.push_back(hi);
  std::vector<Interval> sub;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    if (q((cuts[i] + cuts[i + 1]) / 2) <= 0) sub.push_back({to_double(cuts[i]), to_double(cuts[i + 1])});
  }
  IntervalUnion sublevel(sub);
  r.sublevel = sublevel.pieces();
  r.kept = s.subtract(sublevel);
  r.removed = s.subtract(r.kept);
  r.ratio = r.kept.measure() / s.measure();
  return r;
}

}  // namespace radonlp
