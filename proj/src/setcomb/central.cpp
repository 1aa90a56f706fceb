#include "radonlp/setcomb/central.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radonlp {

double DyadicInterval::length() const { return std::ldexp(1.0, scale); }
double DyadicInterval::lo() const { return std::ldexp(static_cast<double>(index), scale); }
double DyadicInterval::hi() const { return std::ldexp(static_cast<double>(index + 1), scale); }

std::pair<DyadicInterval, double> best_dyadic(const IntervalUnion& s, int scale) {
  if (s.empty()) throw std::invalid_argument("empty set has no dyadic interval");
  const double len = std::ldexp(1.0, scale);
  std::optional<DyadicInterval> best;
  double best_mass = -1;
  auto consider = [&](std::int64_t k) {
    DyadicInterval d{scale, k};
    double m = s.measure_in(d.lo(), d.hi());
    if (m > best_mass || (m == best_mass && k < best->index)) {
      best = d;
      best_mass = m;
    }
  };
  for (const auto& p : s.pieces()) {
    auto first = static_cast<std::int64_t>(std::floor(p.lo / len));
    auto last = static_cast<std::int64_t>(std::ceil(p.hi / len)) - 1;
    consider(first);
    if (first + 1 <= last) consider(first + 1);
    if (last > first + 1) consider(last);
  }
  return {*best, best_mass};
}

double ambient_unit(const IntervalUnion& s) {
  double m = s.max_abs();
  if (!(m > 0)) throw std::invalid_argument("ambient scale of a set at the origin is undefined");
  int e;
  std::frexp(m, &e);  // m = f 2^e, f in [1/2, 1)
  double u = std::ldexp(1.0, e);
  return std::ldexp(1.0, e - 1) >= m ? std::ldexp(1.0, e - 1) : u;
}

WidthResult width_of(const IntervalUnion& s, double epsilon, std::optional<double> unit,
                     std::optional<int> min_scale) {
  if (s.empty() || !(s.measure() > 0)) throw std::invalid_argument("width of an empty set");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  WidthResult r;
  r.unit = unit ? *unit : ambient_unit(s);
  if (!(r.unit > 0)) throw std::invalid_argument("unit must be positive");
  const double total = s.measure();
  // Below L* even a fully covered interval misses the threshold.
  const double lstar = std::pow(total * std::pow(r.unit, -epsilon) / 4, 1 / (1 - epsilon));
  int lo = static_cast<int>(std::floor(std::log2(lstar))) - 1;
  if (min_scale) lo = std::max(lo, *min_scale);
  const int hi = static_cast<int>(std::ceil(std::log2(s.max_abs()))) + 1;
  for (int j = lo; j <= hi; ++j) {
    auto [d, mass] = best_dyadic(s, j);
    ScaleProfile p{d, mass, 0.25 * std::pow(d.length() / r.unit, epsilon) * total, false};
    p.satisfied = mass >= p.threshold;
    r.profile.push_back(p);
    if (p.satisfied) {
      r.width = d.length();
      r.interval = d;
      return r;
    }
  }
  throw std::domain_error("no dyadic scale meets the width threshold (unit too small for the set)");
}

CentralCheck is_central(const IntervalUnion& s, double w, double epsilon, double constant) {
  if (s.empty() || !(s.measure() > 0)) throw std::invalid_argument("centrality of an empty set");
  if (!(w > 0) || !(constant > 0)) throw std::invalid_argument("width and constant must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  CentralCheck c;
  const double total = s.measure();
  c.max_abs_over_w = s.max_abs() / w;
  c.support_ok = c.max_abs_over_w <= constant;
  c.worst_ratio = -1;
  const int top = static_cast<int>(std::ceil(std::log2(std::max(2 * s.max_abs(), w)))) + 1;
  for (int j = top; j > -1000; --j) {
    double len = std::ldexp(1.0, j);
    // A scale-j interval holds at most len, so finer scales cannot beat the worst found.
    if (c.worst_ratio >= 0 && len / (std::pow(len / w, epsilon) * total) < c.worst_ratio) break;
    auto [d, mass] = best_dyadic(s, j);
    double ratio = mass / (std::pow(len / w, epsilon) * total);
    if (ratio > c.worst_ratio) {
      c.worst_ratio = ratio;
      c.worst = d;
    }
  }
  c.pass = c.support_ok && c.worst_ratio <= constant;
  return c;
}

double width_monotonicity_constant(double constant, double epsilon) {
  return std::pow(2 * constant, 1 + 1 / epsilon);
}

}  // namespace radonlp
