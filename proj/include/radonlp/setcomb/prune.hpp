#pragma once

#include "radonlp/polyalg/rational.hpp"
#include "radonlp/setcomb/interval_union.hpp"

#include <optional>
#include <vector>

namespace radonlp {

/// Dense univariate polynomial over Q, coefficients from degree 0 up, no
/// trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly monomial(unsigned k, const Rational& c = Rational(1));

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  UPoly derivative() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Euclidean division; throws std::domain_error for b = 0.
  std::pair<UPoly, UPoly> divmod(const UPoly& b) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);

/// Sturm chain of the squarefree part of p.
std::vector<UPoly> sturm_chain(const UPoly& p);

/// Distinct real roots of p in the closed interval [lo, hi], each returned
/// as an isolating rational interval of width <= tol (a point when exact).
std::vector<std::pair<Rational, Rational>> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                                         const Rational& tol);

struct PruneConfig {
  double half_width = 0;                  // C; 0 means the ambient scale of S
  double budget = 1e3;                    // bound on sum |a_k| C^k
  Rational hypothesis_constant = Rational(1);  // |P^(j)(0)| >= constant * w^m
};

struct PruneResult {
  IntervalUnion kept;
  IntervalUnion removed;               // S minus kept
  std::vector<Interval> sublevel;      // maximal intervals of {|P| <= tau} within [-C, C]
  Rational tau;                        // w^{m + 2d}
  unsigned witness_order = 0;          // j with |P^(j)(0)| >= constant w^m
  double ratio = 1;                    // |kept| / |S|
};

/// Thrown when the derivative lower bound fails for every order <= d.
class PruneHypothesis : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Removes {|P| <= w^{m+2d}} from S. The sublevel set is located exactly:
/// real roots of P^2 - tau^2 are isolated by a Sturm chain over Q and the
/// sign of P^2 - tau^2 is evaluated exactly between them.
PruneResult prune_polynomial(const UPoly& p, const IntervalUnion& s, const Rational& w, unsigned m,
                             const PruneConfig& cfg = {});

}  // namespace radonlp
