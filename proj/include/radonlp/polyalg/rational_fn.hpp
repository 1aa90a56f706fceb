#pragma once

#include "radonlp/polyalg/multipoly.hpp"

namespace radonlp {

/// Quotient of two polynomials in a shared variable context.
///
/// Always stored with gcd(num, den) = 1 and the denominator's leading
/// coefficient equal to 1, so equal functions compare equal structurally.
class RationalFn {
 public:
  explicit RationalFn(std::size_t nvars = 0) : num_(nvars), den_(MultiPoly::constant(nvars, Rational(1))) {}
  RationalFn(MultiPoly num);  // NOLINT(google-explicit-constructor)
  RationalFn(MultiPoly num, MultiPoly den);

  static RationalFn constant(std::size_t nvars, const Rational& c) {
    return RationalFn(MultiPoly::constant(nvars, c));
  }

  std::size_t nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function; precondition: is_constant().
  Rational constant_value() const { return num_.constant_term(); }

  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);

  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  RationalFn operator-() const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFn derivative(std::size_t var) const;

  /// Throws std::domain_error when the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  RationalFn substitute(std::span<const std::optional<Rational>> values) const;
  RationalFn remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void normalize();

  MultiPoly num_;
  MultiPoly den_;
};

/// Partial derivative with bounds checking (std::out_of_range).
RationalFn partial_derivative(const RationalFn& f, std::size_t var);

}  // namespace radonlp
