#pragma once

#include "radonlp/polyalg/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radonlp {

using Exponent = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms live in a map keyed by exponent vector, so the lexicographic order on
/// exponents (variable 0 most significant) is the canonical term order and two
/// equal polynomials always have identical representations. Zero coefficients
/// are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(const Exponent& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  /// Lex-largest term; precondition: nonzero.
  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly& operator*=(const MultiPoly& o);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Substitutes values for a subset of variables; unset entries stay
  /// symbolic. The variable count is preserved.
  MultiPoly substitute(std::span<const std::optional<Rational>> values) const;

  /// Replaces variable `var` by the polynomial `value` (same variable count).
  MultiPoly compose(std::size_t var, const MultiPoly& value) const;

  /// Re-embeds into a larger variable context; variable i maps to index_map[i].
  MultiPoly remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const;

  /// Text in the expression grammar; parse(to_string(p)) == p.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponent& e, const Rational& c);

  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Exact quotient a / b if b divides a over Q[vars], otherwise nullopt.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

/// p scaled to integer coefficients with content 1 and a positive leading
/// coefficient (zero stays zero).
MultiPoly integer_primitive(const MultiPoly& p);

/// Greatest common divisor over Q[vars], normalized to leading coefficient 1
/// (gcd(0, 0) = 0). Recursive primitive polynomial remainder sequences.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace radonlp
