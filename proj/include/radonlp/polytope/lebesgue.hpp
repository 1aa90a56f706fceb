#pragma once

#include "radonlp/polytope/polytope.hpp"

#include <optional>
#include <string>

namespace radonlp {

/// Lebesgue exponent in [1, inf], held as its reciprocal so that inf is
/// exactly 0.
class LebesgueExponent {
 public:
  static LebesgueExponent finite(const Rational& p);
  static LebesgueExponent infinity() { return LebesgueExponent(Rational(0)); }
  /// Accepts "inf", "infinity", or a rational literal.
  static LebesgueExponent parse(const std::string& text);

  bool is_infinite() const { return inv_ == 0; }
  const Rational& reciprocal() const { return inv_; }
  /// Precondition: finite.
  Rational value() const { return 1 / inv_; }
  std::string to_string() const;
  friend bool operator==(const LebesgueExponent&, const LebesgueExponent&) = default;

 private:
  explicit LebesgueExponent(Rational inv) : inv_(std::move(inv)) {}
  Rational inv_;
};

/// Exponent pair (p1, p2) of the restricted weak-type inequality; p2' is
/// the dual of p2.
class LebesguePair {
 public:
  LebesguePair(LebesgueExponent p1, LebesgueExponent p2) : p1_(p1), p2_(p2) {}
  /// Builds the pair from p1 and q = p2'.
  static LebesguePair from_p1_q(LebesgueExponent p1, LebesgueExponent q);

  const LebesgueExponent& p1() const { return p1_; }
  const LebesgueExponent& p2() const { return p2_; }
  LebesgueExponent p2_dual() const;

  /// 1/p1 + 1/p2 > 1, i.e. p1 < p2'.
  bool nontrivial() const;
  /// (1/p1, 1/p2').
  QPoint region_point() const;

 private:
  LebesgueExponent p1_, p2_;
};

/// Thrown by c_from_p on the trivial-regime boundary p1 = p2'.
class TrivialRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// c1 = p2/(p1 + p2 - p1 p2), c2 = p1/(p1 + p2 - p1 p2), evaluated through
/// reciprocals so infinite exponents are exact.
QPoint c_from_p(const LebesguePair& pair);

enum class Verdict { StrongType, Endpoint, FailsRestrictedWeakType, TriviallyBounded };
std::string to_string(Verdict v);
std::string describe(Verdict v);

struct Classification {
  Verdict verdict;
  std::optional<QPoint> c;       // absent in the trivial regime
  QPoint region_point;
  std::optional<Membership> membership;
};

/// Trivial regime first (no polytope use); otherwise exact membership of
/// c_from_p in the polytope, cross-checked against the region membership of
/// (1/p1, 1/p2'). Disagreement throws std::logic_error.
Classification classify_pair(const NewtonPolytope& polytope, const ExponentRegion& region, const LebesguePair& pair);

}  // namespace radonlp
