#include "radonlp/polytope/lebesgue.hpp"

#include <stdexcept>

namespace radonlp {

LebesgueExponent LebesgueExponent::finite(const Rational& p) {
  if (p < 1) throw std::invalid_argument("Lebesgue exponent " + radonlp::to_string(p) + " is below 1");
  return LebesgueExponent(Rational(1 / p));
}

LebesgueExponent LebesgueExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  return finite(parse_rational(text));
}

std::string LebesgueExponent::to_string() const { return is_infinite() ? "inf" : radonlp::to_string(value()); }

LebesguePair LebesguePair::from_p1_q(LebesgueExponent p1, LebesgueExponent q) {
  Rational inv_p2 = 1 - q.reciprocal();
  return LebesguePair(p1, inv_p2 == 0 ? LebesgueExponent::infinity() : LebesgueExponent::finite(Rational(1 / inv_p2)));
}

LebesgueExponent LebesguePair::p2_dual() const {
  Rational inv = 1 - p2_.reciprocal();
  return inv == 0 ? LebesgueExponent::infinity() : LebesgueExponent::finite(Rational(1 / inv));
}

bool LebesguePair::nontrivial() const { return p1_.reciprocal() + p2_.reciprocal() > 1; }

QPoint LebesguePair::region_point() const { return {p1_.reciprocal(), Rational(1 - p2_.reciprocal())}; }

QPoint c_from_p(const LebesguePair& pair) {
  Rational u = pair.p1().reciprocal(), w = pair.p2().reciprocal();
  Rational s = u + w - 1;
  if (s == 0) throw TrivialRegime("p1 = p2': trivially bounded regime; no polytope test applies");
  return {u / s, w / s};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StrongType: return "strong-type";
    case Verdict::Endpoint: return "endpoint";
    case Verdict::FailsRestrictedWeakType: return "fails-restricted-weak-type";
    case Verdict::TriviallyBounded: return "trivially-bounded";
  }
  return "?";
}

std::string describe(Verdict v) {
  switch (v) {
    case Verdict::StrongType: return "strong type: (c1, c2) lies in the interior of the Newton polytope";
    case Verdict::Endpoint: return "endpoint: (c1, c2) lies on the polytope boundary, where strong type is neither proved nor ruled out";
    case Verdict::FailsRestrictedWeakType:
      return "not of restricted weak type: (c1, c2) lies outside the Newton polytope";
    case Verdict::TriviallyBounded: return "trivially bounded: p2' <= p1";
  }
  return "?";
}

Classification classify_pair(const NewtonPolytope& polytope, const ExponentRegion& region, const LebesguePair& pair) {
  Classification out{Verdict::TriviallyBounded, std::nullopt, pair.region_point(), std::nullopt};
  if (!pair.nontrivial()) return out;
  QPoint c = c_from_p(pair);
  Membership m = polytope.classify(c);
  Membership r = region.classify(out.region_point);
  if (m != r)
    throw std::logic_error("internal inconsistency: polytope says " + to_string(m) + ", exponent region says " +
                           to_string(r));
  out.c = c;
  out.membership = m;
  out.verdict = m == Membership::Interior   ? Verdict::StrongType
                : m == Membership::Boundary ? Verdict::Endpoint
                                            : Verdict::FailsRestrictedWeakType;
  return out;
}

}  // namespace radonlp
