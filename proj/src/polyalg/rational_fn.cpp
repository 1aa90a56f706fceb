#include "radonlp/polyalg/rational_fn.hpp"

#include <stdexcept>

namespace radonlp {

RationalFn::RationalFn(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), Rational(1))) {}

RationalFn::RationalFn(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.nvars() != den_.nvars()) throw std::invalid_argument("variable count mismatch");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.nvars(), Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.nvars() != nvars()) throw std::invalid_argument("variable count mismatch");
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!is_polynomial()) normalize();
    return *this;
  }
  if (is_polynomial() || o.is_polynomial()) {
    // (a + b d)/d with gcd(b, d) = 1 is already reduced up to gcd(a, d) = 1.
    if (is_polynomial()) {
      num_ = num_ * o.den_ + o.num_;
      den_ = o.den_;
    } else {
      num_ += o.num_ * den_;
    }
    return *this;
  }
  MultiPoly g = gcd(den_, o.den_);
  MultiPoly da = *divide_exact(den_, g), db = *divide_exact(o.den_, g);
  num_ = num_ * db + o.num_ * da;
  den_ = den_ * db;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (o.nvars() != nvars()) throw std::invalid_argument("variable count mismatch");
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cancel across the two fractions first; both inputs are already reduced.
  MultiPoly g1 = o.is_polynomial() ? MultiPoly::constant(nvars(), Rational(1)) : gcd(num_, o.den_);
  MultiPoly g2 = is_polynomial() ? MultiPoly::constant(nvars(), Rational(1)) : gcd(o.num_, den_);
  MultiPoly a = g1.is_constant() ? num_ : *divide_exact(num_, g1);
  MultiPoly bd = g1.is_constant() ? o.den_ : *divide_exact(o.den_, g1);
  MultiPoly b = g2.is_constant() ? o.num_ : *divide_exact(o.num_, g2);
  MultiPoly ad = g2.is_constant() ? den_ : *divide_exact(den_, g2);
  num_ = a * b;
  den_ = ad * bd;
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(nvars(), Rational(1));
    return *this;
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  if (o.nvars() != nvars()) throw std::invalid_argument("variable count mismatch");
  if (o.is_constant()) {
    num_ *= Rational(1 / o.constant_value());
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    if (auto q = divide_exact(num_, o.num_)) {
      num_ = std::move(*q);
      return *this;
    }
  }
  RationalFn inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  Rational lc = inv.den_.leading_coefficient();
  inv.num_ *= Rational(1 / lc);
  inv.den_ *= Rational(1 / lc);
  return *this *= inv;
}

RationalFn RationalFn::operator-() const {
  RationalFn out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFn RationalFn::derivative(std::size_t var) const {
  if (is_polynomial()) return RationalFn(num_.derivative(var));
  // (n/d)' = (n' d - n d') / d^2
  return RationalFn(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rational RationalFn::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw std::domain_error("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

double RationalFn::evaluate(std::span<const double> point) const {
  double d = den_.evaluate(point);
  if (d == 0.0) throw std::domain_error("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

RationalFn RationalFn::substitute(std::span<const std::optional<Rational>> values) const {
  MultiPoly d = den_.substitute(values);
  if (d.is_zero()) throw std::domain_error("denominator vanishes under substitution");
  return RationalFn(num_.substitute(values), d);
}

RationalFn RationalFn::remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const {
  return RationalFn(num_.remap(new_nvars, index_map), den_.remap(new_nvars, index_map));
}

std::string RationalFn::to_string(const std::vector<std::string>& names) const {
  if (is_polynomial()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

RationalFn partial_derivative(const RationalFn& f, std::size_t var) {
  if (var >= f.nvars()) throw std::out_of_range("derivative variable index out of range");
  return f.derivative(var);
}

}  // namespace radonlp
