#include "radonlp/vfcalc/vector_field.hpp"

#include <stdexcept>

namespace radonlp {

VectorField::VectorField(std::vector<RationalFn> components) : comps_(std::move(components)) {
  for (const auto& c : comps_)
    if (c.nvars() != comps_[0].nvars()) throw std::invalid_argument("components use different variable contexts");
  if (!comps_.empty() && nvars() < dim()) throw std::invalid_argument("fewer variables than coordinates");
}

VectorField VectorField::zero(std::size_t dim, std::size_t nvars) {
  return VectorField(std::vector<RationalFn>(dim, RationalFn(nvars)));
}

VectorField VectorField::coordinate(std::size_t dim, std::size_t nvars, std::size_t k) {
  std::vector<RationalFn> c(dim, RationalFn(nvars));
  c.at(k) = RationalFn::constant(nvars, Rational(1));
  return VectorField(std::move(c));
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

RationalFn VectorField::apply(const RationalFn& f) const {
  if (f.nvars() != nvars()) throw std::invalid_argument("variable context mismatch");
  RationalFn out(nvars());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (comps_[k].is_zero()) continue;
    RationalFn d = f.derivative(k);
    if (!d.is_zero()) out += comps_[k] * d;
  }
  return out;
}

std::vector<RationalFn> VectorField::at(std::span<const Rational> point) const {
  if (point.size() != dim()) throw std::invalid_argument("evaluation point has wrong dimension");
  std::vector<std::optional<Rational>> values(nvars());
  for (std::size_t i = 0; i < dim(); ++i) values[i] = point[i];
  std::vector<RationalFn> out;
  out.reserve(dim());
  for (const auto& c : comps_) out.push_back(c.substitute(values));
  return out;
}

std::vector<double> VectorField::at(std::span<const double> point_with_params) const {
  std::vector<double> out;
  out.reserve(dim());
  for (const auto& c : comps_) out.push_back(c.evaluate(point_with_params));
  return out;
}

VectorField VectorField::substitute(std::span<const std::optional<Rational>> values) const {
  std::vector<RationalFn> out;
  out.reserve(dim());
  for (const auto& c : comps_) out.push_back(c.substitute(values));
  return VectorField(std::move(out));
}

VectorField VectorField::operator-() const {
  std::vector<RationalFn> out;
  for (const auto& c : comps_) out.push_back(-c);
  return VectorField(std::move(out));
}

VectorField VectorField::scaled(const RationalFn& f) const {
  std::vector<RationalFn> out;
  for (const auto& c : comps_) out.push_back(c * f);
  return VectorField(std::move(out));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<RationalFn> out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i] + b[i]);
  return VectorField(std::move(out));
}

std::string VectorField::to_string(const std::vector<std::string>& names) const {
  std::string s = "(";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i > 0) s += ", ";
    s += comps_[i].to_string(names);
  }
  return s + ")";
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("lie_bracket: dimension mismatch");
  if (x.nvars() != y.nvars()) throw std::invalid_argument("lie_bracket: variable context mismatch");
  const std::size_t n = x.dim();
  std::vector<RationalFn> out(n, RationalFn(x.nvars()));
  if (x.is_zero() || y.is_zero()) return VectorField(std::move(out));
  for (std::size_t i = 0; i < n; ++i) {
    RationalFn acc(x.nvars());
    for (std::size_t j = 0; j < n; ++j) {
      if (!x[j].is_zero() && !y[i].is_zero()) {
        RationalFn d = y[i].derivative(j);
        if (!d.is_zero()) acc += x[j] * d;
      }
      if (!y[j].is_zero() && !x[i].is_zero()) {
        RationalFn d = x[i].derivative(j);
        if (!d.is_zero()) acc -= y[j] * d;
      }
    }
    out[i] = std::move(acc);
  }
  return VectorField(std::move(out));
}

Word Word::parse(const std::string& text) {
  Word w;
  for (char c : text) {
    if (c == '1' || c == '2')
      w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ' ' && c != ',')
      throw std::invalid_argument("word letters must be 1 or 2: '" + text + "'");
  }
  if (w.letters.empty()) throw std::invalid_argument("empty word");
  return w;
}

Degree Word::degree() const {
  Degree d;
  for (auto l : letters) (l == 1 ? d.d1 : d.d2) += 1;
  return d;
}

std::string Word::to_string() const {
  std::string s;
  for (auto l : letters) s += static_cast<char>('0' + l);
  return s;
}

}  // namespace radonlp
