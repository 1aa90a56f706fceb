#include "radonlp/ccflow/compiled.hpp"

#include <cmath>

namespace radonlp {

CompiledPoly::CompiledPoly(const MultiPoly& p, std::size_t ncoords) {
  for (const auto& [e, c] : p.terms()) {
    Term t{to_double(c), {}};
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v >= ncoords) throw std::invalid_argument("expression depends on a symbolic parameter");
      t.factors.emplace_back(static_cast<std::uint32_t>(v), e[v]);
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledPoly::operator()(const double* x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef;
    for (auto [var, k] : t.factors) {
      double b = x[var];
      for (std::uint32_t i = 0; i < k; ++i) v *= b;
    }
    s += v;
  }
  return s;
}

bool CompiledPoly::is_constant() const {
  for (const auto& t : terms_)
    if (!t.factors.empty()) return false;
  return true;
}

CompiledFn::CompiledFn(const RationalFn& f, std::size_t ncoords)
    : num_(f.num(), ncoords), den_(f.den(), ncoords), polynomial_(f.is_polynomial()) {
  if (polynomial_) den_const_ = to_double(f.den().constant_term());
}

double CompiledFn::operator()(const double* x) const {
  if (polynomial_) return num_(x) / den_const_;
  double d = den_(x);
  if (!(std::abs(d) >= 1e-12)) throw FlowError(FlowError::Kind::Singular, "denominator near zero along the path");
  return num_(x) / d;
}

CompiledField::CompiledField(const VectorField& x) {
  if (x.dim() > kMaxDim)
    throw std::invalid_argument("dimension " + std::to_string(x.dim()) + " exceeds the numerical limit " +
                                std::to_string(kMaxDim));
  for (const auto& c : x.components()) comps_.emplace_back(c, x.dim());
}

void CompiledField::eval(const double* x, double* out) const {
  for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i](x);
}

NumericModel compile_model(const FieldData& fd) {
  auto free = fd.free_params();
  if (!free.empty()) {
    std::string list;
    for (const auto& p : free) list += (list.empty() ? "" : ", ") + p;
    throw SpecError("numerical work needs values for the parameters: " + list);
  }
  NumericModel m;
  m.n = fd.n;
  m.x1 = CompiledField(fd.x1);
  m.x2 = CompiledField(fd.x2);
  for (const auto& f : fd.pi1) m.pi1.emplace_back(f, fd.n);
  for (const auto& f : fd.pi2) m.pi2.emplace_back(f, fd.n);
  for (const auto& b : fd.base) m.base.push_back(to_double(b));
  return m;
}

}  // namespace radonlp
