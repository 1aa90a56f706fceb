#pragma once

#include "radonlp/vfcalc/operator_spec.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace radonlp {

/// Largest ambient dimension handled by the numerical kernels.
inline constexpr std::size_t kMaxDim = 8;

using State = std::array<double, kMaxDim>;

/// Raised by flows and compiled evaluation.
class FlowError : public std::runtime_error {
 public:
  enum class Kind { Divergence, Singular, StepLimit };
  FlowError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind(kind) {}
  Kind kind;
};

/// Double-precision copy of a polynomial in the first `ncoords` variables.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  /// Throws std::invalid_argument if p depends on a variable >= ncoords.
  CompiledPoly(const MultiPoly& p, std::size_t ncoords);

  double operator()(const double* x) const;
  bool is_constant() const;

 private:
  struct Term {
    double coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (variable, exponent)
  };
  std::vector<Term> terms_;
};

class CompiledFn {
 public:
  CompiledFn() = default;
  CompiledFn(const RationalFn& f, std::size_t ncoords);

  /// Throws FlowError(Singular) when |denominator| < 1e-12.
  double operator()(const double* x) const;

 private:
  CompiledPoly num_, den_;
  bool polynomial_ = true;
  double den_const_ = 1.0;
};

class CompiledField {
 public:
  CompiledField() = default;
  /// Throws std::invalid_argument beyond kMaxDim or on surviving parameters.
  explicit CompiledField(const VectorField& x);

  std::size_t dim() const { return comps_.size(); }
  void eval(const double* x, double* out) const;

 private:
  std::vector<CompiledFn> comps_;
};

/// Numerical view of a fully specialized operator.
struct NumericModel {
  std::size_t n = 0;
  CompiledField x1, x2;
  std::vector<CompiledFn> pi1, pi2;
  std::vector<double> base;
};

/// Throws SpecError when parameters are still symbolic.
NumericModel compile_model(const FieldData& fd);

}  // namespace radonlp
