#pragma once

#include "radonlp/polyalg/rational_fn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace radonlp {

/// A vector field on R^n whose components are rational functions. The variable
/// context holds the n coordinates first, followed by any symbolic parameters.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<RationalFn> components);
  static VectorField zero(std::size_t dim, std::size_t nvars);
  /// Coordinate field d/dx_k.
  static VectorField coordinate(std::size_t dim, std::size_t nvars, std::size_t k);

  std::size_t dim() const { return comps_.size(); }
  std::size_t nvars() const { return comps_.empty() ? 0 : comps_[0].nvars(); }
  const RationalFn& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<RationalFn>& components() const { return comps_; }
  bool is_zero() const;

  /// Applies the field to a scalar function: sum_k X_k d_k f.
  RationalFn apply(const RationalFn& f) const;

  /// Components with the coordinates fixed to `point`; parameters stay symbolic.
  std::vector<RationalFn> at(std::span<const Rational> point) const;
  std::vector<double> at(std::span<const double> point_with_params) const;

  VectorField substitute(std::span<const std::optional<Rational>> values) const;
  VectorField operator-() const;
  VectorField scaled(const RationalFn& f) const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<RationalFn> comps_;
};

/// [X, Y]_i = sum_j X_j d_j Y_i - Y_j d_j X_i, differentiating in the
/// coordinate variables only. Throws std::invalid_argument on mismatch.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

struct Degree {
  unsigned d1 = 0;
  unsigned d2 = 0;

  unsigned total() const { return d1 + d2; }
  friend Degree operator+(Degree a, Degree b) { return {a.d1 + b.d1, a.d2 + b.d2}; }
  friend bool operator==(Degree a, Degree b) { return a.d1 == b.d1 && a.d2 == b.d2; }
  friend bool operator<(Degree a, Degree b) { return a.d1 != b.d1 ? a.d1 < b.d1 : a.d2 < b.d2; }
  /// Componentwise order.
  bool leq(Degree o) const { return d1 <= o.d1 && d2 <= o.d2; }
  std::string to_string() const { return "(" + std::to_string(d1) + "," + std::to_string(d2) + ")"; }
};

/// Nonempty string over {1, 2}; X_{wj} = [X_w, X_j].
struct Word {
  std::vector<std::uint8_t> letters;

  static Word parse(const std::string& text);
  Degree degree() const;
  std::size_t length() const { return letters.size(); }
  std::string to_string() const;
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
  /// Enumeration order: shorter first, then lexicographic.
  friend bool operator<(const Word& a, const Word& b) {
    return a.length() != b.length() ? a.length() < b.length() : a.letters < b.letters;
  }
};

}  // namespace radonlp
