#pragma once

#include "radonlp/polyalg/det.hpp"

#include <vector>

namespace radonlp {

/// Incrementally grown row-echelon basis over a field of scalars (Rational or
/// RationalFn). Copyable, so a depth-first search can branch on it.
template <class T>
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  /// Reduces v against the basis; returns the residual (zero iff v is in the span).
  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t p = pivots_[r];
      if (is_zero_value(v[p])) continue;
      T f = v[p] / rows_[r][p];
      for (std::size_t j = p; j < dim_; ++j)
        if (!is_zero_value(rows_[r][j])) v[j] = v[j] - f * rows_[r][j];
    }
    return v;
  }

  bool independent(const std::vector<T>& v) const {
    auto res = reduce(v);
    for (const auto& x : res)
      if (!is_zero_value(x)) return true;
    return false;
  }

  /// Adds v if it is independent of the current rows.
  bool try_add(const std::vector<T>& v) {
    auto res = reduce(v);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!is_zero_value(res[j])) {
        rows_.push_back(std::move(res));
        pivots_.push_back(j);
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace radonlp
