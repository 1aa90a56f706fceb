#pragma once

#include "radonlp/polyalg/rational_fn.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace radonlp {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool is_zero_value(const Rational& q) { return q == 0; }
inline bool is_zero_value(const RationalFn& f) { return f.is_zero(); }

namespace detail {
template <class T>
void check_square(const Matrix<T>& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
}
}  // namespace detail

/// Bareiss fraction-free elimination with row pivoting on the first nonzero
/// entry. Every division is exact, so intermediate entries stay minors of the
/// input.
template <class T>
T det_bareiss(Matrix<T> m, const T& one) {
  detail::check_square(m);
  const std::size_t n = m.size();
  if (n == 0) return one;
  T prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero_value(m[k][k])) {
      std::size_t p = k + 1;
      while (p < n && is_zero_value(m[p][k])) ++p;
      if (p == n) return one - one;
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  T d = m[n - 1][n - 1];
  return negate ? T(-d) : d;
}

/// Laplace expansion along the first row; meant for small matrices.
template <class T>
T det_cofactor(const Matrix<T>& m, const T& one) {
  detail::check_square(m);
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  T sum = one - one;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero_value(m[0][c])) continue;
    Matrix<T> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    T term = m[0][c] * det_cofactor(minor, one);
    if (c % 2 == 0)
      sum = sum + term;
    else
      sum = sum - term;
  }
  return sum;
}

inline Rational det(const Matrix<Rational>& m) { return det_bareiss(m, Rational(1)); }

/// Determinant of a rational-function matrix; all entries share nvars.
inline RationalFn det(const Matrix<RationalFn>& m) {
  std::size_t nv = m.empty() || m[0].empty() ? 0 : m[0][0].nvars();
  return det_bareiss(m, RationalFn::constant(nv, Rational(1)));
}

}  // namespace radonlp
