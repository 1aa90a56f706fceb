#pragma once

#include <string>
#include <vector>

namespace radonlp {

/// Half-open interval [lo, hi).
struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals, kept sorted, disjoint and with
/// touching pieces merged, so equal sets compare equal.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Empty and reversed pieces are dropped.
  explicit IntervalUnion(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double measure() const;
  double min() const { return pieces_.front().lo; }
  double max() const { return pieces_.back().hi; }
  /// max |x| over the closure.
  double max_abs() const;

  double measure_in(double lo, double hi) const;
  bool contains(double x) const;
  bool includes(const IntervalUnion& other) const;

  IntervalUnion intersect(const IntervalUnion& o) const;
  IntervalUnion intersect(Interval i) const { return intersect(IntervalUnion({i})); }
  IntervalUnion unite(const IntervalUnion& o) const;
  IntervalUnion subtract(const IntervalUnion& o) const;
  IntervalUnion shifted(double d) const;
  IntervalUnion scaled(double lambda) const;  // lambda > 0

  std::string to_string() const;
  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> pieces_;
};

}  // namespace radonlp
