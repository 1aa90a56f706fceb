#pragma once

#include "radonlp/polytope/generators.hpp"

#include <string>
#include <vector>

namespace radonlp {

enum class Membership { Interior, Boundary, Exterior };
std::string to_string(Membership m);

struct QPoint {
  Rational x, y;
  friend bool operator==(const QPoint&, const QPoint&) = default;
};

/// conv(generators) + R_+^2, stored by its staircase of vertices.
class NewtonPolytope {
 public:
  NewtonPolytope() = default;
  /// Throws std::invalid_argument on an empty generator set.
  explicit NewtonPolytope(const std::vector<Degree>& generators);

  const std::vector<Degree>& generators() const { return generators_; }
  /// Strictly increasing d1, strictly decreasing d2, strictly convex.
  const std::vector<Degree>& vertices() const { return vertices_; }

  Membership classify(const QPoint& c) const;

 private:
  std::vector<Degree> generators_;
  std::vector<Degree> vertices_;
};

NewtonPolytope newton_polytope(const std::vector<Degree>& generators);

/// (d1/(d1+d2-1), (d1-1)/(d1+d2-1)); throws std::domain_error if d1 + d2 < 2.
QPoint map_degree_to_exponent(Degree d);

/// Convex polygon in the (1/p1, 1/p2') square, counterclockwise from (0,0).
class ExponentRegion {
 public:
  ExponentRegion() = default;
  explicit ExponentRegion(const std::vector<Degree>& generators);

  const std::vector<QPoint>& vertices() const { return vertices_; }
  Membership classify(const QPoint& p) const;

 private:
  std::vector<QPoint> vertices_;
};

ExponentRegion exponent_region(const std::vector<Degree>& generators);

/// Exact convex hull, counterclockwise starting from the lowest-leftmost
/// point, collinear points dropped.
std::vector<QPoint> convex_hull(std::vector<QPoint> pts);

}  // namespace radonlp
