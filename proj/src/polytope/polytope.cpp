#include "radonlp/polytope/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace radonlp {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Exterior: return "exterior";
  }
  return "?";
}

namespace {

Rational cross(const QPoint& o, const QPoint& a, const QPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

QPoint as_point(Degree d) { return {Rational(d.d1), Rational(d.d2)}; }

Membership combine(const std::vector<int>& signs) {
  bool on_edge = false;
  for (int s : signs) {
    if (s < 0) return Membership::Exterior;
    if (s == 0) on_edge = true;
  }
  return on_edge ? Membership::Boundary : Membership::Interior;
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace

NewtonPolytope::NewtonPolytope(const std::vector<Degree>& generators) : generators_(generators) {
  if (generators.empty()) throw std::invalid_argument("Newton polytope of an empty generator set");
  auto stairs = pareto_minimal(generators);
  // Lower-left convex chain: keep only strict left turns going right.
  for (const auto& d : stairs) {
    while (vertices_.size() >= 2 &&
           sign(cross(as_point(vertices_[vertices_.size() - 2]), as_point(vertices_.back()), as_point(d))) <= 0)
      vertices_.pop_back();
    vertices_.push_back(d);
  }
}

Membership NewtonPolytope::classify(const QPoint& c) const {
  std::vector<int> signs;
  signs.push_back(sign(c.x - vertices_.front().d1));
  signs.push_back(sign(c.y - vertices_.back().d2));
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
    signs.push_back(sign(cross(as_point(vertices_[i]), as_point(vertices_[i + 1]), c)));
  return combine(signs);
}

NewtonPolytope newton_polytope(const std::vector<Degree>& generators) { return NewtonPolytope(generators); }

QPoint map_degree_to_exponent(Degree d) {
  if (d.d1 + d.d2 < 2) throw std::domain_error("degree " + d.to_string() + " has d1 + d2 < 2");
  Rational s(d.d1 + d.d2 - 1);
  return {Rational(d.d1) / s, Rational(d.d1 - 1) / s};
}

std::vector<QPoint> convex_hull(std::vector<QPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const QPoint& a, const QPoint& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<QPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sign(cross(hull[k - 2], hull[k - 1], p)) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && sign(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

ExponentRegion::ExponentRegion(const std::vector<Degree>& generators) {
  if (generators.empty()) throw std::invalid_argument("exponent region of an empty generator set");
  std::vector<QPoint> pts = {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  for (const auto& d : generators) {
    QPoint p = map_degree_to_exponent(d);
    if (!(p.y < p.x && p.x <= 1 && p.y >= 0))
      throw std::logic_error("mapped generator outside the half-plane below the diagonal");
    pts.push_back(p);
  }
  vertices_ = convex_hull(pts);
}

Membership ExponentRegion::classify(const QPoint& p) const {
  std::vector<int> signs;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    signs.push_back(sign(cross(vertices_[i], vertices_[(i + 1) % vertices_.size()], p)));
  return combine(signs);
}

ExponentRegion exponent_region(const std::vector<Degree>& generators) { return ExponentRegion(generators); }

}  // namespace radonlp
