#include "radonlp/setcomb/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace radonlp {

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& i) { return !(i.hi > i.lo); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi)
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    else
      pieces_.push_back(p);
  }
}

double IntervalUnion::measure() const {
  double s = 0;
  for (const auto& p : pieces_) s += p.length();
  return s;
}

double IntervalUnion::max_abs() const {
  if (empty()) return 0;
  return std::max(std::abs(min()), std::abs(max()));
}

double IntervalUnion::measure_in(double lo, double hi) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), lo,
                             [](const Interval& p, double v) { return p.hi <= v; });
  double s = 0;
  for (; it != pieces_.end() && it->lo < hi; ++it) s += std::max(0.0, std::min(hi, it->hi) - std::max(lo, it->lo));
  return s;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x, [](double v, const Interval& p) { return v < p.hi; });
  return it != pieces_.end() && it->lo <= x;
}

bool IntervalUnion::includes(const IntervalUnion& other) const { return other.subtract(*this).empty(); }

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < o.pieces_.size()) {
    double lo = std::max(pieces_[i].lo, o.pieces_[j].lo), hi = std::min(pieces_[i].hi, o.pieces_[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (pieces_[i].hi < o.pieces_[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
  auto all = pieces_;
  all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& o) const {
  std::vector<Interval> out;
  std::size_t j = 0;
  for (auto p : pieces_) {
    while (j < o.pieces_.size() && o.pieces_[j].hi <= p.lo) ++j;
    std::size_t k = j;
    double cur = p.lo;
    while (k < o.pieces_.size() && o.pieces_[k].lo < p.hi) {
      if (o.pieces_[k].lo > cur) out.push_back({cur, o.pieces_[k].lo});
      cur = std::max(cur, o.pieces_[k].hi);
      ++k;
    }
    if (cur < p.hi) out.push_back({cur, p.hi});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::shifted(double d) const {
  auto p = pieces_;
  for (auto& i : p) {
    i.lo += d;
    i.hi += d;
  }
  return IntervalUnion(std::move(p));
}

IntervalUnion IntervalUnion::scaled(double lambda) const {
  if (!(lambda > 0)) throw std::invalid_argument("scale factor must be positive");
  auto p = pieces_;
  for (auto& i : p) {
    i.lo *= lambda;
    i.hi *= lambda;
  }
  return IntervalUnion(std::move(p));
}

std::string IntervalUnion::to_string() const {
  if (empty()) return "{}";
  std::string s;
  char buf[80];
  for (const auto& p : pieces_) {
    std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g)", s.empty() ? "" : " u ", p.lo, p.hi);
    s += buf;
  }
  return s;
}

}  // namespace radonlp
