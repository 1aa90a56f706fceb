#pragma once

#include "radonlp/setcomb/interval_union.hpp"

#include <cstdint>
#include <optional>

namespace radonlp {

/// [index 2^scale, (index + 1) 2^scale).
struct DyadicInterval {
  int scale = 0;
  std::int64_t index = 0;
  double length() const;
  double lo() const;
  double hi() const;
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Dyadic interval of length 2^scale holding the most of S; ties go to the
/// leftmost one. Returns the interval and |I cap S|.
std::pair<DyadicInterval, double> best_dyadic(const IntervalUnion& s, int scale);

/// Smallest power of two >= max |x| over S: the ambient half-width.
double ambient_unit(const IntervalUnion& s);

struct ScaleProfile {
  DyadicInterval best;
  double mass = 0;       // |best cap S|
  double threshold = 0;  // 1/4 (|I|/unit)^eps |S|
  bool satisfied = false;
};

struct WidthResult {
  double width = 0;
  DyadicInterval interval;  // certificate
  double unit = 1;
  std::vector<ScaleProfile> profile;  // every scale examined, finest first
};

/// Minimal dyadic length 2^j whose best interval I satisfies
/// |I cap S| >= 1/4 (|I|/unit)^eps |S|. Lengths are measured against
/// `unit` (default ambient_unit(S)), so dilating S and unit together by a
/// power of two dilates the width exactly. Throws std::invalid_argument on
/// an empty set or eps outside (0, 1), std::domain_error when no scale
/// qualifies. Scales below `min_scale` (a grid's cell size) are skipped.
WidthResult width_of(const IntervalUnion& s, double epsilon, std::optional<double> unit = std::nullopt,
                     std::optional<int> min_scale = std::nullopt);

struct CentralCheck {
  bool pass = false;
  bool support_ok = false;     // max |x| <= constant * w
  double max_abs_over_w = 0;
  double worst_ratio = 0;      // max over dyadic J of |J cap S| / ((|J|/w)^eps |S|)
  DyadicInterval worst;
};

/// Exhaustive over dyadic scales (per scale the best interval decides).
/// An arbitrary interval is covered by two dyadic ones of at most twice its
/// length, so passing here gives the bound for all intervals with constant
/// 2^{1+eps} times larger.
CentralCheck is_central(const IntervalUnion& s, double w, double epsilon, double constant);

/// Constant K with w <= K w' whenever a central set of width w (constant c)
/// sits inside one of width w': (2c)^{1 + 1/eps}.
double width_monotonicity_constant(double constant, double epsilon);

}  // namespace radonlp
