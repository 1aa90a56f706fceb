#pragma once

#include "radonlp/ccflow/phi.hpp"
#include "radonlp/ccflow/volume.hpp"
#include "radonlp/polytope/lebesgue.hpp"

namespace radonlp {

/// a1 x1 + a2 x2 >= 1 on the polytope.
struct HalfPlane {
  Rational a1, a2;
  Rational at_c;  // a . c; below 1 exactly when the plane separates c
};

/// Exact two-variable LP: minimize a . c subject to a . v >= 1 at every
/// vertex and a_min <= a_j <= 1 - a_min. An optimal edge is resolved to its
/// midpoint. For interior c the minimizer is the least-interior direction.
HalfPlane separating_half_plane(const NewtonPolytope& polytope, const QPoint& c, const Rational& a_min);

/// `count` points uniform in the Euclidean ball of radius r in R^n, row-major;
/// chunk c draws from chunk_seed(seed, c).
std::vector<double> euclidean_ball_points(std::size_t n, double r, std::size_t count, std::uint64_t seed);
std::vector<double> euclidean_ball_points_serial(std::size_t n, double r, std::size_t count, std::uint64_t seed);

struct ProbeConfig {
  double K = 8;
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
  std::size_t resolution = 0;  // 0: default_resolution per dimension
  std::size_t min_occupied = 1000;
  std::size_t max_resolution = 4096;
  Frame frame = Frame::Axis;
  bool allow_interior = false;  // control runs on non-exterior pairs
  Rational a_min = Rational(1, 16);
  PhiConfig phi;
};

struct ProbeRow {
  double delta0 = 0, delta1 = 0, delta2 = 0;
  VolumeEstimate omega, pi1, pi2;
  double ratio = 0;  // |Omega| / (|pi1 Omega|^{1/p1} |pi2 Omega|^{1/p2})
  std::size_t dropped = 0;
};

struct ProbeResult {
  QPoint c;
  Membership membership = Membership::Exterior;
  HalfPlane plane;
  std::vector<Word> witness;
  Degree degree;
  std::vector<ProbeRow> rows;
  bool strictly_increasing = false;
  double spread = 0;  // max ratio / min ratio
};

/// Thrown when the pair is not exterior and control runs are not enabled.
class NotExterior : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// For each delta0 sets (delta1, delta2) = (delta0^{a1}, delta0^{a2}), builds
/// Omega = Phi(B_{1/K}) from the same seeded t-samples, applies pi1 and pi2
/// pointwise, and grids all three clouds. Throws TrivialRegime when
/// p2' <= p1 and std::runtime_error when the grids stay unresolved.
ProbeResult sharpness_probe(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                            const LebesguePair& pair, std::span<const double> delta0, const ProbeConfig& cfg = {});
/// Single-threaded reference; bit-identical to sharpness_probe.
ProbeResult sharpness_probe_serial(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                                   const LebesguePair& pair, std::span<const double> delta0,
                                   const ProbeConfig& cfg = {});

}  // namespace radonlp
