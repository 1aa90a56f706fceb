#pragma once

#include "radonlp/ccflow/volume.hpp"
#include "radonlp/vfcalc/vector_field.hpp"

namespace radonlp {

struct ScalingConfig {
  double relation = 1.0;  // delta2 = delta1^relation
  std::size_t samples = 200000;
  unsigned k_max = 6;
  std::uint64_t seed = 1;
  std::size_t resolution = 0;  // 0: default_resolution
  std::size_t min_occupied = 256;
  std::size_t max_resolution = 4096;
  Frame frame = Frame::Axis;
  FlowConfig flow;
};

struct ScalingRow {
  double delta1 = 0, delta2 = 0;
  VolumeEstimate estimate;
  std::size_t dropped = 0;
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double slope = 0, intercept = 0;  // log volume ~ slope log delta1 + intercept
  Degree dominant;                  // generator minimizing d1 + relation d2
  double predicted = 0;
};

/// Samples B(x0; delta1, delta2) at each radius with the same seed (common
/// random numbers) and fits the log-log slope. Needs >= 3 geometrically
/// spaced radii; throws std::domain_error on an empty or unresolved cloud.
ScalingStudy ball_scaling_study(const NumericModel& model, const std::vector<Degree>& generators,
                                std::span<const double> deltas, const ScalingConfig& cfg = {});

/// Least-squares slope and intercept of y against x.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace radonlp
