#pragma once

#include "radonlp/ccflow/ball.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace radonlp {

using CellKey = std::array<std::int32_t, kMaxDim>;

struct VolumeEstimate {
  double volume = 0.0;         // occupied * prod(cell)
  std::size_t occupied = 0;
  std::size_t points = 0;
  std::vector<double> cell;    // per axis, in the estimator's frame
  double points_per_cell = 0.0;  // sample sufficiency
  double extent_in_cells = 0.0;  // smallest cloud extent measured in cells
};

/// Sorted distinct cells floor((p - origin) / cell) of row-major points.
std::vector<CellKey> occupied_cells(std::size_t dim, std::span<const double> pts, std::span<const double> origin,
                                    std::span<const double> cell);
std::vector<CellKey> occupied_cells_serial(std::size_t dim, std::span<const double> pts,
                                           std::span<const double> origin, std::span<const double> cell);

/// Cubic cells on the lattice anchored at the origin, so adding points never
/// lowers the estimate. Throws std::invalid_argument on an empty cloud.
VolumeEstimate estimate_volume(const PointCloud& cloud, double cell);

/// Per-axis cells on the lattice anchored at the origin.
VolumeEstimate estimate_volume(std::size_t dim, std::span<const double> pts, std::span<const double> cell);

enum class Frame { Axis, Principal };

/// Cells of extent/resolution along each axis of the frame, anchored at the
/// cloud's lower corner. The principal frame rotates onto the covariance
/// eigenvectors first. Throws std::domain_error on a flat cloud.
VolumeEstimate estimate_volume_adaptive(std::size_t dim, std::span<const double> pts, std::size_t resolution,
                                        Frame frame = Frame::Axis);

/// Occupancy estimate with automatic refinement until at least
/// min_occupied cells are hit or max_resolution is reached.
VolumeEstimate resolved_volume(std::size_t dim, std::span<const double> pts, std::size_t resolution,
                               std::size_t min_occupied, std::size_t max_resolution, Frame frame);

/// floor((N/8)^{1/dim}) clamped to [4, 1024]: about eight points per cell
/// for a cloud that fills its box.
std::size_t default_resolution(std::size_t points, std::size_t dim);

}  // namespace radonlp
