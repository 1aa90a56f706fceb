#include "radonlp/ccflow/volume.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace radonlp {

namespace {

void check_shape(std::size_t dim, std::span<const double> pts, std::span<const double> origin,
                 std::span<const double> cell) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("unsupported cloud dimension");
  if (pts.empty()) throw std::invalid_argument("cannot estimate the volume of an empty cloud");
  if (pts.size() % dim != 0 || origin.size() != dim || cell.size() != dim)
    throw std::invalid_argument("cloud and grid shapes do not match");
  for (double c : cell)
    if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("cell sizes must be positive");
}

CellKey key_of(const double* p, std::size_t dim, std::span<const double> origin, std::span<const double> cell) {
  CellKey k{};
  for (std::size_t i = 0; i < dim; ++i) {
    double v = std::floor((p[i] - origin[i]) / cell[i]);
    if (!(std::abs(v) < 2147483647.0)) throw std::domain_error("cloud spans too many cells for the index range");
    k[i] = static_cast<std::int32_t>(v);
  }
  return k;
}

void sort_unique(std::vector<CellKey>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

VolumeEstimate summarize(std::size_t dim, std::size_t points, std::size_t occupied, std::vector<double> cell,
                         std::span<const double> extent) {
  VolumeEstimate e;
  e.points = points;
  e.occupied = occupied;
  e.volume = static_cast<double>(occupied);
  for (double c : cell) e.volume *= c;
  e.points_per_cell = static_cast<double>(points) / static_cast<double>(occupied);
  e.extent_in_cells = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim; ++i) e.extent_in_cells = std::min(e.extent_in_cells, extent[i] / cell[i]);
  e.cell = std::move(cell);
  return e;
}

std::vector<double> extents(std::size_t dim, std::span<const double> pts, std::vector<double>* lower = nullptr) {
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity()), hi(dim, -lo[0]);
  for (std::size_t p = 0; p < pts.size(); p += dim)
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], pts[p + i]);
      hi[i] = std::max(hi[i], pts[p + i]);
    }
  std::vector<double> ext(dim);
  for (std::size_t i = 0; i < dim; ++i) ext[i] = hi[i] - lo[i];
  if (lower) *lower = lo;
  return ext;
}

}  // namespace

std::vector<CellKey> occupied_cells_serial(std::size_t dim, std::span<const double> pts,
                                           std::span<const double> origin, std::span<const double> cell) {
  check_shape(dim, pts, origin, cell);
  std::vector<CellKey> keys(pts.size() / dim);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = key_of(pts.data() + i * dim, dim, origin, cell);
  sort_unique(keys);
  return keys;
}

std::vector<CellKey> occupied_cells(std::size_t dim, std::span<const double> pts, std::span<const double> origin,
                                    std::span<const double> cell) {
  check_shape(dim, pts, origin, cell);
  const auto n = static_cast<std::int64_t>(pts.size() / dim);
  std::vector<CellKey> keys(static_cast<std::size_t>(n));
  bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      keys[static_cast<std::size_t>(i)] = key_of(pts.data() + i * dim, dim, origin, cell);
    } catch (const std::domain_error&) {
      overflow = true;
    }
  }
  if (overflow) throw std::domain_error("cloud spans too many cells for the index range");
  sort_unique(keys);
  return keys;
}

VolumeEstimate estimate_volume(std::size_t dim, std::span<const double> pts, std::span<const double> cell) {
  std::vector<double> origin(dim, 0.0);
  check_shape(dim, pts, origin, cell);
  auto keys = occupied_cells(dim, pts, origin, cell);
  auto ext = extents(dim, pts);
  return summarize(dim, pts.size() / dim, keys.size(), {cell.begin(), cell.end()}, ext);
}

VolumeEstimate estimate_volume(const PointCloud& cloud, double cell) {
  std::vector<double> cells(cloud.dim, cell);
  return estimate_volume(cloud.dim, cloud.coords, cells);
}

VolumeEstimate estimate_volume_adaptive(std::size_t dim, std::span<const double> pts, std::size_t resolution,
                                        Frame frame) {
  std::vector<double> origin(dim, 0.0), unit(dim, 1.0);
  check_shape(dim, pts, origin, unit);
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  std::vector<double> rotated;
  std::span<const double> work = pts;
  if (frame == Frame::Principal) {
    const std::size_t n = pts.size() / dim;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(pts.data(),
                                                                                                 n, dim);
    Eigen::RowVectorXd mean = m.colwise().mean();
    Eigen::MatrixXd centered = m.rowwise() - mean;
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r = centered * es.eigenvectors();
    rotated.assign(r.data(), r.data() + r.size());
    work = rotated;
  }
  auto ext = extents(dim, work, &origin);
  std::vector<double> cell(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(ext[i] > 0)) throw std::domain_error("cloud is flat along axis " + std::to_string(i));
    // Slightly more than extent/resolution keeps the upper corner inside the last cell.
    cell[i] = ext[i] / static_cast<double>(resolution) * (1 + 1e-12);
  }
  auto keys = occupied_cells(dim, work, origin, cell);
  return summarize(dim, work.size() / dim, keys.size(), cell, ext);
}

VolumeEstimate resolved_volume(std::size_t dim, std::span<const double> pts, std::size_t resolution,
                               std::size_t min_occupied, std::size_t max_resolution, Frame frame) {
  std::size_t res = resolution ? resolution : default_resolution(pts.size() / dim, dim);
  VolumeEstimate e = estimate_volume_adaptive(dim, pts, res, frame);
  while (e.occupied < min_occupied && res * 2 <= max_resolution) {
    res *= 2;
    e = estimate_volume_adaptive(dim, pts, res, frame);
  }
  if (e.occupied < min_occupied)
    throw std::runtime_error("occupancy resolution failure: " + std::to_string(e.occupied) +
                             " cells at the resolution cap");
  return e;
}

std::size_t default_resolution(std::size_t points, std::size_t dim) {
  double r = std::floor(std::pow(static_cast<double>(points) / 8.0, 1.0 / static_cast<double>(dim)));
  return static_cast<std::size_t>(std::clamp(r, 4.0, 1024.0));
}

}  // namespace radonlp
