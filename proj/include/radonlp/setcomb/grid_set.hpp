#pragma once

#include "radonlp/ccflow/compiled.hpp"
#include "radonlp/ccflow/volume.hpp"
#include "radonlp/polytope/lebesgue.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace radonlp {

/// Finite union of cells [origin + k h, origin + (k + 1) h) of a
/// rectangular lattice in R^n. Cell keys are kept sorted and distinct;
/// unused key entries beyond n are zero.
class GridSet {
 public:
  GridSet() = default;
  /// Throws std::invalid_argument on a dimension outside [1, kMaxDim],
  /// mismatched sizes or a non-positive cell size.
  GridSet(std::size_t n, std::vector<double> origin, std::vector<double> h, std::vector<CellKey> cells);

  /// Every cell of the box with `counts[i]` cells along axis i.
  static GridSet box(std::vector<double> origin, std::vector<double> h, std::span<const std::int32_t> counts);
  /// Cells hit by the row-major points.
  static GridSet from_points(std::size_t n, std::span<const double> pts, std::vector<double> origin,
                             std::vector<double> h);

  std::size_t n() const { return n_; }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<double>& h() const { return h_; }
  const std::vector<CellKey>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  double cell_volume() const;
  /// |cells| times the cell volume.
  double measure() const { return static_cast<double>(cells_.size()) * cell_volume(); }

  bool contains(const CellKey& k) const;
  /// Same lattice and every cell of `other` present.
  bool includes(const GridSet& other) const;
  bool same_lattice(const GridSet& other) const;

  void lower_corner(const CellKey& k, double* out) const;
  void center(const CellKey& k, double* out) const;
  /// Bounding box of the member cells (lower corners, upper corners).
  std::pair<std::vector<double>, std::vector<double>> bounds() const;

  /// Same lattice, the given cells.
  GridSet with_cells(std::vector<CellKey> cells) const;

  friend bool operator==(const GridSet&, const GridSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> origin_, h_;
  std::vector<CellKey> cells_;
};

/// Run-length text form: a "gridset 1" header, dim, origin, h and the cell
/// count, then one line per row "i_0 ... i_{n-2} : a-b c-d ..." listing
/// inclusive runs along the last axis. Doubles are printed with 17
/// significant digits, so the round trip is exact.
void write_grid_set(std::ostream& out, const GridSet& g);
/// Throws std::invalid_argument with a line number on malformed input.
GridSet read_grid_set(std::istream& in);

/// Cellwise map from a GridSet to a lattice in R^{out_dim}.
struct Projection {
  std::size_t out_dim = 0;
  std::vector<double> origin, h;                    // output lattice
  std::function<void(const double*, double*)> map;  // point -> image
  unsigned supersample = 1;                         // s^n probe points per cell
  std::optional<std::size_t> drop_axis;             // exact coordinate projection
};

/// Coordinate projection forgetting `axis`; the image lattice is the
/// remaining axes of g's lattice, so the image is exact.
Projection drop_axis_projection(const GridSet& g, std::size_t axis);

/// Image of cell probe points under (f_0, ..., f_{m-1}) keyed into the
/// lattice (origin, h). Probe points sit at the centers of an s^n sub-grid.
Projection map_projection(std::vector<CompiledFn> f, std::vector<double> origin, std::vector<double> h,
                          unsigned supersample = 1);

/// Image keys of one cell, sorted and distinct.
std::vector<CellKey> project_cell(const GridSet& g, const Projection& p, const CellKey& k);

/// Throws FlowError when a map evaluation fails.
GridSet project(const GridSet& g, const Projection& p);

struct RwtRatio {
  double omega = 0, pi1 = 0, pi2 = 0;
  double alpha1 = 0, alpha2 = 0;  // |Omega| / |pi_j Omega|
  double ratio = 0;               // |Omega| / (|pi1 Omega|^{1/p1} |pi2 Omega|^{1/p2})
};

/// Exact cell-count measures. Throws std::invalid_argument on an empty set.
RwtRatio rwt_ratio(const GridSet& g, const Projection& pi1, const Projection& pi2, const LebesguePair& pair);

/// Same quantity from precomputed measures.
double rwt_value(double omega, double pi1, double pi2, const LebesguePair& pair);

}  // namespace radonlp
