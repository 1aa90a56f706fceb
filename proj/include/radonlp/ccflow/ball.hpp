#pragma once

#include "radonlp/ccflow/flow.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace radonlp {

struct BallSpec {
  std::vector<double> x0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  unsigned k_max = 6;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Points stored row-major.
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::size_t dropped = 0;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

/// Samples per seeded chunk.
inline constexpr std::size_t kChunk = 1024;

/// Throws std::invalid_argument unless delta_j in [0, 1), k_max >= 2 and x0
/// matches the field dimension.
void validate(const BallSpec& spec, std::size_t dim);

/// Random alternating products e^{t_1 d_1 X_1} ... e^{t_k d_k X_k}(x0), the
/// leftmost factor applied first and d_{j+2} = d_j. k is uniform in
/// {2..k_max}; (t_j) is uniform on the l1 ball, drawn as k+1 normalized
/// Exp(1) gaps with random signs. Chunk c draws from chunk_seed(seed, c).
/// Failed flows are dropped and counted; more than 1% drops throws FlowError.
PointCloud sample_ball(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2,
                       const FlowConfig& cfg = {});

/// Single-threaded reference; bit-identical to sample_ball.
PointCloud sample_ball_serial(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2,
                              const FlowConfig& cfg = {});

}  // namespace radonlp
