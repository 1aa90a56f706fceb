#include "radonlp/ccflow/ball.hpp"

#include "radonlp/ccflow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace radonlp {

void validate(const BallSpec& spec, std::size_t dim) {
  if (!(spec.delta1 >= 0 && spec.delta1 < 1) || !(spec.delta2 >= 0 && spec.delta2 < 1))
    throw std::invalid_argument("ball radii must lie in [0, 1)");
  if (spec.k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  if (spec.x0.size() != dim) throw std::invalid_argument("base point dimension does not match the fields");
  for (double v : spec.x0)
    if (!std::isfinite(v)) throw std::invalid_argument("base point is not finite");
}

namespace {

struct ChunkResult {
  std::vector<double> coords;
  std::size_t dropped = 0;
};

ChunkResult sample_chunk(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2,
                         const FlowConfig& cfg, std::size_t chunk) {
  const std::size_t dim = x1.dim();
  const std::size_t begin = chunk * kChunk;
  const std::size_t end = std::min(spec.samples, begin + kChunk);
  Rng rng(chunk_seed(spec.seed, chunk));
  ChunkResult out;
  out.coords.reserve((end - begin) * dim);
  std::vector<double> t(spec.k_max + 1);
  State s;
  for (std::size_t i = begin; i < end; ++i) {
    auto k = static_cast<std::size_t>(rng.integer(2, spec.k_max));
    double total = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      t[j] = rng.exponential();
      total += t[j];
    }
    for (std::size_t j = 0; j < k; ++j) t[j] = (rng.coin() ? -t[j] : t[j]) / total;
    std::copy(spec.x0.begin(), spec.x0.end(), s.begin());
    try {
      for (std::size_t j = 0; j < k; ++j) {
        bool first = j % 2 == 0;
        flow_inplace(first ? x1 : x2, s.data(), t[j] * (first ? spec.delta1 : spec.delta2), cfg);
      }
    } catch (const FlowError&) {
      ++out.dropped;
      continue;
    }
    out.coords.insert(out.coords.end(), s.begin(), s.begin() + dim);
  }
  return out;
}

PointCloud assemble(const BallSpec& spec, std::size_t dim, std::vector<ChunkResult>& parts) {
  PointCloud cloud;
  cloud.dim = dim;
  for (auto& p : parts) {
    cloud.dropped += p.dropped;
    cloud.coords.insert(cloud.coords.end(), p.coords.begin(), p.coords.end());
  }
  if (cloud.dropped * 100 > spec.samples)
    throw FlowError(FlowError::Kind::Divergence, std::to_string(cloud.dropped) + " of " +
                                                     std::to_string(spec.samples) +
                                                     " samples failed to flow (more than 1%)");
  return cloud;
}

std::size_t chunk_count(const BallSpec& spec) { return (spec.samples + kChunk - 1) / kChunk; }

void check(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2, const FlowConfig& cfg) {
  if (x1.dim() != x2.dim()) throw std::invalid_argument("fields have different dimensions");
  validate(spec, x1.dim());
  validate(cfg);
}

}  // namespace

PointCloud sample_ball_serial(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2,
                              const FlowConfig& cfg) {
  check(spec, x1, x2, cfg);
  std::vector<ChunkResult> parts(chunk_count(spec));
  for (std::size_t c = 0; c < parts.size(); ++c) parts[c] = sample_chunk(spec, x1, x2, cfg, c);
  return assemble(spec, x1.dim(), parts);
}

PointCloud sample_ball(const BallSpec& spec, const CompiledField& x1, const CompiledField& x2,
                       const FlowConfig& cfg) {
  check(spec, x1, x2, cfg);
  const auto chunks = static_cast<std::int64_t>(chunk_count(spec));
  std::vector<ChunkResult> parts(static_cast<std::size_t>(chunks));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      parts[static_cast<std::size_t>(c)] = sample_chunk(spec, x1, x2, cfg, static_cast<std::size_t>(c));
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(spec, x1.dim(), parts);
}

}  // namespace radonlp
