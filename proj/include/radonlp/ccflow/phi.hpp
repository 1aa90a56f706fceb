#pragma once

#include "radonlp/ccflow/flow.hpp"
#include "radonlp/polytope/generators.hpp"

#include <cstdint>
#include <span>

namespace radonlp {

struct PhiConfig {
  double h = 1e-2;             // RK4 step for the unit-time flow
  std::size_t min_steps = 8;
  double guard = 1e3;
};

/// t -> exp(sum_j t_j s_j X_{w_j}) x0 with s_j = K^{-1} (K delta)^{deg w_j}:
/// one flow for unit time of the frozen combination. The step count is
/// fixed at construction from a bound on |t|, so the map is smooth in t.
class PhiMap {
 public:
  PhiMap(std::vector<CompiledField> fields, std::vector<double> scale, std::vector<double> x0, double t_bound,
         const PhiConfig& cfg = {});

  std::size_t dim() const { return x0_.size(); }
  std::size_t steps() const { return steps_; }
  const std::vector<double>& scale() const { return scale_; }
  const std::vector<double>& base() const { return x0_; }

  /// Throws FlowError.
  void operator()(const double* t, double* out) const;
  std::vector<double> operator()(std::span<const double> t) const;

 private:
  std::vector<CompiledField> fields_;
  std::vector<double> scale_, x0_;
  std::size_t steps_;
  double guard_;
};

struct PhiSetup {
  std::vector<Word> witness;
  Degree degree;
  double lambda = 0;   // lambda_I(x0)
  double Lambda = 0;   // (K delta)^{deg I} |lambda_I(x0)|, maximal over the generators
  double K = 8, delta1 = 0, delta2 = 0;
};

/// Picks the generator witness I maximizing (K delta)^{deg I} |lambda_I(x0)|,
/// the largest entry of Lambda(x0) among the polytope generators.
/// Throws std::invalid_argument when K < 1 or a lambda is not numeric.
PhiSetup select_witness(const std::vector<Generator>& generators, double delta1, double delta2, double K);

PhiMap make_phi(const WordTable& table, const PhiSetup& setup, std::span<const double> x0, double t_bound,
                const PhiConfig& cfg = {});

struct PhiCheckConfig {
  std::size_t samples = 2000;
  std::uint64_t seed = 11;
  double half_width = 0.5;  // E = [-w, w]^n
  double fd_step = 1e-3;
  double band_lo = 0.1, band_hi = 10.0;
  double degenerate = 1e-3;  // |det| below this fraction of |det DPhi(0)| warns
  PhiConfig phi;
};

struct PhiCheck {
  double ratio = 0;           // |Phi(E)| / (K^{-n} |Lambda| |E|)
  bool in_band = false;
  double det0 = 0;            // finite-difference det DPhi(0)
  double mean_abs_det = 0, min_abs_det = 0;
  std::size_t steps = 0;
  std::vector<std::string> warnings;
};

/// Monte-Carlo integral of |det DPhi| over E with central-difference
/// Jacobians; sample i uses chunk_seed(seed, i / kChunk) like the ball sampler.
PhiCheck phi_volume_check(const WordTable& table, const PhiSetup& setup, std::span<const double> x0,
                          const PhiCheckConfig& cfg = {});
/// Single-threaded reference; bit-identical to phi_volume_check.
PhiCheck phi_volume_check_serial(const WordTable& table, const PhiSetup& setup, std::span<const double> x0,
                                 const PhiCheckConfig& cfg = {});

}  // namespace radonlp
