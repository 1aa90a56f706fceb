#pragma once

#include "radonlp/ccflow/probe.hpp"
#include "radonlp/setcomb/grid_set.hpp"

namespace radonlp {

struct ExtremalConfig {
  double K = 8;
  std::size_t samples = 20000;    // Phi-ball points defining the seed set
  std::uint64_t seed = 5;
  std::size_t resolution = 12;    // cells per axis across the seed's extent
  unsigned supersample = 2;       // probe points per axis for the projections
  std::size_t budget = 2000;      // proposals
  Rational a_min = Rational(1, 16);
  PhiConfig phi;
};

struct ExtremalResult {
  double delta0 = 0, delta1 = 0, delta2 = 0;
  Membership membership = Membership::Exterior;
  HalfPlane plane;
  GridSet seed_set, best;
  RwtRatio seed_ratio, best_ratio;
  std::vector<double> trace;      // current ratio after each proposal
  std::size_t accepted = 0;
};

/// Deterministic hill climbing over grid sets: starting from the cells of
/// Omega = Phi(B_{1/K}) at (delta0^{a1}, delta0^{a2}), each proposal adds a
/// lattice neighbour of a random member or removes a random member and is
/// kept when the restricted weak-type ratio does not drop. Projection
/// measures are updated incrementally from per-cell image keys.
/// Throws TrivialRegime when p2' <= p1 and std::invalid_argument for a zero
/// budget. The best set is a record of the search, not a claimed optimum.
ExtremalResult extremal_search(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                               const LebesguePair& pair, double delta0, const ExtremalConfig& cfg = {});

}  // namespace radonlp
