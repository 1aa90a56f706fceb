#pragma once

#include "radonlp/ccflow/compiled.hpp"

#include <span>

namespace radonlp {

struct FlowConfig {
  double h = 1e-3;                  // classical RK4 step
  std::size_t max_steps = 10'000'000;
  double guard = 1e3;               // divergence guard on every coordinate
};

/// Throws std::invalid_argument on a bad config.
void validate(const FlowConfig& cfg);

/// x <- e^{tX} x, in ceil(|t|/h) equal RK4 steps.
void flow_inplace(const CompiledField& x, double* state, double t, const FlowConfig& cfg);

std::vector<double> flow(const CompiledField& x, std::vector<double> point, double t, const FlowConfig& cfg = {});

/// Applies e^{-t1 X1}, e^{-t2 X2}, e^{t1 X1}, e^{t2 X2} in that order and
/// returns (result - x) / (t1 t2), which tends to [X1, X2](x).
std::vector<double> commutator_defect(const CompiledField& x1, const CompiledField& x2, std::span<const double> point,
                                      double t1, double t2, const FlowConfig& cfg = {});

}  // namespace radonlp
