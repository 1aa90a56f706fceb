#include "radonlp/ccflow/flow.hpp"

#include <cmath>

namespace radonlp {

void validate(const FlowConfig& cfg) {
  if (!(cfg.h > 0) || !std::isfinite(cfg.h)) throw std::invalid_argument("flow step h must be positive");
  if (!(cfg.guard > 0) || !std::isfinite(cfg.guard)) throw std::invalid_argument("guard radius must be finite and positive");
  if (cfg.max_steps == 0) throw std::invalid_argument("max step count must be positive");
}

void flow_inplace(const CompiledField& x, double* s, double t, const FlowConfig& cfg) {
  if (t == 0.0) return;
  const std::size_t n = x.dim();
  double want = std::ceil(std::abs(t) / cfg.h);
  if (want > static_cast<double>(cfg.max_steps))
    throw FlowError(FlowError::Kind::StepLimit, "flow needs more than the maximum step count");
  const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(want));
  const double dt = t / static_cast<double>(steps);
  State k1, k2, k3, k4, tmp;
  for (std::size_t step = 0; step < steps; ++step) {
    x.eval(s, k1.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    x.eval(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    x.eval(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + dt * k3[i];
    x.eval(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i) {
      s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!(std::abs(s[i]) <= cfg.guard))
        throw FlowError(FlowError::Kind::Divergence, "divergence guard tripped");
    }
  }
}

std::vector<double> flow(const CompiledField& x, std::vector<double> point, double t, const FlowConfig& cfg) {
  validate(cfg);
  if (point.size() != x.dim()) throw std::invalid_argument("point dimension does not match the field");
  flow_inplace(x, point.data(), t, cfg);
  return point;
}

std::vector<double> commutator_defect(const CompiledField& x1, const CompiledField& x2, std::span<const double> point,
                                      double t1, double t2, const FlowConfig& cfg) {
  validate(cfg);
  if (t1 == 0.0 || t2 == 0.0) throw std::invalid_argument("commutator times must be nonzero");
  if (point.size() != x1.dim() || point.size() != x2.dim())
    throw std::invalid_argument("point dimension does not match the fields");
  std::vector<double> s(point.begin(), point.end());
  flow_inplace(x1, s.data(), -t1, cfg);
  flow_inplace(x2, s.data(), -t2, cfg);
  flow_inplace(x1, s.data(), t1, cfg);
  flow_inplace(x2, s.data(), t2, cfg);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (s[i] - point[i]) / (t1 * t2);
  return s;
}

}  // namespace radonlp
