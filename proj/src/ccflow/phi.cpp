#include "radonlp/ccflow/phi.hpp"

#include "radonlp/ccflow/ball.hpp"
#include "radonlp/ccflow/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>

namespace radonlp {

PhiMap::PhiMap(std::vector<CompiledField> fields, std::vector<double> scale, std::vector<double> x0,
               double t_bound, const PhiConfig& cfg)
    : fields_(std::move(fields)), scale_(std::move(scale)), x0_(std::move(x0)), guard_(cfg.guard) {
  if (fields_.size() != scale_.size() || fields_.size() != x0_.size())
    throw std::invalid_argument("Phi needs one field and one scale per coordinate");
  if (!(cfg.h > 0)) throw std::invalid_argument("Phi step must be positive");
  double speed = 0;
  State v;
  for (std::size_t j = 0; j < fields_.size(); ++j) {
    fields_[j].eval(x0_.data(), v.data());
    double m = 0;
    for (std::size_t i = 0; i < dim(); ++i) m = std::max(m, std::abs(v[i]));
    speed += std::abs(t_bound * scale_[j]) * m;
  }
  steps_ = std::max<std::size_t>(cfg.min_steps, static_cast<std::size_t>(std::ceil(speed / cfg.h)));
}

void PhiMap::operator()(const double* t, double* out) const {
  const std::size_t n = dim();
  State c;
  for (std::size_t j = 0; j < n; ++j) c[j] = t[j] * scale_[j];
  auto rhs = [&](const double* x, double* f) {
    State v;
    std::fill(f, f + n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (c[j] == 0.0) continue;
      fields_[j].eval(x, v.data());
      for (std::size_t i = 0; i < n; ++i) f[i] += c[j] * v[i];
    }
  };
  std::copy(x0_.begin(), x0_.end(), out);
  const double dt = 1.0 / static_cast<double>(steps_);
  State k1, k2, k3, k4, tmp;
  for (std::size_t s = 0; s < steps_; ++s) {
    rhs(out, k1.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = out[i] + 0.5 * dt * k1[i];
    rhs(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = out[i] + 0.5 * dt * k2[i];
    rhs(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = out[i] + dt * k3[i];
    rhs(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!(std::abs(out[i]) <= guard_)) throw FlowError(FlowError::Kind::Divergence, "divergence guard tripped in Phi");
    }
  }
}

std::vector<double> PhiMap::operator()(std::span<const double> t) const {
  if (t.size() != dim()) throw std::invalid_argument("Phi argument has the wrong dimension");
  std::vector<double> out(dim());
  (*this)(t.data(), out.data());
  return out;
}

PhiSetup select_witness(const std::vector<Generator>& generators, double delta1, double delta2, double K) {
  if (!(K >= 1)) throw std::invalid_argument("K must be at least 1");
  if (generators.empty()) throw std::invalid_argument("no generators to pick a witness from");
  PhiSetup best;
  best.K = K;
  best.delta1 = delta1;
  best.delta2 = delta2;
  best.Lambda = -1;
  for (const auto& g : generators) {
    if (!g.lambda.is_constant()) throw std::invalid_argument("witness determinant still depends on a parameter");
    double lam = to_double(g.lambda.constant_value());
    double value = std::pow(K * delta1, g.degree.d1) * std::pow(K * delta2, g.degree.d2) * std::abs(lam);
    if (value > best.Lambda) {
      best.Lambda = value;
      best.lambda = lam;
      best.witness = g.witness;
      best.degree = g.degree;
    }
  }
  return best;
}

PhiMap make_phi(const WordTable& table, const PhiSetup& setup, std::span<const double> x0, double t_bound,
                const PhiConfig& cfg) {
  std::vector<CompiledField> fields;
  std::vector<double> scale;
  for (const auto& w : setup.witness) {
    fields.emplace_back(table.field(w));
    Degree d = w.degree();
    scale.push_back(std::pow(setup.K * setup.delta1, d.d1) * std::pow(setup.K * setup.delta2, d.d2) / setup.K);
  }
  return PhiMap(std::move(fields), std::move(scale), {x0.begin(), x0.end()}, t_bound, cfg);
}

namespace {

double jacobian_det(const PhiMap& phi, const double* t, double eta) {
  const std::size_t n = phi.dim();
  Eigen::MatrixXd J(n, n);
  State tp, plus, minus;
  std::copy(t, t + n, tp.begin());
  for (std::size_t j = 0; j < n; ++j) {
    tp[j] = t[j] + eta;
    phi(tp.data(), plus.data());
    tp[j] = t[j] - eta;
    phi(tp.data(), minus.data());
    tp[j] = t[j];
    for (std::size_t i = 0; i < n; ++i) J(i, j) = (plus[i] - minus[i]) / (2 * eta);
  }
  return J.determinant();
}

PhiCheck volume_check(const WordTable& table, const PhiSetup& setup, std::span<const double> x0,
                          const PhiCheckConfig& cfg, bool parallel) {
  if (cfg.samples == 0) throw std::invalid_argument("volume check needs samples");
  if (!(cfg.half_width > 0) || !(cfg.fd_step > 0)) throw std::invalid_argument("box and step must be positive");
  const std::size_t n = x0.size();
  PhiMap phi = make_phi(table, setup, x0, cfg.half_width * std::sqrt(static_cast<double>(n)) + cfg.fd_step, cfg.phi);
  PhiCheck out;
  out.steps = phi.steps();
  State zero{};
  out.det0 = jacobian_det(phi, zero.data(), cfg.fd_step);

  std::vector<double> dets(cfg.samples);
  const auto chunks = static_cast<std::int64_t>((cfg.samples + kChunk - 1) / kChunk);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      Rng rng(chunk_seed(cfg.seed, static_cast<std::uint64_t>(c)));
      State t;
      const std::size_t end = std::min(cfg.samples, static_cast<std::size_t>(c + 1) * kChunk);
      for (std::size_t i = static_cast<std::size_t>(c) * kChunk; i < end; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[j] = (2 * rng.uniform() - 1) * cfg.half_width;
        dets[i] = std::abs(jacobian_det(phi, t.data(), cfg.fd_step));
      }
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0;
  out.min_abs_det = dets[0];
  for (double d : dets) {
    sum += d;
    out.min_abs_det = std::min(out.min_abs_det, d);
  }
  out.mean_abs_det = sum / static_cast<double>(dets.size());
  const double predicted = std::pow(setup.K, -static_cast<double>(n)) * setup.Lambda;
  out.ratio = out.mean_abs_det / predicted;
  out.in_band = out.ratio >= cfg.band_lo && out.ratio <= cfg.band_hi;
  if (out.min_abs_det < cfg.degenerate * std::abs(out.det0))
    out.warnings.push_back("Jacobian nearly degenerate inside E: the pulled-back frame is far from the identity");
  return out;
}

}  // namespace

PhiCheck phi_volume_check(const WordTable& table, const PhiSetup& setup, std::span<const double> x0,
                          const PhiCheckConfig& cfg) {
  return volume_check(table, setup, x0, cfg, true);
}

PhiCheck phi_volume_check_serial(const WordTable& table, const PhiSetup& setup, std::span<const double> x0,
                                 const PhiCheckConfig& cfg) {
  return volume_check(table, setup, x0, cfg, false);
}

}  // namespace radonlp
