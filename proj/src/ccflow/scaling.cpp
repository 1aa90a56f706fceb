#include "radonlp/ccflow/scaling.hpp"

#include <cmath>
#include <limits>

namespace radonlp {

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::domain_error("fit abscissae coincide");
  double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ScalingStudy ball_scaling_study(const NumericModel& model, const std::vector<Degree>& generators,
                                std::span<const double> deltas, const ScalingConfig& cfg) {
  if (deltas.size() < 3) throw std::invalid_argument("scaling study needs at least three radii");
  if (generators.empty()) throw std::invalid_argument("scaling study needs the polytope generators");
  const double q = deltas[1] / deltas[0];
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] > 0) || std::abs(deltas[i] / deltas[i - 1] / q - 1) > 1e-9)
      throw std::invalid_argument("radii must be geometrically spaced");

  ScalingStudy study;
  study.predicted = std::numeric_limits<double>::infinity();
  for (const auto& g : generators) {
    double e = g.d1 + cfg.relation * g.d2;
    if (e < study.predicted) {
      study.predicted = e;
      study.dominant = g;
    }
  }

  std::vector<double> lx, ly;
  for (double d1 : deltas) {
    BallSpec spec;
    spec.x0 = model.base;
    spec.delta1 = d1;
    spec.delta2 = std::pow(d1, cfg.relation);
    spec.k_max = cfg.k_max;
    spec.samples = cfg.samples;
    spec.seed = cfg.seed;
    PointCloud cloud = sample_ball(spec, model.x1, model.x2, cfg.flow);
    ScalingRow row{d1, spec.delta2, {}, cloud.dropped};
    try {
      row.estimate = resolved_volume(cloud.dim, cloud.coords, cfg.resolution, cfg.min_occupied, cfg.max_resolution,
                                     cfg.frame);
    } catch (const std::runtime_error& e) {
      throw std::domain_error("degenerate fit at delta1 = " + std::to_string(d1) + ": " + e.what());
    }
    if (!(row.estimate.volume > 0) || !std::isfinite(row.estimate.volume))
      throw std::domain_error("degenerate fit: volume underflow at delta1 = " + std::to_string(d1));
    lx.push_back(std::log(d1));
    ly.push_back(std::log(row.estimate.volume));
    study.rows.push_back(std::move(row));
  }
  std::tie(study.slope, study.intercept) = fit_line(lx, ly);
  return study;
}

}  // namespace radonlp
