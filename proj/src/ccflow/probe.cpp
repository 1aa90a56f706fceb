#include "radonlp/ccflow/probe.hpp"

#include "radonlp/ccflow/ball.hpp"
#include "radonlp/ccflow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

namespace radonlp {

namespace {

struct Constraint {
  Rational a, b, rhs;  // a x + b y >= rhs
};

std::vector<double> ball_points(std::size_t n, double r, std::size_t count, std::uint64_t seed, bool parallel) {
  std::vector<double> out(count * n);
  const auto chunks = static_cast<std::int64_t>((count + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Rng rng(chunk_seed(seed, static_cast<std::uint64_t>(c)));
    const std::size_t end = std::min(count, static_cast<std::size_t>(c + 1) * kChunk);
    for (std::size_t i = static_cast<std::size_t>(c) * kChunk; i < end; ++i) {
      double norm = 0;
      double* p = out.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = rng.normal();
        norm += p[j] * p[j];
      }
      double rad = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(n)) / std::sqrt(norm);
      for (std::size_t j = 0; j < n; ++j) p[j] *= rad;
    }
  }
  return out;
}

}  // namespace

std::vector<double> euclidean_ball_points(std::size_t n, double r, std::size_t count, std::uint64_t seed) {
  return ball_points(n, r, count, seed, true);
}

std::vector<double> euclidean_ball_points_serial(std::size_t n, double r, std::size_t count, std::uint64_t seed) {
  return ball_points(n, r, count, seed, false);
}

HalfPlane separating_half_plane(const NewtonPolytope& polytope, const QPoint& c, const Rational& a_min) {
  if (!(a_min > 0) || !(a_min < Rational(1, 2))) throw std::invalid_argument("a_min must lie in (0, 1/2)");
  std::vector<Constraint> cons;
  for (const auto& v : polytope.vertices()) cons.push_back({Rational(v.d1), Rational(v.d2), Rational(1)});
  cons.push_back({1, 0, a_min});
  cons.push_back({0, 1, a_min});
  cons.push_back({-1, 0, a_min - 1});
  cons.push_back({0, -1, a_min - 1});

  std::optional<Rational> best;
  std::vector<QPoint> optimal;
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      Rational det = cons[i].a * cons[j].b - cons[i].b * cons[j].a;
      if (det == 0) continue;
      QPoint p{(cons[i].rhs * cons[j].b - cons[i].b * cons[j].rhs) / det,
               (cons[i].a * cons[j].rhs - cons[i].rhs * cons[j].a) / det};
      bool feasible = true;
      for (const auto& k : cons) feasible = feasible && k.a * p.x + k.b * p.y >= k.rhs;
      if (!feasible) continue;
      Rational obj = p.x * c.x + p.y * c.y;
      if (!best || obj < *best) {
        best = obj;
        optimal.clear();
      }
      if (obj == *best) optimal.push_back(p);
    }
  if (!best) throw std::logic_error("half-plane LP is infeasible");
  auto lex = [](const QPoint& a, const QPoint& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
  auto [lo, hi] = std::minmax_element(optimal.begin(), optimal.end(), lex);
  HalfPlane h{(lo->x + hi->x) / 2, (lo->y + hi->y) / 2, Rational(0)};
  h.at_c = h.a1 * c.x + h.a2 * c.y;
  return h;
}

namespace {

ProbeResult probe(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                const LebesguePair& pair, std::span<const double> delta0, const ProbeConfig& cfg, bool parallel) {
  if (!pair.nontrivial())
    throw TrivialRegime("trivially bounded regime: p2' <= p1, the inequality holds without any curvature");
  if (delta0.empty()) throw std::invalid_argument("probe needs at least one radius");
  for (double d : delta0)
    if (!(d > 0 && d < 1)) throw std::invalid_argument("probe radii must lie in (0, 1)");
  if (model.pi1.empty() || model.pi2.empty()) throw std::invalid_argument("probe needs both projections");

  std::vector<Degree> degrees;
  for (const auto& g : search.generators) degrees.push_back(g.degree);
  NewtonPolytope polytope(degrees);
  ProbeResult out;
  out.c = c_from_p(pair);
  out.membership = polytope.classify(out.c);
  if (out.membership != Membership::Exterior && !cfg.allow_interior)
    throw NotExterior("the pair is not exterior to the Newton polytope (c is " + to_string(out.membership) + ")");
  out.plane = separating_half_plane(polytope, out.c, cfg.a_min);
  if (out.membership == Membership::Exterior && out.plane.at_c >= 1)
    throw NotExterior("no separating half-plane with coefficients in [a_min, 1 - a_min]");

  const std::size_t n = model.n;
  const double a1 = to_double(out.plane.a1), a2 = to_double(out.plane.a2);
  const double u1 = to_double(pair.p1().reciprocal()), u2 = to_double(pair.p2().reciprocal());
  auto ts = euclidean_ball_points(n, 1.0 / cfg.K, cfg.samples, cfg.seed);

  for (double d0 : delta0) {
    ProbeRow row;
    row.delta0 = d0;
    row.delta1 = std::pow(d0, a1);
    row.delta2 = std::pow(d0, a2);
    PhiSetup setup = select_witness(search.generators, row.delta1, row.delta2, cfg.K);
    out.witness = setup.witness;
    out.degree = setup.degree;
    PhiMap phi = make_phi(table, setup, model.base, 1.0 / cfg.K, cfg.phi);

    std::vector<double> omega(cfg.samples * n), p1(cfg.samples * (n - 1)), p2(cfg.samples * (n - 1));
    std::vector<char> ok(cfg.samples, 1);
    const auto count = static_cast<std::int64_t>(cfg.samples);
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
      auto k = static_cast<std::size_t>(i);
      double* x = omega.data() + k * n;
      try {
        phi(ts.data() + k * n, x);
        for (std::size_t j = 0; j + 1 < n; ++j) {
          p1[k * (n - 1) + j] = model.pi1[j](x);
          p2[k * (n - 1) + j] = model.pi2[j](x);
        }
      } catch (const FlowError&) {
        ok[k] = 0;
      }
    }
    std::size_t kept = 0;
    for (std::size_t k = 0; k < cfg.samples; ++k) {
      if (!ok[k]) continue;
      std::copy_n(omega.begin() + k * n, n, omega.begin() + kept * n);
      std::copy_n(p1.begin() + k * (n - 1), n - 1, p1.begin() + kept * (n - 1));
      std::copy_n(p2.begin() + k * (n - 1), n - 1, p2.begin() + kept * (n - 1));
      ++kept;
    }
    row.dropped = cfg.samples - kept;
    if (row.dropped * 100 > cfg.samples)
      throw FlowError(FlowError::Kind::Divergence, "more than 1% of Phi evaluations failed");
    omega.resize(kept * n);
    p1.resize(kept * (n - 1));
    p2.resize(kept * (n - 1));

    row.omega = resolved_volume(n, omega, cfg.resolution, cfg.min_occupied, cfg.max_resolution, cfg.frame);
    row.pi1 = resolved_volume(n - 1, p1, cfg.resolution, cfg.min_occupied, cfg.max_resolution, cfg.frame);
    row.pi2 = resolved_volume(n - 1, p2, cfg.resolution, cfg.min_occupied, cfg.max_resolution, cfg.frame);
    row.ratio = row.omega.volume / (std::pow(row.pi1.volume, u1) * std::pow(row.pi2.volume, u2));
    out.rows.push_back(row);
  }

  out.strictly_increasing = true;
  double lo = out.rows[0].ratio, hi = lo;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    out.strictly_increasing = out.strictly_increasing && out.rows[i].ratio > out.rows[i - 1].ratio;
    lo = std::min(lo, out.rows[i].ratio);
    hi = std::max(hi, out.rows[i].ratio);
  }
  out.spread = hi / lo;
  return out;
}

}  // namespace

ProbeResult sharpness_probe(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                            const LebesguePair& pair, std::span<const double> delta0, const ProbeConfig& cfg) {
  return probe(model, table, search, pair, delta0, cfg, true);
}

ProbeResult sharpness_probe_serial(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                                   const LebesguePair& pair, std::span<const double> delta0, const ProbeConfig& cfg) {
  return probe(model, table, search, pair, delta0, cfg, false);
}

}  // namespace radonlp
