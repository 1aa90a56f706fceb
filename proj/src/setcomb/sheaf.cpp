#include "radonlp/setcomb/sheaf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radonlp {

std::string to_string(StraightenKind k) {
  switch (k) {
    case StraightenKind::Identity: return "identity";
    case StraightenKind::Exact: return "exact";
    case StraightenKind::Approximate: return "approximate";
  }
  return "?";
}

Straightening Straightening::identity(unsigned j, std::size_t axis) {
  if (j != 1 && j != 2) throw std::invalid_argument("direction must be 1 or 2");
  Straightening s;
  s.direction = j;
  s.axis = axis;
  return s;
}

Straightening make_straightening(const FieldData& fd, unsigned j) {
  if (j != 1 && j != 2) throw std::invalid_argument("direction must be 1 or 2");
  if (!fd.free_params().empty()) throw SpecError("straightening needs values for every parameter");
  const VectorField& x = j == 1 ? fd.x1 : fd.x2;
  const std::size_t n = fd.n;
  for (std::size_t k = 0; k < n; ++k)
    if (x == VectorField::coordinate(n, x.nvars(), k)) return Straightening::identity(j, k);

  Straightening s;
  s.direction = j;
  const auto& pis = j == 1 ? fd.pi1 : fd.pi2;
  for (const auto& p : pis) s.pi.emplace_back(p, n);
  std::vector<double> base(fd.base.size());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = to_double(fd.base[i]);
  std::optional<std::size_t> exact;
  std::size_t best = 0;
  double best_speed = -1;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].is_constant() && x[k].constant_value() == 1 && !exact) exact = k;
    double v = std::abs(CompiledFn(x[k], n)(base.data()));
    if (v > best_speed) {
      best_speed = v;
      best = k;
    }
  }
  if (exact) {
    s.kind = StraightenKind::Exact;
    s.axis = *exact;
  } else {
    if (!(best_speed > 0)) throw std::domain_error("straightening Jacobian degenerate: X_j vanishes at the base point");
    s.kind = StraightenKind::Approximate;
    s.axis = best;
  }
  s.speed = CompiledFn(x[s.axis], n);
  return s;
}

namespace {

std::vector<double> default_fiber_h(const GridSet& g, const Straightening& s, const std::vector<double>& given) {
  if (!given.empty()) {
    if (given.size() + 1 != g.n()) throw std::invalid_argument("fiber lattice needs n - 1 cell sizes");
    for (double v : given)
      if (!(v > 0)) throw std::invalid_argument("fiber cell sizes must be positive");
    return given;
  }
  std::vector<double> h;
  for (std::size_t i = 0; i < g.n(); ++i)
    if (i != s.axis) h.push_back(g.h()[i]);
  return h;
}

CellKey fiber_key(const GridSet& g, const Straightening& s, const std::vector<double>& fh, const CellKey& k) {
  CellKey out{};
  if (s.kind == StraightenKind::Identity) {
    for (std::size_t i = 0, o = 0; i < g.n(); ++i)
      if (i != s.axis) out[o++] = k[i];
    return out;
  }
  double x[kMaxDim];
  g.center(k, x);
  for (std::size_t i = 0; i < s.pi.size(); ++i) out[i] = static_cast<std::int32_t>(std::floor(s.pi[i](x) / fh[i]));
  return out;
}

}  // namespace

std::map<CellKey, IntervalUnion> fiber_sets(const GridSet& g, const Straightening& s,
                                            const std::vector<double>& fiber_h) {
  if (s.axis >= g.n()) throw std::invalid_argument("fiber axis out of range");
  if (s.kind != StraightenKind::Identity && s.pi.size() + 1 != g.n())
    throw std::invalid_argument("straightening projection has the wrong dimension");
  auto fh = default_fiber_h(g, s, fiber_h);
  std::map<CellKey, std::vector<Interval>> pieces;
  const double o = g.origin()[s.axis], h = g.h()[s.axis];
  for (const auto& k : g.cells()) {
    double lo = o + k[s.axis] * h;
    pieces[fiber_key(g, s, fh, k)].push_back({lo, lo + h});
  }
  std::map<CellKey, IntervalUnion> out;
  for (auto& [key, v] : pieces) out.emplace(key, IntervalUnion(std::move(v)));
  return out;
}

namespace {

SheafReport refine(const GridSet& g, const Straightening& s, const SheafConfig& cfg, bool parallel) {
  if (g.empty()) throw std::invalid_argument("cannot refine an empty set");
  if (g.n() < 2) throw std::invalid_argument("refinement needs dimension >= 2");
  if (s.axis >= g.n()) throw std::invalid_argument("fiber axis out of range");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(cfg.level > 0)) throw std::invalid_argument("level fraction must be positive");
  const double h = g.h()[s.axis], o = g.origin()[s.axis];
  int e;
  if (std::frexp(h, &e) != 0.5 || std::fmod(o, h) != 0)
    throw std::invalid_argument("fiber axis lattice must be dyadic: cell size a power of two, origin a multiple of it");
  const int min_scale = e - 1;

  SheafReport r;
  r.direction = s.direction;
  r.axis = s.axis;
  r.kind = s.kind;
  r.epsilon = cfg.epsilon;
  r.constant = cfg.constant;
  r.measure = g.measure();

  if (s.kind != StraightenKind::Identity) {
    double lo = INFINITY, hi = 0;
    double x[kMaxDim];
    for (const auto& k : g.cells()) {
      g.center(k, x);
      double v = std::abs(s.speed(x));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.speed_min = lo;
    r.speed_max = hi;
    if (!(lo > 1e-9 * hi) || !(hi > 0))
      throw std::domain_error("straightening Jacobian degenerate: X_j x_k vanishes on the set");
  }

  const auto fh = default_fiber_h(g, s, cfg.fiber_h);
  auto fibers = fiber_sets(g, s, fh);
  std::vector<std::pair<CellKey, IntervalUnion>> list(fibers.begin(), fibers.end());
  r.fibers = list.size();

  double total = 0, amax = 0;
  for (const auto& [key, set] : list) {
    total += set.measure();
    amax = std::max(amax, set.max_abs());
  }
  r.level = cfg.level * total / static_cast<double>(list.size());
  if (cfg.unit) {
    if (!(*cfg.unit > 0)) throw std::invalid_argument("unit must be positive");
    r.unit = *cfg.unit;
  } else {
    IntervalUnion all({{-amax, amax}});
    r.unit = ambient_unit(all);
  }

  struct Slot {
    bool in_level = false;
    WidthResult width;
    IntervalUnion kept;
  };
  std::vector<Slot> slots(list.size());
  const auto count = static_cast<std::int64_t>(list.size());
  std::vector<std::string> errors(list.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& [key, set] = list[static_cast<std::size_t>(i)];
    auto& slot = slots[static_cast<std::size_t>(i)];
    if (set.measure() < r.level) continue;
    slot.in_level = true;
    try {
      slot.width = width_of(set, cfg.epsilon, r.unit, min_scale);
      slot.kept = set.intersect(Interval{slot.width.interval.lo(), slot.width.interval.hi()});
    } catch (const std::exception& ex) {
      errors[static_cast<std::size_t>(i)] = ex.what();
    }
  }
  for (const auto& err : errors)
    if (!err.empty()) throw std::domain_error("fiber width failed: " + err);

  for (const auto& slot : slots) {
    if (!slot.in_level) continue;
    ++r.level_fibers;
    auto& c = r.histogram[slot.width.interval.scale];
    ++c.fibers;
    c.mass += slot.kept.measure();
  }
  int chosen = 0;
  double best = -1;
  for (const auto& [scale, c] : r.histogram)
    if (c.mass >= best) {  // ascending scales: ties go to the coarsest
      best = c.mass;
      chosen = scale;
    }
  r.width = std::ldexp(1.0, chosen);

  std::map<CellKey, DyadicInterval> chosen_fibers;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& slot = slots[i];
    if (!slot.in_level || slot.width.interval.scale != chosen) continue;
    chosen_fibers.emplace(list[i].first, slot.width.interval);
    FiberCertificate cert;
    cert.fiber = list[i].first;
    cert.interval = slot.width.interval;
    cert.mass = list[i].second.measure();
    cert.kept = slot.kept.measure();
    cert.threshold = slot.width.profile.back().threshold;
    r.certificates.push_back(cert);
  }

  std::vector<CellKey> kept;
  for (const auto& k : g.cells()) {
    auto it = chosen_fibers.find(fiber_key(g, s, fh, k));
    if (it == chosen_fibers.end()) continue;
    double lo = o + k[s.axis] * h;
    if (lo >= it->second.lo() && lo + h <= it->second.hi()) kept.push_back(k);
  }
  r.refined = g.with_cells(std::move(kept));
  r.refined_measure = r.refined.measure();
  r.ratio = r.refined_measure / r.measure;

  const auto ncert = static_cast<std::int64_t>(r.certificates.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::int64_t i = 0; i < ncert; ++i) {
    auto& cert = r.certificates[static_cast<std::size_t>(i)];
    IntervalUnion sp = fibers.at(cert.fiber).intersect(Interval{cert.interval.lo(), cert.interval.hi()});
    std::vector<double> centers;
    for (const auto& p : sp.pieces())
      for (double x = p.lo; x < p.hi; x += h) centers.push_back(x);
    centers.push_back(sp.max());
    double worst = 0;
    bool pass = true;
    for (double c : centers) {
      auto chk = is_central(sp.shifted(-c), r.width, cfg.epsilon, cfg.constant);
      worst = std::max(worst, chk.worst_ratio);
      pass = pass && chk.pass;
    }
    cert.worst_ratio = worst;
    cert.pass = pass;
  }
  r.all_pass = std::all_of(r.certificates.begin(), r.certificates.end(), [](const auto& c) { return c.pass; });
  return r;
}

}  // namespace

SheafReport sheaf_refine(const GridSet& g, const Straightening& s, const SheafConfig& cfg) {
  return refine(g, s, cfg, true);
}

SheafReport sheaf_refine_serial(const GridSet& g, const Straightening& s, const SheafConfig& cfg) {
  return refine(g, s, cfg, false);
}

}  // namespace radonlp
