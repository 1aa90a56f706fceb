#include "radonlp/setcomb/extremal.hpp"

#include "radonlp/ccflow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace radonlp {

namespace {

/// Lattice over the row-major cloud: extent / resolution per axis, anchored
/// at the cloud minimum.
std::pair<std::vector<double>, std::vector<double>> cloud_lattice(std::size_t dim, const std::vector<double>& pts,
                                                                  std::size_t resolution) {
  std::vector<double> lo(dim, INFINITY), hi(dim, -INFINITY);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    lo[i % dim] = std::min(lo[i % dim], pts[i]);
    hi[i % dim] = std::max(hi[i % dim], pts[i]);
  }
  std::vector<double> h(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    h[j] = (hi[j] - lo[j]) / static_cast<double>(resolution);
    if (!(h[j] > 0)) throw std::domain_error("Phi-ball image is flat along an axis");
  }
  return {lo, h};
}

class Counter {
 public:
  void add(const std::vector<CellKey>& keys) {
    for (const auto& k : keys) ++count_[k];
  }
  void remove(const std::vector<CellKey>& keys) {
    for (const auto& k : keys)
      if (--count_[k] == 0) count_.erase(k);
  }
  std::size_t size() const { return count_.size(); }
  std::size_t size_if_added(const std::vector<CellKey>& keys) const {
    std::size_t s = count_.size();
    for (const auto& k : keys) s += !count_.count(k);
    return s;
  }
  std::size_t size_if_removed(const std::vector<CellKey>& keys) const {
    std::size_t s = count_.size();
    for (const auto& k : keys) s -= count_.at(k) == 1;
    return s;
  }

 private:
  std::map<CellKey, std::size_t> count_;
};

}  // namespace

ExtremalResult extremal_search(const NumericModel& model, const WordTable& table, const GeneratorSearch& search,
                               const LebesguePair& pair, double delta0, const ExtremalConfig& cfg) {
  if (!pair.nontrivial())
    throw TrivialRegime("trivially bounded regime: p2' <= p1, the inequality holds without any curvature");
  if (cfg.budget == 0) throw std::invalid_argument("search budget must be positive");
  if (!(delta0 > 0 && delta0 < 1)) throw std::invalid_argument("scale parameter must lie in (0, 1)");
  if (cfg.resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const std::size_t n = model.n;

  std::vector<Degree> degrees;
  for (const auto& g : search.generators) degrees.push_back(g.degree);
  NewtonPolytope polytope(degrees);
  ExtremalResult r;
  QPoint c = c_from_p(pair);
  r.membership = polytope.classify(c);
  r.plane = separating_half_plane(polytope, c, cfg.a_min);
  r.delta0 = delta0;
  r.delta1 = std::pow(delta0, to_double(r.plane.a1));
  r.delta2 = std::pow(delta0, to_double(r.plane.a2));

  PhiSetup setup = select_witness(search.generators, r.delta1, r.delta2, cfg.K);
  PhiMap phi = make_phi(table, setup, model.base, 1.0 / cfg.K, cfg.phi);
  auto ts = euclidean_ball_points(n, 1.0 / cfg.K, cfg.samples, cfg.seed);
  std::vector<double> omega, p1, p2;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    try {
      phi(ts.data() + i * n, x.data());
    } catch (const FlowError&) {
      continue;
    }
    omega.insert(omega.end(), x.begin(), x.end());
    for (std::size_t j = 0; j + 1 < n; ++j) {
      p1.push_back(model.pi1[j](x.data()));
      p2.push_back(model.pi2[j](x.data()));
    }
  }
  if (omega.size() / n * 100 < cfg.samples * 99)
    throw FlowError(FlowError::Kind::Divergence, "more than 1% of Phi evaluations failed");

  auto [o, h] = cloud_lattice(n, omega, cfg.resolution);
  r.seed_set = GridSet::from_points(n, omega, o, h);
  auto [o1, h1] = cloud_lattice(n - 1, p1, cfg.resolution);
  auto [o2, h2] = cloud_lattice(n - 1, p2, cfg.resolution);
  Projection pr1 = map_projection(model.pi1, o1, h1, cfg.supersample);
  Projection pr2 = map_projection(model.pi2, o2, h2, cfg.supersample);
  r.seed_ratio = rwt_ratio(r.seed_set, pr1, pr2, pair);

  const double cell = r.seed_set.cell_volume();
  double cell1 = 1, cell2 = 1;
  for (double v : h1) cell1 *= v;
  for (double v : h2) cell2 *= v;
  auto value = [&](std::size_t m, std::size_t a, std::size_t b) {
    return rwt_value(static_cast<double>(m) * cell, static_cast<double>(a) * cell1, static_cast<double>(b) * cell2,
                     pair);
  };

  std::map<CellKey, std::pair<std::vector<CellKey>, std::vector<CellKey>>> images;
  auto image = [&](const CellKey& k) -> const auto& {
    auto it = images.find(k);
    if (it == images.end())
      it = images.emplace(k, std::make_pair(project_cell(r.seed_set, pr1, k), project_cell(r.seed_set, pr2, k))).first;
    return it->second;
  };
  std::vector<CellKey> members = r.seed_set.cells();
  std::set<CellKey> member_set(members.begin(), members.end());
  Counter c1, c2;
  for (const auto& k : members) {
    c1.add(image(k).first);
    c2.add(image(k).second);
  }
  double current = value(members.size(), c1.size(), c2.size());

  Rng rng(chunk_seed(cfg.seed, 0x5eed));
  r.trace.reserve(cfg.budget);
  for (std::size_t step = 0; step < cfg.budget; ++step) {
    bool grow = rng.coin() || members.size() == 1;
    std::size_t pick = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(members.size()) - 1));
    if (grow) {
      CellKey k = members[pick];
      auto axis = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(n) - 1));
      k[axis] += rng.coin() ? 1 : -1;
      if (!member_set.count(k)) {
        try {
          const auto& im = image(k);
          double v = value(members.size() + 1, c1.size_if_added(im.first), c2.size_if_added(im.second));
          if (v >= current) {
            c1.add(im.first);
            c2.add(im.second);
            members.push_back(k);
            member_set.insert(k);
            current = v;
            ++r.accepted;
          }
        } catch (const FlowError&) {
          // the neighbour leaves the domain of the projections
        }
      }
    } else {
      const CellKey k = members[pick];
      const auto& im = image(k);
      double v = value(members.size() - 1, c1.size_if_removed(im.first), c2.size_if_removed(im.second));
      if (v >= current) {
        c1.remove(im.first);
        c2.remove(im.second);
        members[pick] = members.back();
        members.pop_back();
        member_set.erase(k);
        current = v;
        ++r.accepted;
      }
    }
    r.trace.push_back(current);
  }
  r.best = r.seed_set.with_cells(members);
  r.best_ratio = rwt_ratio(r.best, pr1, pr2, pair);
  return r;
}

}  // namespace radonlp
