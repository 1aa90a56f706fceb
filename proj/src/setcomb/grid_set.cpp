#include "radonlp/setcomb/grid_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace radonlp {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_lattice(std::size_t n, const std::vector<double>& origin, const std::vector<double>& h) {
  if (n == 0 || n > kMaxDim) throw std::invalid_argument("grid dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (origin.size() != n || h.size() != n) throw std::invalid_argument("grid origin and cell size need one entry per axis");
  for (double v : h)
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("grid cell sizes must be positive");
  for (double v : origin)
    if (!std::isfinite(v)) throw std::invalid_argument("grid origin must be finite");
}

}  // namespace

GridSet::GridSet(std::size_t n, std::vector<double> origin, std::vector<double> h, std::vector<CellKey> cells)
    : n_(n), origin_(std::move(origin)), h_(std::move(h)), cells_(std::move(cells)) {
  check_lattice(n_, origin_, h_);
  for (auto& c : cells_)
    for (std::size_t i = n_; i < kMaxDim; ++i)
      if (c[i] != 0) throw std::invalid_argument("cell key has entries beyond the grid dimension");
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

GridSet GridSet::box(std::vector<double> origin, std::vector<double> h, std::span<const std::int32_t> counts) {
  const std::size_t n = counts.size();
  check_lattice(n, origin, h);
  std::size_t total = 1;
  for (auto c : counts) {
    if (c <= 0) throw std::invalid_argument("box needs at least one cell per axis");
    total *= static_cast<std::size_t>(c);
  }
  std::vector<CellKey> cells;
  cells.reserve(total);
  CellKey k{};
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = n; i-- > 0;) {
      k[i] = static_cast<std::int32_t>(r % static_cast<std::size_t>(counts[i]));
      r /= static_cast<std::size_t>(counts[i]);
    }
    cells.push_back(k);
  }
  return GridSet(n, std::move(origin), std::move(h), std::move(cells));
}

GridSet GridSet::from_points(std::size_t n, std::span<const double> pts, std::vector<double> origin,
                             std::vector<double> h) {
  check_lattice(n, origin, h);
  auto cells = occupied_cells(n, pts, origin, h);
  return GridSet(n, std::move(origin), std::move(h), std::move(cells));
}

double GridSet::cell_volume() const {
  double v = 1;
  for (double x : h_) v *= x;
  return v;
}

bool GridSet::contains(const CellKey& k) const { return std::binary_search(cells_.begin(), cells_.end(), k); }

bool GridSet::same_lattice(const GridSet& o) const { return n_ == o.n_ && origin_ == o.origin_ && h_ == o.h_; }

bool GridSet::includes(const GridSet& o) const {
  return same_lattice(o) && std::includes(cells_.begin(), cells_.end(), o.cells_.begin(), o.cells_.end());
}

void GridSet::lower_corner(const CellKey& k, double* out) const {
  for (std::size_t i = 0; i < n_; ++i) out[i] = origin_[i] + k[i] * h_[i];
}

void GridSet::center(const CellKey& k, double* out) const {
  for (std::size_t i = 0; i < n_; ++i) out[i] = origin_[i] + (k[i] + 0.5) * h_[i];
}

std::pair<std::vector<double>, std::vector<double>> GridSet::bounds() const {
  if (empty()) throw std::invalid_argument("empty grid set has no bounding box");
  CellKey lo = cells_.front(), hi = cells_.front();
  for (const auto& c : cells_)
    for (std::size_t i = 0; i < n_; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  std::vector<double> a(n_), b(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    a[i] = origin_[i] + lo[i] * h_[i];
    b[i] = origin_[i] + (hi[i] + 1) * h_[i];
  }
  return {a, b};
}

GridSet GridSet::with_cells(std::vector<CellKey> cells) const { return GridSet(n_, origin_, h_, std::move(cells)); }

void write_grid_set(std::ostream& out, const GridSet& g) {
  const std::size_t n = g.n();
  out << "gridset 1\ndim " << n << "\norigin";
  for (double v : g.origin()) out << ' ' << fmt(v);
  out << "\nh";
  for (double v : g.h()) out << ' ' << fmt(v);
  out << "\ncells " << g.size() << '\n';
  const auto& cells = g.cells();
  std::size_t i = 0;
  while (i < cells.size()) {
    std::size_t j = i;
    auto same_row = [&](std::size_t a, std::size_t b) {
      return std::equal(cells[a].begin(), cells[a].begin() + static_cast<std::ptrdiff_t>(n - 1), cells[b].begin());
    };
    while (j < cells.size() && same_row(i, j)) ++j;
    for (std::size_t k = 0; k + 1 < n; ++k) out << cells[i][k] << ' ';
    out << ':';
    std::size_t r = i;
    while (r < j) {
      std::size_t s = r;
      while (s + 1 < j && cells[s + 1][n - 1] == cells[s][n - 1] + 1) ++s;
      out << ' ' << cells[r][n - 1] << '-' << cells[s][n - 1];
      r = s + 1;
    }
    out << '\n';
    i = j;
  }
}

GridSet read_grid_set(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("grid set line " + std::to_string(lineno) + ": " + msg);
  };
  auto next = [&]() {
    do {
      if (!std::getline(in, line)) fail("unexpected end of input");
      ++lineno;
    } while (line.empty());
    return std::istringstream(line);
  };
  auto header = next();
  std::string word;
  int version = 0;
  if (!(header >> word >> version) || word != "gridset" || version != 1) fail("expected 'gridset 1'");
  std::size_t n = 0;
  auto dim = next();
  if (!(dim >> word >> n) || word != "dim" || n == 0 || n > kMaxDim) fail("expected 'dim <n>' with 1 <= n <= 8");
  auto read_vec = [&](const char* key) {
    auto s = next();
    std::vector<double> v(n);
    if (!(s >> word) || word != key) fail(std::string("expected '") + key + "'");
    for (auto& x : v)
      if (!(s >> x)) fail(std::string("expected ") + std::to_string(n) + " values after '" + key + "'");
    if (s >> word) fail("trailing text");
    return v;
  };
  auto origin = read_vec("origin");
  auto h = read_vec("h");
  std::size_t count = 0;
  auto cs = next();
  if (!(cs >> word >> count) || word != "cells") fail("expected 'cells <count>'");
  std::vector<CellKey> cells;
  cells.reserve(count);
  while (cells.size() < count) {
    auto row = next();
    CellKey k{};
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(row >> k[i])) fail("expected row prefix of " + std::to_string(n - 1) + " indices");
    if (!(row >> word) || word != ":") fail("expected ':' after the row prefix");
    std::string run;
    bool any = false;
    while (row >> run) {
      std::int64_t a = 0, b = 0;
      char dash = 0;
      std::istringstream rs(run);
      // Accept negative bounds: read a, then '-', then b.
      if (!(rs >> a) || !(rs >> dash) || dash != '-' || !(rs >> b) || b < a) fail("bad run '" + run + "'");
      for (std::int64_t v = a; v <= b; ++v) {
        k[n - 1] = static_cast<std::int32_t>(v);
        cells.push_back(k);
      }
      any = true;
    }
    if (!any) fail("row without runs");
  }
  if (cells.size() != count) fail("cell count does not match the header");
  try {
    GridSet g(n, origin, h, cells);
    if (g.size() != count) fail("duplicate cells");
    return g;
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return {};
}

Projection drop_axis_projection(const GridSet& g, std::size_t axis) {
  if (g.n() < 2) throw std::invalid_argument("cannot project a one-dimensional grid set");
  if (axis >= g.n()) throw std::invalid_argument("projection axis out of range");
  Projection p;
  p.out_dim = g.n() - 1;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (i == axis) continue;
    p.origin.push_back(g.origin()[i]);
    p.h.push_back(g.h()[i]);
  }
  p.drop_axis = axis;
  p.map = [axis, n = g.n()](const double* x, double* y) {
    for (std::size_t i = 0, o = 0; i < n; ++i)
      if (i != axis) y[o++] = x[i];
  };
  return p;
}

Projection map_projection(std::vector<CompiledFn> f, std::vector<double> origin, std::vector<double> h,
                          unsigned supersample) {
  if (f.empty()) throw std::invalid_argument("projection needs at least one component");
  check_lattice(f.size(), origin, h);
  if (supersample == 0) throw std::invalid_argument("supersample must be positive");
  Projection p;
  p.out_dim = f.size();
  p.origin = std::move(origin);
  p.h = std::move(h);
  p.supersample = supersample;
  p.map = [f = std::move(f)](const double* x, double* y) {
    for (std::size_t i = 0; i < f.size(); ++i) y[i] = f[i](x);
  };
  return p;
}

std::vector<CellKey> project_cell(const GridSet& g, const Projection& p, const CellKey& k) {
  if (p.out_dim != p.origin.size() || p.out_dim != p.h.size() || !p.map)
    throw std::invalid_argument("malformed projection");
  const std::size_t n = g.n();
  if (p.drop_axis) {
    CellKey out{};
    for (std::size_t i = 0, o = 0; i < n; ++i)
      if (i != *p.drop_axis) out[o++] = k[i];
    return {out};
  }
  const unsigned s = p.supersample;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= s;
  double x[kMaxDim], y[kMaxDim];
  std::vector<CellKey> keys;
  keys.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      double frac = (static_cast<double>(r % s) + 0.5) / s;
      r /= s;
      x[i] = g.origin()[i] + (k[i] + frac) * g.h()[i];
    }
    p.map(x, y);
    CellKey out{};
    for (std::size_t i = 0; i < p.out_dim; ++i) {
      double q = std::floor((y[i] - p.origin[i]) / p.h[i]);
      if (!std::isfinite(q) || std::abs(q) > 2e9) throw FlowError(FlowError::Kind::Divergence, "projected cell index overflows");
      out[i] = static_cast<std::int32_t>(q);
    }
    keys.push_back(out);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

GridSet project(const GridSet& g, const Projection& p) {
  std::vector<CellKey> out;
  for (const auto& k : g.cells()) {
    auto keys = project_cell(g, p, k);
    out.insert(out.end(), keys.begin(), keys.end());
  }
  return GridSet(p.out_dim, p.origin, p.h, std::move(out));
}

double rwt_value(double omega, double pi1, double pi2, const LebesguePair& pair) {
  return omega / (std::pow(pi1, to_double(pair.p1().reciprocal())) * std::pow(pi2, to_double(pair.p2().reciprocal())));
}

RwtRatio rwt_ratio(const GridSet& g, const Projection& pi1, const Projection& pi2, const LebesguePair& pair) {
  if (g.empty()) throw std::invalid_argument("restricted weak-type ratio of an empty set");
  RwtRatio r;
  r.omega = g.measure();
  r.pi1 = project(g, pi1).measure();
  r.pi2 = project(g, pi2).measure();
  r.alpha1 = r.omega / r.pi1;
  r.alpha2 = r.omega / r.pi2;
  r.ratio = rwt_value(r.omega, r.pi1, r.pi2, pair);
  return r;
}

}  // namespace radonlp
