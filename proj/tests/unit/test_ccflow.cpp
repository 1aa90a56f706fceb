#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "presets_fixture.hpp"
#include "random_field.hpp"
#include "radonlp/ccflow/parallel.hpp"
#include "radonlp/ccflow/probe.hpp"
#include "radonlp/ccflow/rng.hpp"
#include "radonlp/ccflow/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace radonlp;
using testsupport::analyze;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

OperatorSpec numeric_preset(const std::string& name) {
  auto s = make_preset(name);
  if (name == "secco") s.param_values["a"] = Rational(0);
  return s;
}

const std::vector<std::string> kNumericPresets = {"conv-parabola", "conv-poly", "xray", "r5-example", "secco",
                                                  "commuting"};

std::vector<double> bracket_at_base(const testsupport::Analysis& a) {
  std::vector<double> out;
  for (const auto& c : a.table.field(Word::parse("12")).at(a.fields.base)) out.push_back(to_double(c.constant_value()));
  return out;
}

VectorField rotation() {
  // -x2 d/dx1 + x1 d/dx2
  return VectorField({RationalFn(-MultiPoly::variable(2, 1)), RationalFn(MultiPoly::variable(2, 0))});
}

}  // namespace

TEST_CASE("flow of a constant field is a shift") {
  auto a = analyze(make_preset("conv-parabola"));
  CompiledField x1(a.fields.x1);  // d/dt
  auto y = flow(x1, {0, 0, 0}, 1.0);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 0.0);
  CHECK(y[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parabola X2 flow matches the closed form") {
  auto a = analyze(make_preset("conv-parabola"));
  CompiledField x2(a.fields.x2);
  const double s = 0.3;
  auto y = flow(x2, {0, 0, 0}, s);
  CHECK(dist(y, {-s, -s * s, s}) < 1e-8);
}

TEST_CASE("flow then reverse flow returns to the start") {
  auto a = analyze(make_preset("xray"));
  auto m = compile_model(a.fields);
  std::vector<double> x{0.1, -0.2, 0.3, 0.05};
  auto y = flow(m.x1, flow(m.x1, x, 0.7), -0.7);
  CHECK(dist(x, y) < 1e-8);
}

TEST_CASE("group law on random polynomial fields") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(-1, 1);
  int done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 2 + trial % 3;
    VectorField f = testsupport::random_field(gen, dim, 3, 4).scaled(RationalFn::constant(dim, Rational(1, 16)));
    CompiledField x(f);
    std::vector<double> p(dim);
    for (auto& v : p) v = unit(gen) / 2;
    double s = unit(gen), t = unit(gen);
    try {
      auto lhs = flow(x, flow(x, p, s), t);
      auto rhs = flow(x, p, s + t);
      CHECK(dist(lhs, rhs) < 1e-7);
      ++done;
    } catch (const FlowError&) {
    }
  }
  CHECK(done >= 90);
}

TEST_CASE("RK4 is fourth order") {
  // The parabola flows are polynomial in time of degree <= 2, which RK4
  // integrates exactly, so the order is measured on a rotation instead.
  auto a = analyze(make_preset("conv-parabola"));
  CHECK(dist(flow(compile_model(a.fields).x2, {0, 0, 0}, 0.3, {.h = 0.1}), {-0.3, -0.09, 0.3}) < 1e-13);

  CompiledField rot(rotation());
  const double t = 2.0;
  std::vector<double> exact{std::cos(t), std::sin(t)};
  double e1 = dist(flow(rot, {1, 0}, t, {.h = 0.1}), exact);
  double e2 = dist(flow(rot, {1, 0}, t, {.h = 0.05}), exact);
  CHECK(e1 / e2 >= 12.0);
  CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("flow errors") {
  CompiledField rot(rotation());
  CHECK_THROWS_AS(flow(rot, {1, 0}, 1.0, {.h = 0}), std::invalid_argument);
  CHECK_THROWS_AS(flow(rot, {1, 0}, 1.0, {.h = 1e-3, .max_steps = 10}), FlowError);

  // x1' = x1^2 blows up at time 1 from x1 = 1.
  VectorField blow({RationalFn(MultiPoly::variable(1, 0).pow(2))});
  CHECK_THROWS_AS(flow(CompiledField(blow), {1.0}, 2.0), FlowError);

  // x1' = 1/x1 is singular at 0.
  VectorField sing({RationalFn(MultiPoly::constant(1, Rational(1)), MultiPoly::variable(1, 0))});
  try {
    flow(CompiledField(sing), {0.0}, 0.1);
    FAIL("expected a singular flow");
  } catch (const FlowError& e) {
    CHECK(e.kind == FlowError::Kind::Singular);
  }
}

TEST_CASE("commutator defect examples") {
  {
    auto a = analyze(make_preset("conv-parabola"));
    auto m = compile_model(a.fields);
    auto d = commutator_defect(m.x1, m.x2, m.base, 1e-3, 1e-3);
    CHECK(dist(d, {0, -2, 0}) < 0.02 * 2);
  }
  {
    auto a = analyze(make_preset("commuting"));
    auto m = compile_model(a.fields);
    CHECK(norm(commutator_defect(m.x1, m.x2, m.base, 1e-3, 1e-3)) < 1e-8);
  }
  {
    auto a = analyze(numeric_preset("secco"));
    auto m = compile_model(a.fields);
    auto want = bracket_at_base(a);
    CHECK(want[1] == 2.0);
    CHECK(want[2] == 0.0);
    CHECK(dist(commutator_defect(m.x1, m.x2, m.base, 1e-3, 1e-3), want) < 0.01 * norm(want));
  }
}

TEST_CASE("commutator defect converges to the symbolic bracket on every preset") {
  for (const auto& name : kNumericPresets) {
    CAPTURE(name);
    auto a = analyze(numeric_preset(name));
    auto m = compile_model(a.fields);
    auto want = bracket_at_base(a);
    auto err = [&](double t) { return dist(commutator_defect(m.x1, m.x2, m.base, t, t), want); };
    double e1 = err(1e-3), e2 = err(5e-4);
    if (norm(want) == 0) {
      CHECK(e1 < 1e-8);
    } else {
      CHECK(e1 / norm(want) < 0.05);
      CHECK((e2 < e1 || e2 < 1e-8));
    }
  }
}

TEST_CASE("numerical work needs specialized parameters") {
  auto a = analyze(make_preset("secco"));
  CHECK_THROWS_AS(compile_model(a.fields), SpecError);
}

TEST_CASE("degenerate radii give the base point") {
  auto a = analyze(make_preset("xray"));
  auto m = compile_model(a.fields);
  BallSpec spec{m.base, 0.0, 0.0, 6, 2000, 3};
  auto cloud = sample_ball(spec, m.x1, m.x2);
  REQUIRE(cloud.size() == 2000);
  for (double v : cloud.coords) CHECK(v == 0.0);
}

TEST_CASE("commuting translations stay in the l1 ball") {
  auto a = analyze(make_preset("commuting"));
  auto m = compile_model(a.fields);
  const double d = 0.1;
  BallSpec spec{{0.5, -0.25}, d, d, 6, 20000, 5};
  auto cloud = sample_ball(spec, m.x1, m.x2);
  double worst = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    worst = std::max(worst, std::abs(p[0] - 0.5) + std::abs(p[1] + 0.25));
  }
  CHECK(worst <= d * (1 + 1e-12));
  CHECK(worst > 0.9 * d);
}

TEST_CASE("parabola ball extents scale as delta and delta squared") {
  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  const double d = 1.0 / 32;
  auto cloud = sample_ball({m.base, d, d, 6, 100000, 9}, m.x1, m.x2);
  std::vector<double> lo(3, 1e9), hi(3, -1e9);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], cloud.point(i)[k]);
      hi[k] = std::max(hi[k], cloud.point(i)[k]);
    }
  double t_extent = hi[2] - lo[2], x1_extent = hi[0] - lo[0], x2_extent = hi[1] - lo[1];
  CHECK(t_extent > d / 2);
  CHECK(t_extent <= 2 * d);
  CHECK(x1_extent > d / 2);
  CHECK(x1_extent <= 2 * d);
  CHECK(x2_extent > d * d / 16);
  CHECK(x2_extent < 4 * d * d);
}

TEST_CASE("sampling is deterministic and independent of the worker count") {
  auto a = analyze(make_preset("xray"));
  auto m = compile_model(a.fields);
  BallSpec spec{m.base, 1.0 / 16, 1.0 / 16, 6, 5000, 77};
  auto serial = sample_ball_serial(spec, m.x1, m.x2);
  int before = thread_count();
  set_thread_count(3);
  auto par = sample_ball(spec, m.x1, m.x2);
  set_thread_count(before);
  auto again = sample_ball(spec, m.x1, m.x2);
  CHECK(serial.coords == par.coords);
  CHECK(serial.coords == again.coords);
  auto v1 = estimate_volume_adaptive(4, serial.coords, 12);
  auto v2 = estimate_volume_adaptive(4, par.coords, 12);
  CHECK(v1.volume == v2.volume);
  CHECK(v1.occupied == v2.occupied);

  spec.seed = 78;
  CHECK(sample_ball(spec, m.x1, m.x2).coords != serial.coords);
}

TEST_CASE("sampling drops failed flows and aborts above one percent") {
  VectorField sing({RationalFn(MultiPoly::constant(2, Rational(1)), MultiPoly::variable(2, 0)),
                    RationalFn::constant(2, Rational(0))});
  VectorField shift = VectorField::coordinate(2, 2, 1);
  BallSpec spec{{0.0, 0.0}, 0.5, 0.5, 4, 500, 1};
  CHECK_THROWS_AS(sample_ball(spec, CompiledField(sing), CompiledField(shift)), FlowError);
  spec.k_max = 1;
  CHECK_THROWS_AS(sample_ball(spec, CompiledField(shift), CompiledField(shift)), std::invalid_argument);
  spec.k_max = 4;
  spec.delta1 = 1.0;
  CHECK_THROWS_AS(sample_ball(spec, CompiledField(shift), CompiledField(shift)), std::invalid_argument);
}

TEST_CASE("occupancy volume examples") {
  Rng rng(4);
  PointCloud square{2, {}, 0};
  for (int i = 0; i < 1000000; ++i) {
    square.coords.push_back(rng.uniform());
    square.coords.push_back(rng.uniform());
  }
  auto e = estimate_volume(square, 0.05);
  CHECK(e.volume == doctest::Approx(1.0).epsilon(0.05));
  CHECK(e.occupied == 400);

  PointCloud one{3, {0.3, 0.1, -0.2}, 0};
  auto s = estimate_volume(one, 0.1);
  CHECK(s.occupied == 1);
  CHECK(s.volume == doctest::Approx(1e-3));

  PointCloud empty{3, {}, 0};
  CHECK_THROWS_AS(estimate_volume(empty, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_volume(one, 0.0), std::invalid_argument);
}

TEST_CASE("occupancy never decreases as points are added") {
  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  auto cloud = sample_ball({m.base, 0.1, 0.1, 6, 20000, 2}, m.x1, m.x2);
  std::size_t prev = 0;
  for (std::size_t count : {100, 1000, 5000, 20000}) {
    std::span<const double> prefix(cloud.coords.data(), count * 3);
    auto e = estimate_volume(3, prefix, std::vector<double>{0.01, 0.001, 0.01});
    CHECK(e.occupied >= prev);
    prev = e.occupied;
  }
}

TEST_CASE("parallel and serial cell sets agree") {
  Rng rng(8);
  std::vector<double> pts(3 * 50000);
  for (auto& v : pts) v = rng.normal();
  std::vector<double> origin{0.1, 0.2, 0.3}, cell{0.05, 0.1, 0.2};
  CHECK(occupied_cells(3, pts, origin, cell) == occupied_cells_serial(3, pts, origin, cell));
}

TEST_CASE("Phi, probe and ball-point kernels match their serial references") {
  int before = thread_count();
  set_thread_count(3);
  auto pts = euclidean_ball_points(3, 0.5, 5000, 4);
  CHECK(pts == euclidean_ball_points_serial(3, 0.5, 5000, 4));

  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  auto setup = select_witness(a.search.generators, 1.0 / 32, 1.0 / 32, 8);
  PhiCheckConfig pc;
  pc.samples = 2500;
  auto par = phi_volume_check(a.table, setup, m.base, pc);
  auto ser = phi_volume_check_serial(a.table, setup, m.base, pc);
  CHECK(par.ratio == ser.ratio);
  CHECK(par.min_abs_det == ser.min_abs_det);

  ProbeConfig cfg;
  cfg.samples = 5000;
  std::vector<double> d0{1.0 / 8, 1.0 / 16, 1.0 / 32};
  auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse("4/3"), LebesgueExponent::parse("4"));
  auto p1 = sharpness_probe(m, a.table, a.search, pair, d0, cfg);
  auto p2 = sharpness_probe_serial(m, a.table, a.search, pair, d0, cfg);
  set_thread_count(before);
  REQUIRE(p1.rows.size() == p2.rows.size());
  for (std::size_t i = 0; i < p1.rows.size(); ++i) {
    CHECK(p1.rows[i].ratio == p2.rows[i].ratio);
    CHECK(p1.rows[i].omega.occupied == p2.rows[i].omega.occupied);
  }
}

TEST_CASE("principal frame follows a rotated rectangle") {
  Rng rng(5);
  const double c = std::cos(0.5), s = std::sin(0.5);
  std::vector<double> pts;
  for (int i = 0; i < 200000; ++i) {
    double u = rng.uniform(), v = 0.1 * rng.uniform();
    pts.push_back(c * u - s * v);
    pts.push_back(s * u + c * v);
  }
  auto e = estimate_volume_adaptive(2, pts, 100, Frame::Principal);
  CHECK(e.volume == doctest::Approx(0.1).epsilon(0.05));
  CHECK_THROWS_AS(estimate_volume_adaptive(2, std::vector<double>{1, 1, 1, 2}, 10), std::domain_error);
}

TEST_CASE("parabola ball volume follows delta^4 after calibration") {
  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  auto vol = [&](double d) {
    auto cloud = sample_ball({m.base, d, d, 6, 50000, 12}, m.x1, m.x2);
    return estimate_volume_adaptive(3, cloud.coords, default_resolution(cloud.size(), 3)).volume;
  };
  const double c = vol(1.0 / 8) / std::pow(1.0 / 8, 4);
  const double v = vol(1.0 / 16), want = c * std::pow(1.0 / 16, 4);
  CHECK(v < 3 * want);
  CHECK(v > want / 3);
}

TEST_CASE("smaller balls sit inside the occupancy region of larger ones") {
  for (const std::string name : {"conv-parabola", "xray"}) {
    CAPTURE(name);
    auto a = analyze(make_preset(name));
    auto m = compile_model(a.fields);
    const std::size_t n = m.n;
    const double d = 1.0 / 32;
    auto small = sample_ball({m.base, d, d, 6, 20000, 21}, m.x1, m.x2);
    auto big = sample_ball({m.base, 2 * d, 2 * d, 6, 100000, 21}, m.x1, m.x2);
    std::vector<double> lo(n, 1e9), hi(n, -1e9);
    for (std::size_t i = 0; i < big.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], big.point(i)[k]);
        hi[k] = std::max(hi[k], big.point(i)[k]);
      }
    std::vector<double> cell(n), origin(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) cell[k] = (hi[k] - lo[k]) / 16;
    auto region = occupied_cells(n, big.coords, origin, cell);
    auto probe = occupied_cells_serial(n, small.coords, origin, cell);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
      auto key = occupied_cells_serial(n, small.point(i), origin, cell)[0];
      inside += std::binary_search(region.begin(), region.end(), key);
    }
    CHECK(static_cast<double>(inside) >= 0.99 * static_cast<double>(small.size()));
    CHECK(!probe.empty());
  }
}

TEST_CASE("ball scaling slopes") {
  std::vector<double> ds{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  ScalingConfig cfg;
  cfg.samples = 50000;
  struct Case {
    const char* name;
    double slope, tol;
  };
  for (auto c : {Case{"conv-parabola", 4.0, 0.3}, Case{"xray", 7.0, 0.4}, Case{"commuting", 2.0, 0.1}}) {
    CAPTURE(c.name);
    auto a = analyze(make_preset(c.name));
    auto st = ball_scaling_study(compile_model(a.fields), a.degrees(), ds, cfg);
    CHECK(st.predicted == c.slope);
    CHECK(std::abs(st.slope - c.slope) <= c.tol);
    CHECK(st.rows.size() == 4);
  }
  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  CHECK_THROWS_AS(ball_scaling_study(m, a.degrees(), std::vector<double>{0.1, 0.05}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(ball_scaling_study(m, a.degrees(), std::vector<double>{0.1, 0.05, 0.01}, cfg),
                  std::invalid_argument);
}

TEST_CASE("dominant generator depends on the radius relation") {
  auto a = analyze(make_preset("r5-example"));
  auto m = compile_model(a.fields);
  ScalingConfig cfg;
  cfg.samples = 30000;
  cfg.relation = 3.0;  // delta2 = delta1^3 favors small d2
  auto st = ball_scaling_study(m, a.degrees(), std::vector<double>{0.25, 0.125, 0.0625}, cfg);
  CHECK(st.dominant == Degree{7, 4});
  CHECK(st.predicted == 19.0);
}

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> x{1, 2, 3, 4}, y{1, 3, 5, 7};
  auto [slope, icpt] = fit_line(x, y);
  CHECK(slope == doctest::Approx(2.0));
  CHECK(icpt == doctest::Approx(-1.0));
}

TEST_CASE("Phi at t = 0 is the base point") {
  auto a = analyze(make_preset("r5-example"));
  auto setup = select_witness(a.search.generators, 1.0 / 32, 1.0 / 32, 8);
  std::vector<double> x0{0.25, -0.5, 0.125, 0, 1};
  auto phi = make_phi(a.table, setup, x0, 1.0);
  CHECK(phi(std::vector<double>(5, 0.0)) == x0);
}

TEST_CASE("Phi on the parabola matches its closed form") {
  // X12 = -2 d/dx2 is constant, so exp(c1 X1 + c2 X2 + c3 X12)(0) is
  // (-c2, -c2 (c1 + c2) - 2 c3, c1 + c2).
  auto a = analyze(make_preset("conv-parabola"));
  const double d = 1.0 / 32, K = 8;
  auto setup = select_witness(a.search.generators, d, d, K);
  REQUIRE(setup.witness.size() == 3);
  auto phi = make_phi(a.table, setup, std::vector<double>(3, 0.0), 1.0);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> t{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    std::vector<double> c(3);
    for (std::size_t j = 0; j < 3; ++j) {
      Degree dg = setup.witness[j].degree();
      c[j] = t[j] * std::pow(K * d, dg.d1 + dg.d2) / K;
    }
    std::vector<double> want{-c[1], -c[1] * (c[0] + c[1]) - 2 * c[2], c[0] + c[1]};
    CHECK(dist(phi(t), want) < 1e-14);
  }
}

TEST_CASE("Phi volume ratio") {
  {
    auto a = analyze(make_preset("commuting"));
    auto setup = select_witness(a.search.generators, 1.0 / 32, 1.0 / 32, 8);
    auto chk = phi_volume_check(a.table, setup, compile_model(a.fields).base);
    CHECK(std::abs(chk.ratio - 1.0) < 1e-6);
  }
  for (const auto& name : kNumericPresets) {
    CAPTURE(name);
    auto a = analyze(numeric_preset(name));
    auto setup = select_witness(a.search.generators, 1.0 / 32, 1.0 / 32, 8);
    PhiCheckConfig cfg;
    cfg.samples = 300;
    auto chk = phi_volume_check(a.table, setup, compile_model(a.fields).base, cfg);
    CHECK(chk.in_band);
    CHECK(chk.warnings.empty());
  }
  auto a = analyze(make_preset("conv-parabola"));
  CHECK_THROWS_AS(select_witness(a.search.generators, 0.1, 0.1, 0.5), std::invalid_argument);
}

TEST_CASE("separating half-plane LP") {
  NewtonPolytope parabola(std::vector<Degree>{{2, 2}});
  auto h = separating_half_plane(parabola, {Rational(3, 2), Rational(3, 2)}, Rational(1, 16));
  CHECK(h.a1 == Rational(1, 4));
  CHECK(h.a2 == Rational(1, 4));
  CHECK(h.at_c == Rational(3, 4));
  auto interior = separating_half_plane(parabola, {Rational(4), Rational(3)}, Rational(1, 16));
  CHECK(interior.a1 == Rational(1, 16));
  CHECK(interior.a2 == Rational(7, 16));

  // Grid oracle over a in (1/64) Z.
  NewtonPolytope r5(std::vector<Degree>{{4, 7}, {5, 5}, {7, 4}});
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    QPoint c{Rational(static_cast<long>(gen() % 40), 4), Rational(static_cast<long>(gen() % 40), 4)};
    auto lp = separating_half_plane(r5, c, Rational(1, 16));
    for (const auto& v : r5.vertices()) CHECK(lp.a1 * v.d1 + lp.a2 * v.d2 >= 1);
    Rational grid_best(1000);
    for (int i = 4; i <= 60; ++i)
      for (int j = 4; j <= 60; ++j) {
        Rational a1(i, 64), a2(j, 64);
        bool ok = true;
        for (const auto& v : r5.vertices()) ok = ok && a1 * v.d1 + a2 * v.d2 >= 1;
        if (ok) grid_best = std::min<Rational>(grid_best, a1 * c.x + a2 * c.y);
      }
    CHECK(lp.at_c <= grid_best);
  }
}

TEST_CASE("sharpness probe on the parabola") {
  auto a = analyze(make_preset("conv-parabola"));
  auto m = compile_model(a.fields);
  std::vector<double> d0{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  ProbeConfig cfg;
  cfg.samples = 40000;
  auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse("4/3"), LebesgueExponent::parse("4"));
  auto ext = sharpness_probe(m, a.table, a.search, pair, d0, cfg);
  CHECK(ext.membership == Membership::Exterior);
  CHECK(ext.strictly_increasing);
  // Exact dilation: R scales as delta0^{-1/8}.
  for (std::size_t i = 1; i < ext.rows.size(); ++i)
    CHECK(ext.rows[i].ratio / ext.rows[i - 1].ratio == doctest::Approx(std::pow(2.0, 0.125)).epsilon(0.01));

  auto inner = LebesguePair::from_p1_q(LebesgueExponent::parse("3/2"), LebesgueExponent::parse("2"));
  CHECK_THROWS_AS(sharpness_probe(m, a.table, a.search, inner, d0, cfg), NotExterior);
  cfg.allow_interior = true;
  auto ctl = sharpness_probe(m, a.table, a.search, inner, d0, cfg);
  CHECK(ctl.membership == Membership::Interior);
  CHECK(ctl.spread < 2.0);

  auto trivial = LebesguePair::from_p1_q(LebesgueExponent::parse("2"), LebesgueExponent::parse("2"));
  try {
    sharpness_probe(m, a.table, a.search, trivial, d0, cfg);
    FAIL("expected the trivial regime");
  } catch (const TrivialRegime& e) {
    CHECK(std::string(e.what()).find("trivially bounded regime") != std::string::npos);
  }
}

TEST_CASE("occupancy refinement gives up at the cap") {
  std::vector<double> pts{0, 0, 1, 1, 0.5, 0.25};
  CHECK_THROWS_AS(resolved_volume(2, pts, 4, 1000, 64, Frame::Axis), std::runtime_error);
  auto e = resolved_volume(2, pts, 4, 3, 64, Frame::Axis);
  CHECK(e.occupied == 3);
}
