// Serial reference vs OpenMP kernel, same inputs and seeds. Run with
// --benchmark_counters_tabular=true; set OMP_NUM_THREADS to vary workers.

#include "radonlp/ccflow/ball.hpp"
#include "radonlp/ccflow/phi.hpp"
#include "radonlp/ccflow/probe.hpp"
#include "radonlp/ccflow/volume.hpp"
#include "radonlp/polytope/generators.hpp"
#include "radonlp/setcomb/sheaf.hpp"
#include "radonlp/vfcalc/word_table.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace radonlp;

namespace {

struct Parabola {
  FieldData fd;
  WordTable table;
  GeneratorSearch search;
  NumericModel model;

  Parabola()
      : fd(spec_to_fields(make_preset("conv-parabola"))),
        table(build_words(fd.x1, fd.x2, 8)),
        search(find_generators(table, fd.base)),
        model(compile_model(fd)) {}
};

const Parabola& parabola() {
  static const Parabola p;
  return p;
}

BallSpec ball_spec(std::size_t samples) {
  return BallSpec{parabola().model.base, 1.0 / 16, 1.0 / 16, 6, samples, 1};
}

template <bool Serial>
void BM_sample_ball(benchmark::State& state) {
  const auto& p = parabola();
  auto spec = ball_spec(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto cloud = Serial ? sample_ball_serial(spec, p.model.x1, p.model.x2) : sample_ball(spec, p.model.x1, p.model.x2);
    benchmark::DoNotOptimize(cloud.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_occupied_cells(benchmark::State& state) {
  const auto& p = parabola();
  auto cloud = sample_ball(ball_spec(static_cast<std::size_t>(state.range(0))), p.model.x1, p.model.x2);
  std::vector<double> origin(3, 0.0), cell{1.0 / 512, 1.0 / 8192, 1.0 / 512};
  for (auto _ : state) {
    auto keys = Serial ? occupied_cells_serial(3, cloud.coords, origin, cell) : occupied_cells(3, cloud.coords, origin, cell);
    benchmark::DoNotOptimize(keys.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_ball_points(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto pts = Serial ? euclidean_ball_points_serial(3, 0.125, n, 7) : euclidean_ball_points(3, 0.125, n, 7);
    benchmark::DoNotOptimize(pts.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_phi_volume_check(benchmark::State& state) {
  const auto& p = parabola();
  auto setup = select_witness(p.search.generators, 1.0 / 32, 1.0 / 32, 8);
  PhiCheckConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto chk = Serial ? phi_volume_check_serial(p.table, setup, p.model.base, cfg)
                      : phi_volume_check(p.table, setup, p.model.base, cfg);
    benchmark::DoNotOptimize(chk.ratio);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_sharpness_probe(benchmark::State& state) {
  const auto& p = parabola();
  ProbeConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  std::vector<double> d0{1.0 / 8, 1.0 / 16};
  auto pair = LebesguePair::from_p1_q(LebesgueExponent::parse("4/3"), LebesgueExponent::parse("4"));
  for (auto _ : state) {
    auto r = Serial ? sharpness_probe_serial(p.model, p.table, p.search, pair, d0, cfg)
                    : sharpness_probe(p.model, p.table, p.search, pair, d0, cfg);
    benchmark::DoNotOptimize(r.spread);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}

template <bool Serial>
void BM_sheaf_refine(benchmark::State& state) {
  const auto& p = parabola();
  auto cloud = sample_ball(ball_spec(static_cast<std::size_t>(state.range(0))), p.model.x1, p.model.x2);
  auto g = GridSet::from_points(3, cloud.coords, {0, 0, 0}, {std::ldexp(1, -9), std::ldexp(1, -13), std::ldexp(1, -9)});
  auto s = make_straightening(p.fd, 2);
  for (auto _ : state) {
    auto r = Serial ? sheaf_refine_serial(g, s) : sheaf_refine(g, s);
    benchmark::DoNotOptimize(r.width);
  }
  state.counters["cells"] = static_cast<double>(g.size());
}

}  // namespace

BENCHMARK_TEMPLATE(BM_sample_ball, true)->Name("sample_ball/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_sample_ball, false)->Name("sample_ball/parallel")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_occupied_cells, true)->Name("occupied_cells/serial")->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_occupied_cells, false)->Name("occupied_cells/parallel")->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ball_points, true)->Name("euclidean_ball_points/serial")->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ball_points, false)->Name("euclidean_ball_points/parallel")->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_phi_volume_check, true)->Name("phi_volume_check/serial")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_phi_volume_check, false)->Name("phi_volume_check/parallel")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_sharpness_probe, true)->Name("sharpness_probe/serial")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_sharpness_probe, false)->Name("sharpness_probe/parallel")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_sheaf_refine, true)->Name("sheaf_refine/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_sheaf_refine, false)->Name("sheaf_refine/parallel")->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
