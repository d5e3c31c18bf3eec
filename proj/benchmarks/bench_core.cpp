#include <benchmark/benchmark.h>

#include <cmath>

#include "hkink/continuation.hpp"
#include "hkink/linsolve.hpp"
#include "hkink/monotone.hpp"

using namespace hkink;

namespace {

CylGrid grid_for(int nodes) { return CylGrid::half(1, 10.0, nodes, nodes); }

Field smooth(const CylGrid& g) {
  return Field::sample(g, [&](double r, double t) { return std::exp(-r * r / g.R) * t / g.t_max; });
}

}  // namespace

static void BM_Apply(benchmark::State& state) {
  const CylGrid g = grid_for(static_cast<int>(state.range(0)));
  const CylOperator op(g);
  const Field u = smooth(g);
  for (auto _ : state) benchmark::DoNotOptimize(apply(op, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_Apply)->Arg(129)->Arg(257)->Arg(513);

static void BM_Factor(benchmark::State& state) {
  const CylGrid g = grid_for(static_cast<int>(state.range(0)));
  const CylOperator op(g);
  for (auto _ : state) benchmark::DoNotOptimize(ShiftedSystem(op, 2.0));
}
BENCHMARK(BM_Factor)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const CylGrid g = grid_for(static_cast<int>(state.range(0)));
  const CylOperator op(g);
  SolveConfig cfg;
  cfg.method = state.range(1) ? SolveMethod::pcg : SolveMethod::direct;
  const ShiftedSystem sys(op, 2.0, cfg);
  const Field rhs = Field::sample(g, [](double r, double t) { return -std::exp(-r - t); });
  for (auto _ : state) benchmark::DoNotOptimize(sys.solve(BoundaryData::psi(g.R), rhs));
}
BENCHMARK(BM_Solve)->Args({129, 0})->Args({257, 0})->Args({129, 1})->Unit(benchmark::kMillisecond);

static void BM_ShiftedMap(benchmark::State& state) {
  const CylGrid g = grid_for(static_cast<int>(state.range(0)));
  const ShiftedMap T(g, make_cubic());
  const GapField v = GapField::from_value(Field::sample(g, [&](double, double t) { return t / g.t_max; }));
  for (auto _ : state) benchmark::DoNotOptimize(T(v));
}
BENCHMARK(BM_ShiftedMap)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
