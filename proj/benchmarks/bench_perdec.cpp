#include <random>

#include <benchmark/benchmark.h>

#include "perdec/perdec.hpp"

using namespace perdec;

namespace {

LaurentPoly dense_poly(std::size_t d, std::int64_t radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(-9, 9);
  LaurentPoly::Terms t;
  const Box b = cube(d, radius, IntVector::zero(d));
  for (const auto& x : b.points()) {
    if (auto c = coef(rng)) t[x] = c;
  }
  return LaurentPoly(d, std::move(t));
}

PeriodicConfig checkerboard() {
  return PeriodicConfig::from_function(Lattice(2, {IntVector{1, 1}, IntVector{1, -1}}),
                                       [](const IntVector& x) { return Integer(floor_mod(x[0] + x[1], 2)); });
}

FiberSum cross() {
  return FiberSum(2, {make_fiber({0, 0}, {1, 0}, {1}), make_fiber({0, 0}, {0, 1}, {1, 0})});
}

}  // namespace

static void BM_PolyMul(benchmark::State& state) {
  const auto r = state.range(0);
  const LaurentPoly f = dense_poly(2, r, 1), g = dense_poly(2, r, 2);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(8);

static void BM_ApplyWindow(benchmark::State& state) {
  const auto n = state.range(0);
  const ConfigView w = rasterize(checkerboard(), cube(2, n, IntVector::zero(2)));
  const LaurentPoly f = dense_poly(2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(apply_poly(f, w));
}
BENCHMARK(BM_ApplyWindow)->Arg(16)->Arg(64);

static void BM_PeriodLattice(benchmark::State& state) {
  const std::int64_t a = state.range(0);
  std::int64_t k = 0;
  const PeriodicConfig c = PeriodicConfig::from_function(Lattice(2, {IntVector{a, 0}, IntVector{1, a}}),
                                                         [&](const IntVector&) { return Integer(k++ % 3); });
  for (auto _ : state) benchmark::DoNotOptimize(period_lattice(c));
}
BENCHMARK(BM_PeriodLattice)->Arg(4)->Arg(12);

static void BM_DecomposeCheckerboard(benchmark::State& state) {
  const ConfigView c = checkerboard();
  const std::vector<LaurentPoly> phis = {difference_poly({1, 1}), difference_poly({1, -1})};
  const Box box = cube(2, state.range(0), IntVector::zero(2));
  for (auto _ : state) {
    const Decomposition d = decompose_product(phis, c, SubspaceBasis::trivial(2));
    benchmark::DoNotOptimize(rasterize_field(*d.sum(), box));
  }
}
BENCHMARK(BM_DecomposeCheckerboard)->Arg(8)->Arg(32);

static void BM_SparseFullCross(benchmark::State& state) {
  const ConfigView c = cross();
  const LaurentPoly f = difference_poly({1, 0}) * difference_poly({0, 1});
  const Box check = cube(2, state.range(0), IntVector::zero(2));
  for (auto _ : state) benchmark::DoNotOptimize(sparse_full(c, f, Bounds{}, check));
}
BENCHMARK(BM_SparseFullCross)->Arg(6)->Arg(20);

static void BM_TileIndependence(benchmark::State& state) {
  const auto n = state.range(0);
  std::vector<IntVector> a, b;
  for (std::int64_t i = 0; i < n; ++i) {
    a.push_back({i, 0});
    b.push_back({0, i});
  }
  const std::vector<Tile> tiles = {Tile(2, a), Tile(2, b)};
  for (auto _ : state) benchmark::DoNotOptimize(independent(tiles));
}
BENCHMARK(BM_TileIndependence)->Arg(4)->Arg(16);
BENCHMARK_MAIN();
