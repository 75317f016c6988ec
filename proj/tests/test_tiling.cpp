#include <gtest/gtest.h>

#include "support.hpp"

using namespace perdec;
using namespace perdec::testing;

namespace {

Tile t2(std::initializer_list<IntVector> cells) { return Tile(2, std::vector<IntVector>(cells)); }

// Rank over the rationals by fraction-free elimination on 2x2 / 3x3
// minors; a second opinion on `independent`.
bool all_choices_independent(const std::vector<Tile>& tiles) {
  std::vector<std::vector<IntVector>> choices;
  for (const auto& t : tiles) {
    choices.emplace_back();
    for (const auto& c : t.cells()) {
      if (!c.is_zero()) choices.back().push_back(c);
    }
  }
  std::vector<IntVector> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) return rank_rational(pick) == pick.size();
    for (const auto& c : choices[i]) {
      pick.push_back(c);
      const bool ok = rec(i + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace

TEST(Tiling, TilePolynomial) {
  EXPECT_EQ(tile_polynomial(t2({{0, 0}})), LaurentPoly::constant(2, 1));
  EXPECT_EQ(tile_polynomial(t2({{0, 0}, {1, 0}})), LaurentPoly::constant(2, 1) + LaurentPoly::monomial({-1, 0}));
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    std::set<IntVector> cells;
    for (int k = 0; k < 6; ++k) cells.insert(random_vector(rng, 2, -3, 3));
    const Tile D(2, std::vector<IntVector>(cells.begin(), cells.end()));
    EXPECT_EQ(tile_polynomial(D).term_count(), D.size());
  }
  EXPECT_THROW(t2({{0, 0}, {0, 0}}), PreconditionError);
}

TEST(Tiling, VerifyCotiler) {
  const ConfigView xmod2 = PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 1}}),
                                                         [](const IntVector& x) { return Integer(floor_mod(x[0], 2)); });
  const Verdict v = verify_cotiler(t2({{0, 0}, {1, 0}}), xmod2);
  EXPECT_TRUE(v.holds && v.exact);
  for (std::int64_t n = 1; n <= 5; ++n) {
    std::vector<IntVector> cells;
    for (std::int64_t i = 0; i < n; ++i) cells.push_back({i});
    const ConfigView ind = PeriodicConfig::from_function(Lattice(1, {IntVector{n}}),
                                                         [&](const IntVector& x) { return Integer(floor_mod(x[0], n) == 0); });
    EXPECT_TRUE(verify_cotiler(Tile(1, cells), ind).holds);
  }
  EXPECT_FALSE(verify_cotiler(t2({{0, 0}, {1, 0}}), PeriodicConfig::constant(2, 1)).holds);
  EXPECT_THROW(verify_cotiler(t2({{0, 0}}), PeriodicConfig::constant(2, 2)), PreconditionError);
}

TEST(Tiling, VerifyCotilerOnWindowReportsRegion) {
  const Verdict v = verify_cotiler(t2({{0, 0}, {1, 0}}), rasterize(checkerboard(), square(2, 0, 5)));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.exact);
  ASSERT_TRUE(v.region);
  EXPECT_EQ(*v.region, Box({0, 0}, {4, 5}));
}

TEST(Tiling, VerifyCotilerOneDimensionalFiber) {
  // In d = 1 a fiber sum is a periodic sequence.
  const FiberSum ind(1, {make_fiber({0}, {1}, {1, 0, 0})});
  const std::vector<IntVector> cells{{0}, {1}, {2}};
  EXPECT_TRUE(verify_cotiler(Tile(1, cells), ind).holds);
}

TEST(Tiling, Independent) {
  EXPECT_TRUE(independent({t2({{0, 0}, {1, 0}}), t2({{0, 0}, {0, 1}})}).independent);
  const auto r = independent({t2({{0, 0}, {1, 0}, {2, 0}}), t2({{0, 0}, {4, 0}})});
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(r.witness, (std::vector<IntVector>{{1, 0}, {4, 0}}));
  ASSERT_EQ(r.relation.size(), 2u);
  EXPECT_EQ(r.relation[0] * 1 + r.relation[1] * 4, 0);
  EXPECT_FALSE(r.relation[0] == 0 && r.relation[1] == 0);
  EXPECT_TRUE(independent({t2({{0, 0}, {3, -2}})}).independent);
  EXPECT_THROW(independent({t2({{1, 0}})}), PreconditionError);
}

TEST(Tiling, IndependentMatchesSecondOpinion) {
  Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 3));
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(d)));
    std::vector<Tile> tiles;
    for (std::size_t j = 0; j < k; ++j) {
      std::set<IntVector> cells{IntVector(d)};
      const auto n = uniform(rng, 1, 3);
      for (std::int64_t c = 0; c < n; ++c) cells.insert(random_vector(rng, d, -2, 2));
      tiles.emplace_back(d, std::vector<IntVector>(cells.begin(), cells.end()));
    }
    const auto r = independent(tiles);
    EXPECT_EQ(r.independent, all_choices_independent(tiles));
    if (!r.independent) EXPECT_LT(rank_rational(r.witness), r.witness.size());
  }
}

TEST(Tiling, SelectPeriodizer) {
  const std::vector<LaurentPoly> fs{tile_polynomial(t2({{0, 0}, {1, 0}})), tile_polynomial(t2({{0, 0}, {0, 1}}))};
  EXPECT_EQ(select_periodizer(fs, SubspaceBasis::span(2, {IntVector{1, 0}})), fs[1]);
  EXPECT_EQ(select_periodizer(fs, SubspaceBasis::trivial(2)), fs[0]);
  EXPECT_EQ(select_periodizer({fs[1]}, SubspaceBasis::trivial(2)), fs[1]);
  EXPECT_THROW(select_periodizer(fs, SubspaceBasis::full(2)), PreconditionError);
}

TEST(Tiling, CotilerDecompose) {
  const ConfigView c = checkerboard();
  const Box W = square(2, 0, 19);
  const auto two = cotiler_decompose({t2({{0, 0}, {1, 0}}), t2({{0, 0}, {0, 1}})}, c, Bounds{}, W);
  EXPECT_TRUE(agree_on(*two.sum(), *view_field(c), W));
  for (const auto& comp : two.components) EXPECT_EQ(detect_independent_periods(*comp.field, W, 3).size(), 2u);
  const auto one = cotiler_decompose({t2({{0, 0}, {1, 0}})}, c, Bounds{}, W);
  EXPECT_TRUE(agree_on(*one.sum(), *view_field(c), W));
  try {
    cotiler_decompose({t2({{0, 0}, {1, 0}}), t2({{0, 0}, {2, 0}})}, c, Bounds{}, W);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("witness"), std::string::npos);
  }
}
