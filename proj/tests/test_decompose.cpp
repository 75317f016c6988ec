#include <gtest/gtest.h>

#include "support.hpp"

using namespace perdec;
using namespace perdec::testing;

namespace {

const SubspaceBasis kTrivial = SubspaceBasis::trivial(2);

PeriodicConfig x2_plus_y3() {
  return PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 3}}), [](const IntVector& x) {
    return Integer(floor_mod(x[0], 2) + floor_mod(x[1], 3));
  });
}

void expect_valid(const Decomposition& dec, const Field& c, const Box& W) {
  EXPECT_TRUE(agree_on(*dec.sum(), c, W));
  for (const auto& comp : dec.components) {
    EXPECT_TRUE(annihilated_on(comp.annihilator, *comp.field, W).holds) << comp.annihilator.to_string();
  }
}

LaurentPoly tile_e1() { return LaurentPoly::constant(2, 1) + LaurentPoly::monomial({-1, 0}); }
LaurentPoly tile_e2() { return LaurentPoly::constant(2, 1) + LaurentPoly::monomial({0, -1}); }

}  // namespace

TEST(Transfer, ConstantSourceGivesLinearFunction) {
  const auto sol = solve_transfer(difference_poly({1, 0}), difference_poly({0, 1}), PeriodicConfig::constant(2, 1),
                                  kTrivial);
  EXPECT_EQ(sol.band, 1u);
  for (const auto& x : square(2, -6, 6).points()) {
    // With (f c)(u) = sum f_i c(u - u_i): c(x - e1) - c(x) = 1 and c(0, y) = 0.
    EXPECT_EQ(sol.evaluator->value(x), Rational(-x[0]));
  }
}

TEST(Transfer, ZeroSourceGivesZero) {
  const auto sol = solve_transfer(difference_poly({1, 2}), difference_poly({1, -1}), FiberSum(2), kTrivial);
  for (const auto& x : square(2, -8, 8).points()) EXPECT_EQ(sol.evaluator->value(x), 0);
}

TEST(Transfer, IntegerValuesForDifferencePolynomials) {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const IntVector v2{1, -1};
    std::vector<PeriodicFiber> fibers;
    for (int k = 0; k < 3; ++k) fibers.push_back(random_fiber(rng, v2, 1, 5));
    const FiberSum cprime(2, fibers);
    const auto sol = solve_transfer(difference_poly({2, 1}), difference_poly(v2), cprime, kTrivial);
    for (const auto& x : square(2, -10, 10).points()) {
      const Rational v = sol.evaluator->value(x);
      EXPECT_EQ(v.get_den(), 1);
      EXPECT_EQ(sol.evaluator->value(x - IntVector{2, 1}) - v, Rational(cprime.at(x)));
      EXPECT_EQ(sol.evaluator->value(x + v2), v);
    }
  }
}

TEST(Transfer, RationalCoefficients) {
  // phi = 2 - 3 X1: the recurrence divides by 2 and 3.
  const LaurentPoly phi = LaurentPoly::constant(2, 2) - LaurentPoly::monomial({1, 0}, 3);
  const auto sol = solve_transfer(phi, difference_poly({0, 1}), PeriodicConfig::constant(2, 1), kTrivial);
  bool fractional = false;
  for (const auto& x : square(2, -5, 5).points()) {
    const Rational lhs = 2 * sol.evaluator->value(x) - 3 * sol.evaluator->value(x - IntVector{1, 0});
    EXPECT_EQ(lhs, 1);
    fractional = fractional || sol.evaluator->value(x).get_den() != 1;
  }
  EXPECT_TRUE(fractional);
}

TEST(Transfer, Preconditions) {
  const ConfigView one = PeriodicConfig::constant(2, 1);
  EXPECT_THROW(solve_transfer(difference_poly({1, 0}), difference_poly({2, 0}), one, kTrivial), PreconditionError);
  EXPECT_THROW(solve_transfer(difference_poly({1, 0}), difference_poly({0, 1}), one, SubspaceBasis::span(2, {IntVector{1, 1}})),
               PreconditionError);
  EXPECT_THROW(solve_transfer(difference_poly({1, 0}), difference_poly({0, 1}), x2_plus_y3(), kTrivial), PreconditionError);
}

TEST(DecomposeProduct, SingleFactorIsIdentity) {
  const ConfigView c = PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 1}}),
                                                     [](const IntVector& x) { return Integer(floor_mod(x[0], 2)); });
  const auto dec = decompose_product({difference_poly({2, 0})}, c, kTrivial);
  ASSERT_EQ(dec.components.size(), 1u);
  EXPECT_TRUE(agree_on(*dec.components[0].field, *view_field(c), square(2, -5, 5)));
}

TEST(DecomposeProduct, SumOfAxisFunctions) {
  const ConfigView c = x2_plus_y3();
  const auto dec = decompose_product({difference_poly({2, 0}), difference_poly({0, 3})}, c, kTrivial);
  ASSERT_EQ(dec.components.size(), 2u);
  expect_valid(dec, *view_field(c), square(2, 0, 29));
}

TEST(DecomposeProduct, CheckerboardDiagonals) {
  const ConfigView c = checkerboard();
  const auto dec = decompose_product({difference_poly({1, 1}), difference_poly({1, -1})}, c, kTrivial);
  expect_valid(dec, *view_field(c), square(2, -10, 10));
}

TEST(DecomposeProduct, RejectsNonAnnihilator) {
  EXPECT_THROW(decompose_product({difference_poly({1, 0}), difference_poly({0, 1})}, ConfigView(checkerboard()), kTrivial),
               PreconditionError);
}

TEST(Reduce, ParallelPairMerges) {
  const Subject e = Subject::of(PeriodicConfig::constant(2, 1));
  const auto dp = reduce_annihilator({{IntVector{1, 0}, IntVector{2, 0}}}, e, kTrivial, {}, 32);
  ASSERT_EQ(dp.vectors.size(), 1u);
  EXPECT_EQ(primitive(dp.vectors[0]), (IntVector{1, 0}));
  EXPECT_TRUE(e.annihilates(dp.expand(2)));
}

TEST(Reduce, FixedPoint) {
  const Subject e = Subject::of(x2_plus_y3());
  const DifferenceProduct dp{{IntVector{2, 0}, IntVector{0, 3}}};
  EXPECT_EQ(reduce_annihilator(dp, e, kTrivial, {}, 32), dp);
}

TEST(Reduce, SpanCollisionMerges) {
  const auto V = SubspaceBasis::span(2, {IntVector{0, 1}});
  const Subject e = Subject::of(PeriodicConfig::constant(2, 1));
  const auto dp = reduce_annihilator({{IntVector{1, 0}, IntVector{1, 1}}}, e, V, {IntVector{0, 1}}, 32);
  ASSERT_EQ(dp.vectors.size(), 1u);
  EXPECT_EQ(primitive(dp.vectors[0]), (IntVector{1, 0}));
}

TEST(Reduce, ParallelPairWithoutSmallPeriodIsInconclusive) {
  // A function of x with period 5 along e1: no period <= 3.
  const ConfigView c = PeriodicConfig::from_function(Lattice(2, {IntVector{5, 0}, IntVector{0, 1}}),
                                                     [](const IntVector& x) { return Integer(floor_mod(x[0], 5)); });
  EXPECT_THROW(reduce_annihilator({{IntVector{5, 0}, IntVector{10, 0}}}, Subject::of(c), kTrivial, {}, 3),
               InconclusiveError);
}

TEST(FromPeriodizer, SupportMustMeetVAtOrigin) {
  const auto V = SubspaceBasis::span(2, {IntVector{0, 1}});
  EXPECT_THROW(annihilator_from_periodizer(difference_poly({0, 1}), checkerboard(), V, 8), PreconditionError);
}

TEST(FromPeriodizer, CheckerboardAlongE1) {
  const auto V = SubspaceBasis::span(2, {IntVector{0, 1}});
  const auto f = annihilator_from_periodizer(difference_poly({1, 0}), checkerboard(), V, 8);
  EXPECT_EQ(f, difference_poly({1, 1}) * difference_poly({1, 0}));
  EXPECT_EQ(support_in_subspace(f, V), (std::set<IntVector>{{0, 0}}));
  EXPECT_TRUE(is_annihilated(f, checkerboard()).holds);
}

TEST(FromPeriodizer, SkipsCollidingMultiples) {
  // g = 1 + X2^-1 with V = span{(2,0)}: n = 1 cancels the origin.
  const auto V = SubspaceBasis::span(2, {IntVector{2, 0}});
  const auto f = annihilator_from_periodizer(tile_e2(), checkerboard(), V, 8);
  EXPECT_EQ(support_in_subspace(f, V), (std::set<IntVector>{{0, 0}}));
  EXPECT_TRUE(is_annihilated(f, checkerboard()).holds);
}

TEST(FromPeriodizer, AnnihilatorAndTrivialV) {
  const auto g = difference_poly({2, 0});
  const auto f = annihilator_from_periodizer(g, checkerboard(), kTrivial, 8);
  EXPECT_TRUE(is_annihilated(f, checkerboard()).holds);
  // tile_e1 c = 1, whose first Hermite period is e1.
  const auto h = annihilator_from_periodizer(tile_e1(), checkerboard(), kTrivial, 8);
  EXPECT_EQ(h, difference_poly({1, 0}) * tile_e1());
}

TEST(Search, Examples) {
  EXPECT_EQ(search_difference_annihilator(checkerboard(), tile_e1(), 32), (DifferenceProduct{{IntVector{2, 0}}}));
  EXPECT_EQ(search_difference_annihilator(PeriodicConfig::constant(2, 1), difference_poly({1, 0}), 32),
            (DifferenceProduct{{IntVector{1, 0}}}));
}

TEST(Search, StronglyPeriodicNeedsOneFactor) {
  // Every direction has a period here, so one factor always suffices.
  const auto f = difference_poly({2, 0}) * difference_poly({0, 3});
  const auto dp = search_difference_annihilator(x2_plus_y3(), f, 32);
  EXPECT_EQ(dp, (DifferenceProduct{{IntVector{0, 3}}}));
}

TEST(Search, FiberSumNeedsBothFactors) {
  const FiberSum c(2, {make_fiber({0, 0}, {1, 0}, {1, 0}), make_fiber({0, 0}, {0, 1}, {1, 1, 0})});
  const auto f = difference_poly({2, 0}) * difference_poly({0, 3});
  const auto dp = search_difference_annihilator(c, f, 32);
  EXPECT_EQ(dp, (DifferenceProduct{{IntVector{0, 3}, IntVector{2, 0}}}));
}

TEST(Search, ExhaustionIsInconclusive) {
  const ConfigView w = rasterize(x2_plus_y3(), square(2, 0, 5));
  EXPECT_THROW(search_difference_annihilator(w, difference_poly({1, 1}), 1), InconclusiveError);
}

TEST(BuildPeriodizer, Examples) {
  EXPECT_EQ(build_periodizer({{IntVector{1, 0}}}, kTrivial, 8), difference_poly({1, 0}));
  EXPECT_EQ(build_periodizer({{IntVector{1, 0}}, {IntVector{0, 1}}}, kTrivial, 8),
            difference_poly({0, 1}) * difference_poly({1, 0}));
  const auto V = SubspaceBasis::span(2, {IntVector{-1, 1}});
  const auto f = build_periodizer({{IntVector{1, 0}}, {IntVector{0, 1}}}, V, 8);
  EXPECT_EQ(support_in_subspace(f, V), (std::set<IntVector>{{0, 0}}));
  EXPECT_THROW(build_periodizer({{IntVector{-1, 1}}}, V, 8), PreconditionError);
}

TEST(KPeriodic, LevelOneIsPlainDecomposition) {
  const ConfigView c = checkerboard();
  const auto dec = k_periodic_decompose(c, 1, [](const SubspaceBasis&) { return tile_e1(); }, Bounds{}, square(2, 0, 19));
  expect_valid(dec, *view_field(c), square(2, 0, 19));
}

TEST(KPeriodic, CheckerboardWithTwoTiles) {
  const ConfigView c = checkerboard();
  const std::vector<LaurentPoly> fs{tile_e1(), tile_e2()};
  const Box W = square(2, 0, 19);
  const auto dec = k_periodic_decompose(c, 2, [&](const SubspaceBasis& V) { return select_periodizer(fs, V); }, Bounds{}, W);
  EXPECT_TRUE(agree_on(*dec.sum(), *view_field(c), W));
  for (const auto& comp : dec.components) {
    EXPECT_EQ(comp.periods.size(), 2u);
    EXPECT_EQ(detect_independent_periods(*comp.field, W, 3).size(), 2u);
  }
}

TEST(KPeriodic, StronglyPeriodicInput) {
  const ConfigView c = x2_plus_y3();
  const std::vector<LaurentPoly> fs{difference_poly({2, 0}), difference_poly({0, 3})};
  const Box W = square(2, 0, 17);
  const auto dec = k_periodic_decompose(c, 2, [&](const SubspaceBasis& V) { return select_periodizer(fs, V); }, Bounds{}, W);
  EXPECT_TRUE(agree_on(*dec.sum(), *view_field(c), W));
  for (const auto& comp : dec.components) EXPECT_EQ(detect_independent_periods(*comp.field, W, 6).size(), 2u);
}
