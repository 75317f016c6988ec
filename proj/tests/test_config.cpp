#include <gtest/gtest.h>

#include "support.hpp"

using namespace perdec;
using namespace perdec::testing;

namespace {

PeriodicConfig x_mod2() {
  return PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 1}}),
                                       [](const IntVector& x) { return Integer(floor_mod(x[0], 2)); });
}

}  // namespace

TEST(Config, Evaluate) {
  EXPECT_EQ(evaluate(PeriodicConfig::constant(2, 1), {17, -3}), 1);
  const FiberSum f(2, {make_fiber({0, 0}, {1, 0}, {3, 5})});
  EXPECT_EQ(evaluate(f, {4, 0}), 3);
  EXPECT_EQ(evaluate(f, {4, 1}), 0);
  EXPECT_EQ(evaluate(checkerboard(), {3, 2}), 1);
  const WindowConfig w = WindowConfig::zeros(square(2, 0, 2));
  EXPECT_THROW(evaluate(w, {3, 0}), DomainError);
}

TEST(Config, Translate) {
  Rng rng(31);
  const ConfigView c = random_periodic(rng, 2, 16);
  EXPECT_EQ(translate(c, {0, 0}), c);
  const IntVector t{3, -7};
  EXPECT_EQ(translate(translate(c, t), -t), c);
  const ConfigView w = WindowConfig::zeros(square(2, 0, 2));
  EXPECT_EQ(translate(w, {1, 1}).window().box(), square(2, 1, 3));
  const ConfigView fs = FiberSum(2, {make_fiber({0, 0}, {1, 1}, {1, 2, 3})});
  for (const auto& x : square(2, -4, 4).points()) EXPECT_EQ(evaluate(translate(fs, t), x), evaluate(fs, x - t));
}

TEST(Config, ApplyPolyExamples) {
  const ConfigView cb = checkerboard();
  EXPECT_TRUE(apply_poly(difference_poly({1, 1}), cb).periodic().is_zero());
  EXPECT_EQ(apply_poly(LaurentPoly::constant(2, 1), cb), cb);
  const LaurentPoly tile = LaurentPoly::constant(2, 1) + LaurentPoly::monomial({-1, 0});
  const ConfigView one = apply_poly(tile, x_mod2());
  for (const auto& x : square(2, -3, 3).points()) EXPECT_EQ(evaluate(one, x), 1);
}

TEST(Config, ApplyPolyErodesWindows) {
  const WindowConfig w = WindowConfig::zeros(Box({0, 0}, {4, 4}));
  const ConfigView fc = apply_poly(difference_poly({2, 0}), w);
  EXPECT_EQ(fc.window().box(), Box({2, 0}, {4, 4}));
  EXPECT_THROW(apply_poly(difference_poly({5, 0}), w), DomainError);
  // Without the origin in the support the domain moves off the input box.
  const WindowConfig v = WindowConfig::from_function(Box({0, 0}, {4, 4}), [](const IntVector& x) { return x[1]; });
  const LaurentPoly shift(2, {{IntVector{0, -1}, 1}});
  const ConfigView sv = apply_poly(shift, v);
  EXPECT_EQ(sv.window().box(), Box({0, -1}, {4, 3}));
  EXPECT_EQ(sv.window().at({2, -1}), 0);
}

TEST(Config, ActionIsAssociativeAndCommutesWithTranslation) {
  Rng rng(32);
  for (int i = 0; i < 40; ++i) {
    const ConfigView c = random_periodic(rng, 2, 16);
    const auto f = random_poly(rng, 2, 3, 2), g = random_poly(rng, 2, 3, 2);
    EXPECT_EQ(apply_poly(f * g, c), apply_poly(f, apply_poly(g, c)));
    const IntVector t = random_vector(rng, 2, -5, 5);
    EXPECT_EQ(apply_poly(f, translate(c, t)), translate(apply_poly(f, c), t));
    const Box B = square(2, -6, 6);
    const ConfigView w = rasterize(c, B);
    const ConfigView fgw = apply_poly(f * g, w);
    const ConfigView f_gw = apply_poly(f, apply_poly(g, w));
    const Box common = box_intersection(fgw.window().box(), f_gw.window().box());
    if (!common.empty()) EXPECT_EQ(rasterize(fgw, common), rasterize(f_gw, common));
  }
}

TEST(Config, IsAnnihilated) {
  const ConfigView cb = checkerboard();
  EXPECT_EQ(is_annihilated(difference_poly({2, 0}), cb).holds, true);
  EXPECT_TRUE(is_annihilated(difference_poly({2, 0}), cb).exact);
  EXPECT_FALSE(is_annihilated(difference_poly({1, 0}), cb).holds);
  EXPECT_TRUE(is_annihilated(LaurentPoly::constant(2, 7), FiberSum(2)).holds);
  const Verdict w = is_annihilated(difference_poly({1, 1}), rasterize(cb, square(2, 0, 5)));
  EXPECT_TRUE(w.holds);
  EXPECT_FALSE(w.exact);
  ASSERT_TRUE(w.region);
  EXPECT_EQ(*w.region, square(2, 1, 5));
}

TEST(Config, PeriodLattice) {
  const PeriodicConfig constant = PeriodicConfig::from_function(Lattice(2, {IntVector{4, 0}, IntVector{0, 4}}),
                                                                [](const IntVector&) { return Integer(1); });
  EXPECT_EQ(period_lattice(constant), Lattice::identity(2));
  EXPECT_EQ(period_lattice(checkerboard()), Lattice(2, {IntVector{1, 1}, IntVector{1, -1}}));
  std::int64_t k = 0;
  const PeriodicConfig generic = PeriodicConfig::from_function(Lattice(2, {IntVector{3, 0}, IntVector{0, 3}}),
                                                               [&](const IntVector&) { return Integer(k++); });
  EXPECT_EQ(period_lattice(generic), generic.lattice());
}

TEST(Config, PeriodLatticeMatchesBruteForce) {
  Rng rng(33);
  for (int i = 0; i < 30; ++i) {
    const PeriodicConfig c = random_periodic(rng, 2, 36);
    const Lattice P = period_lattice(c);
    EXPECT_TRUE(P.contains_lattice(c.lattice()));
    for (const auto& v : square(2, -6, 6).points()) EXPECT_EQ(P.contains(v), brute_force_period(c, v)) << v;
  }
}

TEST(Config, Rasterize) {
  const ConfigView fs = FiberSum(2, {make_fiber({0, 0}, {1, 0}, {1})});
  const WindowConfig w = rasterize(fs, {0, 0}, {3, 1});
  for (const auto& x : w.box().points()) EXPECT_EQ(w.at(x), x[1] == 0 ? 1 : 0);
  const ConfigView big = rasterize(checkerboard(), square(2, -3, 3));
  EXPECT_EQ(rasterize(big, square(2, 0, 1)), rasterize(checkerboard(), square(2, 0, 1)));
  EXPECT_THROW(rasterize(big, square(2, 0, 4)), DomainError);
}

TEST(Config, AddViews) {
  const ConfigView cb = checkerboard();
  EXPECT_TRUE(add_views({cb, cb}, {1, -1}).periodic().is_zero());
  const FiberSum merged(2, {make_fiber({0, 0}, {1, 0}, {1, 0}), make_fiber({0, 0}, {1, 0}, {1, 1, 0})});
  ASSERT_EQ(merged.fibers().size(), 1u);
  EXPECT_EQ(merged.fibers()[0].period, 6);
  for (std::int64_t j = 0; j < 6; ++j) {
    EXPECT_EQ(merged.at({j, 0}), Integer(j % 2 == 0 ? 1 : 0) + Integer(j % 3 == 2 ? 0 : 1));
  }
  const ConfigView a = PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 1}}),
                                                     [](const IntVector& x) { return Integer(floor_mod(x[0], 2)); });
  const ConfigView b = PeriodicConfig::from_function(Lattice(2, {IntVector{1, 0}, IntVector{0, 2}}),
                                                     [](const IntVector& x) { return Integer(floor_mod(x[1], 2)); });
  const ConfigView s = add_views({a, b}, {1, 1});
  EXPECT_EQ(s.periodic().lattice(), Lattice(2, {IntVector{2, 0}, IntVector{0, 2}}));
  EXPECT_THROW(add_views({WindowConfig::zeros(square(2, 0, 1)), WindowConfig::zeros(square(2, 3, 4))}, {1, 1}),
               DomainError);
}

TEST(Config, FiberMergeIsRepresentationIndependent) {
  Rng rng(34);
  for (int i = 0; i < 50; ++i) {
    std::vector<PeriodicFiber> fibers;
    for (int k = 0; k < 6; ++k) fibers.push_back(random_fiber(rng, primitive(random_nonzero(rng, 2, 1)), 4, 2));
    const FiberSum merged(2, fibers);
    for (int j = 0; j < 40; ++j) {
      const IntVector x = random_vector(rng, 2, -8, 8);
      Integer s = 0;
      for (const auto& f : fibers) s += f.at(x);
      EXPECT_EQ(merged.at(x), s);
    }
  }
}
