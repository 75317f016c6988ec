#include <gtest/gtest.h>

#include "support.hpp"

using namespace perdec;
using namespace perdec::testing;

TEST(Lattice, Rank) {
  EXPECT_EQ(rank_rational(std::vector<IntVector>{{1, 0}, {0, 1}}), 2u);
  EXPECT_EQ(rank_rational(std::vector<IntVector>{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(rank_rational(std::vector<IntVector>{}), 0u);
}

TEST(Lattice, Primitive) {
  EXPECT_EQ(primitive({2, -4}), (IntVector{1, -2}));
  EXPECT_EQ(primitive({0, -3}), (IntVector{0, 1}));
  EXPECT_EQ(primitive({5, 7}), (IntVector{5, 7}));
}

TEST(Lattice, SpanMeetsTrivially) {
  EXPECT_TRUE(span_meets_trivially({1, 0, 0}, {0, 1, 0}, SubspaceBasis::span(3, {IntVector{0, 0, 1}})));
  EXPECT_FALSE(span_meets_trivially({1, 0}, {0, 1}, SubspaceBasis::span(2, {IntVector{1, 1}})));
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    EXPECT_TRUE(span_meets_trivially(random_nonzero(rng, 3, 4), random_nonzero(rng, 3, 4), SubspaceBasis::trivial(3)));
  }
}

TEST(Lattice, SubspaceRejectsDependentBasis) {
  EXPECT_THROW(SubspaceBasis(2, {to_rational({1, 2}), to_rational({2, 4})}), PreconditionError);
  EXPECT_EQ(SubspaceBasis(2).dimension(), 0u);
}

TEST(Lattice, CosetCoordinates) {
  const CosetSystem cs(2, {IntVector{1, 0}, IntVector{0, 1}});
  EXPECT_EQ(cs.coordinates({3, -2}), (std::vector<std::int64_t>{3, -2}));
  EXPECT_EQ(cs.coordinates({0, 0}), (std::vector<std::int64_t>{0, 0}));
}

TEST(Lattice, CosetRoundTripAndUniqueness) {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    std::vector<IntVector> gens;
    while (true) {
      gens = {random_nonzero(rng, 3, 3), random_nonzero(rng, 3, 3)};
      if (rank_rational(gens) == 2) break;
    }
    const CosetSystem cs(3, gens);
    for (int j = 0; j < 50; ++j) {
      const IntVector x = random_vector(rng, 3, -20, 20);
      const IntVector z = cs.representative(x);
      EXPECT_EQ(cs.representative(z), z);
      const auto a = cs.coordinates(x);
      EXPECT_EQ(cs.rebuild(z, a), x);
      EXPECT_EQ(cs.coordinates(z), (std::vector<std::int64_t>{0, 0}));
      // Shifting by a generator changes exactly one coordinate.
      const auto b = cs.coordinates(x + gens[1]);
      EXPECT_EQ(b[0], a[0]);
      EXPECT_EQ(b[1], a[1] + 1);
    }
  }
  EXPECT_THROW(CosetSystem(2, {IntVector{1, 2}, IntVector{2, 4}}), PreconditionError);
}

TEST(Lattice, HermiteReduction) {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    const Lattice L(2, random_lattice_basis(rng, 2, 30));
    for (int j = 0; j < 30; ++j) {
      const IntVector x = random_vector(rng, 2, -30, 30);
      EXPECT_TRUE(L.contains(x - L.reduce(x)));
      EXPECT_EQ(L.reduce(L.reduce(x)), L.reduce(x));
    }
    EXPECT_EQ(L.residues().size(), static_cast<std::size_t>(L.index()));
  }
}

TEST(Lattice, IntegerKernel) {
  const auto k = integer_kernel(2, {IntVector{1, 0}, IntVector{4, 0}});
  ASSERT_FALSE(k.empty());
  const IntVector sum = to_int64(k.front()[0]) * IntVector{1, 0} + to_int64(k.front()[1]) * IntVector{4, 0};
  EXPECT_TRUE(sum.is_zero());
}
