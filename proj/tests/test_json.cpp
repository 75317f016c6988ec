#include <gtest/gtest.h>

#include "support.hpp"

using namespace perdec;
using namespace perdec::testing;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, PolyRoundTrip) {
  Rng rng(71);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_poly(rng, 3);
    EXPECT_EQ(parse_poly(dump_poly(f)), f);
  }
  const LaurentPoly big = LaurentPoly::monomial({1}, Integer("123456789012345678901234567890"));
  EXPECT_EQ(parse_poly(dump_poly(big)), big);
}

TEST(Json, PolyRejectsInvariantViolations) {
  EXPECT_NE(error_of([] { parse_poly(R"({"dim":1,"terms":[{"exp":[1],"coef":0}]})"); }).find("/terms/0/coef"), std::string::npos);
  EXPECT_NE(error_of([] { parse_poly(R"({"dim":1,"terms":[{"exp":[1],"coef":1},{"exp":[1],"coef":2}]})"); })
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_poly(R"({"dim":2,"terms":[{"exp":[1],"coef":1}]})"); }).find("/terms/0/exp"), std::string::npos);
  EXPECT_NE(error_of([] { parse_poly(R"({"dim":1,"terms":[],"x":1})"); }).find("unexpected key"), std::string::npos);
}

TEST(Json, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = error_of([] { parse_poly("{\n  \"dim\": 1,\n  \"terms\": [\n    {\"exp\": [1] \"coef\": 1}\n  ]\n}"); });
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos);
}

TEST(Json, ConfigRoundTrips) {
  Rng rng(72);
  for (int i = 0; i < 20; ++i) {
    const ConfigView p = random_periodic(rng, 2, 24);
    EXPECT_EQ(parse_config(dump_config(p)), p);
    std::vector<PeriodicFiber> fibers;
    for (int k = 0; k < 4; ++k) fibers.push_back(random_fiber(rng, primitive(random_nonzero(rng, 2, 2)), 4, 5));
    const ConfigView fs = FiberSum(2, fibers);
    EXPECT_EQ(parse_config(dump_config(fs)), fs);
    const ConfigView w = rasterize(p, square(2, -2, 3));
    EXPECT_EQ(parse_config(dump_config(w)), w);
  }
}

TEST(Json, ConfigRejectsInvariantViolations) {
  EXPECT_NE(error_of([] { parse_config(R"({"kind":"window","dim":1,"lo":[0],"hi":[2],"values":[1,2]})"); }).find("/values"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_config(R"({"kind":"window","dim":1,"lo":[3],"hi":[2],"values":[]})"); }).find("hi < lo"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_config(R"({"kind":"periodic","dim":1,"basis":[[2]],"values":[{"res":[0],"val":1},{"res":[2],"val":1}]})");
            }).find("not canonical"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_config(R"({"kind":"periodic","dim":2,"basis":[[1,2],[2,4]],"values":[]})");
            }).find("independent"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_config(R"({"kind":"fibersum","dim":2,"fibers":[{"anchor":[0,0],"dir":[2,0],"period":1,"vals":[1]}]})");
            }).find("/fibers/0/dir"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_config(R"({"kind":"fibersum","dim":2,"fibers":[{"anchor":[3,0],"dir":[1,0],"period":1,"vals":[1]}]})");
            }).find("canonical"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_config(R"({"kind":"fibersum","dim":2,"fibers":[{"anchor":[0,0],"dir":[1,0],"period":2,"vals":[0,0]}]})");
            }).find("zero"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_config(R"({"kind":"cloud","dim":2})"); }).find("unknown kind"), std::string::npos);
}

TEST(Json, TileAndSubspace) {
  const Tile t(2, {{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(parse_tile(dump_tile(t)), t);
  EXPECT_THROW(parse_tile(R"({"dim":2,"cells":[[0,0],[0,0]]})"), ParseError);
  const SubspaceBasis V = SubspaceBasis::span(3, {IntVector{1, 2, 0}, IntVector{0, 3, 1}});
  EXPECT_EQ(parse_subspace(dump_subspace(V)), V);
  EXPECT_EQ(parse_subspace(R"({"dim":2,"basis":[["1/2",1]]})"), SubspaceBasis::span(2, {IntVector{1, 2}}));
  EXPECT_THROW(parse_subspace(R"({"dim":2,"basis":[[1,1],[2,2]]})"), ParseError);
}
