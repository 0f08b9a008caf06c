#include <gtest/gtest.h>

#include "fernlab/formulas.hpp"
#include "fernlab/oracle.hpp"

using namespace fernlab;

namespace {

BigInt value(const char* t) { return formula(parse_spec(t)).value; }

BigInt oracle(const char* t) { return count_tilings(build_region(parse_spec(t)), {1000}); }

}  // namespace

TEST(Formulas, MacMahon) {
  EXPECT_EQ(macmahon_P(1, 1, 1), 2);
  EXPECT_EQ(macmahon_P(2, 2, 2), 20);
  EXPECT_EQ(macmahon_P(2, 3, 4), 490);
  EXPECT_EQ(macmahon_P(0, 5, 7), 1);
  EXPECT_EQ(macmahon_P(6, 6, 6), BigInt("1478619421136"));
}

TEST(Formulas, CoredHexagon) {
  EXPECT_EQ(cored_hexagon_count(2, 2, 2, 1), 54);
  EXPECT_EQ(cored_hexagon_count(2, 2, 2, 2), 112);
  EXPECT_EQ(cored_hexagon_count(3, 3, 3, 1), 4320);
  EXPECT_EQ(cored_hexagon_count(3, 4, 2, 0), macmahon_P(3, 4, 2));
  EXPECT_EQ(value("C x=3 y=1 z=3 m=2"), oracle("C x=3 y=1 z=3 m=2"));
  EXPECT_EQ(value("C x=2 y=3 z=1 m=1"), oracle("C x=2 y=3 z=1 m=1"));
  EXPECT_EQ(cored_hexagon_count(2, 1, 2, 1), 12);
}

TEST(Formulas, DentedSemihexagon) {
  EXPECT_EQ(s_dented({1, 1, 2}), 3);
  EXPECT_EQ(s_dented({2, 1}), 1);
  EXPECT_EQ(s_dented({}), 1);
  for (const char* t : {"S a=[1,1,2]", "S a=[2,1,1,2]", "S a=[1,2,1,1,2]", "S a=[0,2,1,3]"})
    EXPECT_EQ(value(t), oracle(t)) << t;
}

TEST(Formulas, FigureRegions) {
  EXPECT_EQ(value("Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]"),
            BigInt("15830005025219026585279690015638552576000"));
  EXPECT_EQ(value("Qnw x=2 y=2 z=2 a=[2,2] c=[1,2] b=[1,2]"), BigInt("2420093850409872000000"));
}

TEST(Formulas, FrozenSmallRegions) {
  EXPECT_EQ(value("Rc x=2 y=0 z=2 a=[1,1] c=[2] b=[1,1]"), 506880);
  EXPECT_EQ(value("Rc x=2 y=0 z=2 a=[1,1] c=[0,2] b=[1,1]"), 506880);
  EXPECT_EQ(value("Rl x=1 y=1 z=2 a=[1] c=[1] b=[1]"), 4320);
  EXPECT_EQ(value("Rnw x=1 y=-1 z=1 a=[] c=[1] b=[1]"), 4);
  EXPECT_EQ(value("Qc x=1 y=1 z=1 a=[1] c=[1] b=[2]"), 2800);
  EXPECT_EQ(value("Qne x=2 y=0 z=1 a=[2,1] c=[1] b=[1]"), 294000);
  EXPECT_EQ(value("H x=1 y=1 z=1 a=[1] c=[1] b=[1]"), 8);
  EXPECT_EQ(value("B x=1 y=1 z=1 a=[] c=[1] b=[]"), 12);
}

TEST(Formulas, AgreeWithOracleOnEachFamily) {
  for (const char* t : {"Rc x=1 y=1 z=1 a=[1] c=[2,1] b=[2]", "Rl x=2 y=0 z=1 a=[2] c=[1] b=[1,1]",
                        "Rnw x=1 y=-1 z=1 a=[1] c=[1] b=[2]", "Rsw x=2 y=-1 z=1 a=[2] c=[1] b=[1]",
                        "Qc x=2 y=1 z=2 a=[1,1] c=[1] b=[1]", "Ql x=1 y=1 z=2 a=[1] c=[2] b=[1]",
                        "Qnw x=2 y=-1 z=2 a=[1] c=[1] b=[2]", "Qne x=1 y=0 z=2 a=[1,1] c=[1] b=[2]",
                        "H x=2 y=1 z=1 a=[2] c=[1] b=[1,1]", "B x=2 y=2 z=1 a=[] c=[2,1] b=[]"})
    EXPECT_EQ(value(t), oracle(t)) << t;
}

TEST(Formulas, ExactAndIntegral) {
  for (const char* t : {"Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]", "Ql x=3 y=2 z=2 a=[2,2] c=[2,1] b=[1,2]",
                        "C x=3 y=2 z=4 m=2"}) {
    FormulaResult f = formula(parse_spec(t));
    EXPECT_EQ(f.gamma.sqrt_pi_exponent(), 0);
    EXPECT_TRUE(is_integer(BigRat(f.counts) * f.gamma.to_rational()));
    GammaProduct g;
    BigInt c = 1;
    for (auto& term : f.terms) term.is_gamma ? void(g *= term.gamma) : void(c *= term.count);
    EXPECT_EQ(g, f.gamma);
    EXPECT_EQ(c, f.counts);
    EXPECT_NEAR(f.log_value(), std::log(f.value.get_d()), 1e-6);
  }
}

TEST(Formulas, Errors) {
  EXPECT_THROW(formula(parse_spec("Rc x=1 y=0 z=2")), InvalidSpec);
  EXPECT_THROW(formula(parse_spec("H x=1 y=1 z=1 a=[1] c=[] b=[2]")), InvalidSpec);
  EXPECT_THROW(dual_limit_product({1}, {}, {2}), TotalsMismatch);
  EXPECT_THROW(r_region_count(parse_spec("Qc x=1 y=1 z=1")), std::invalid_argument);
}

TEST(Formulas, DualLimit) {
  EXPECT_EQ(dual_limit_product({1, 1}, {2}, {1, 1}), 1);
  EXPECT_EQ(dual_limit_product({2}, {1, 1}, {2}), s_dented({1}) * s_dented({1}));
}
