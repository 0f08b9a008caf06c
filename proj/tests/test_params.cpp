#include <gtest/gtest.h>

#include "fernlab/params.hpp"

using namespace fernlab;

TEST(Params, FernStatsUseOneBasedParity) {
  auto s = fern_stats({1, 2, 3, 4, 5});
  EXPECT_EQ(s.total, 15);
  EXPECT_EQ(s.odd_sum, 9);
  EXPECT_EQ(s.even_sum, 6);
  EXPECT_EQ(fern_stats({}).total, 0);
}

TEST(Params, PlusOne) {
  EXPECT_EQ(seq_plus_one({}), (FernSeq{1}));
  EXPECT_EQ(seq_plus_one({2}), (FernSeq{2, 1}));
  EXPECT_EQ(seq_plus_one({2, 1}), (FernSeq{2, 2}));
  for (FernSeq f : {FernSeq{}, FernSeq{3}, FernSeq{1, 2}, FernSeq{1, 0, 4}})
    EXPECT_EQ(total(seq_plus_one(f)), total(f) + 1);
}

TEST(Params, PlusOneShifted) {
  EXPECT_EQ(seq_plus_one_shifted({}), (FernSeq{1}));
  EXPECT_EQ(seq_plus_one_shifted({2}), (FernSeq{3}));
  EXPECT_EQ(seq_plus_one_shifted({2, 1}), (FernSeq{2, 1, 1}));
  EXPECT_EQ(seq_plus_one_shifted({2, 1, 1}), (FernSeq{2, 1, 2}));
}

TEST(Params, BarAndFlip) {
  EXPECT_EQ(seq_bar({1, 2, 3}), (FernSeq{0, 3, 2, 1}));
  EXPECT_EQ(seq_bar({1, 2}), (FernSeq{2, 1}));
  EXPECT_EQ(seq_flip({1, 2}), (FernSeq{0, 2, 1}));
  EXPECT_EQ(seq_flip({1, 2, 3}), (FernSeq{3, 2, 1}));
  EXPECT_TRUE(seq_bar({}).empty());
  EXPECT_TRUE(seq_flip({}).empty());
}

TEST(Params, BarTwiceKeepsNonzeroTerms) {
  auto strip = [](FernSeq f) {
    f.erase(std::remove(f.begin(), f.end(), 0), f.end());
    std::sort(f.begin(), f.end());
    return f;
  };
  for (FernSeq f : {FernSeq{1}, FernSeq{1, 2}, FernSeq{3, 1, 2}, FernSeq{0, 2, 5, 1}})
    EXPECT_EQ(strip(seq_bar(seq_bar(f))), strip(f));
}

TEST(Params, SpecRoundTrip) {
  const std::string t = "Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]";
  RegionSpec s = parse_spec(t);
  EXPECT_EQ(s.family, Family::Rc);
  EXPECT_EQ(s.z, 4);
  EXPECT_EQ(s.c, (FernSeq{2, 2, 1}));
  EXPECT_EQ(format_spec(s), t);
  EXPECT_EQ(parse_spec(format_spec(s)), s);
  EXPECT_EQ(parse_spec("C x=2 y=2 z=2 m=1").m, 1);
  EXPECT_TRUE(parse_spec("Hex x=1 y=1 z=1 a=[] c=[]").a.empty());
}

TEST(Params, ParseErrors) {
  EXPECT_THROW(parse_spec(""), ParseError);
  EXPECT_THROW(parse_spec("Zz x=1"), ParseError);
  EXPECT_THROW(parse_spec("Rc x=1 a=[1,"), ParseError);
  EXPECT_THROW(parse_spec("Rc x=one"), ParseError);
  EXPECT_THROW(parse_spec("Rc w=1"), ParseError);
}

TEST(Params, Validation) {
  EXPECT_TRUE(validate_spec(parse_spec("Rc x=2 y=0 z=2 a=[1] c=[] b=[1]")).empty());
  EXPECT_FALSE(validate_spec(parse_spec("Rc x=1 y=0 z=2")).empty());
  EXPECT_FALSE(validate_spec(parse_spec("Rl x=2 y=0 z=2")).empty());
  EXPECT_TRUE(validate_spec(parse_spec("Rnw x=1 y=-1 z=1 a=[1] c=[] b=[2]")).empty());
  EXPECT_FALSE(validate_spec(parse_spec("Qne x=1 y=-2 z=2 a=[1] c=[] b=[2]")).empty());
  EXPECT_FALSE(validate_spec(parse_spec("Rc x=2 y=-1 z=2")).empty());
  EXPECT_FALSE(validate_spec(parse_spec("H x=1 y=1 z=1 a=[1] c=[] b=[2]")).empty());
  auto v = validate_spec(parse_spec("Rc x=-1 y=0 z=2 a=[-1]"));
  EXPECT_GE(v.size(), 2u);
  EXPECT_THROW(require_valid(parse_spec("Rc x=1 y=0 z=2")), InvalidSpec);
}

TEST(Params, MinY) {
  EXPECT_EQ(min_y(parse_spec("Rnw x=1 y=0 z=1 a=[1] b=[2]")), -1);
  EXPECT_EQ(min_y(parse_spec("Rnw x=1 y=0 z=1 a=[2] b=[1]")), 0);
  EXPECT_EQ(min_y(parse_spec("Rsw x=1 y=0 z=1 a=[2] b=[1]")), -1);
  EXPECT_EQ(min_y(parse_spec("Qnw x=1 y=0 z=2 a=[1] b=[2]")), -1);
  EXPECT_EQ(min_y(parse_spec("Qc x=1 y=0 z=1 a=[1] b=[2]")), 0);
}

TEST(Params, QuasiPerimeter) {
  RegionSpec s = parse_spec("Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]");
  EXPECT_EQ(quasi_perimeter(s), 4 + 4 + 8 + 6 + 9 + 2);
  EXPECT_EQ(h_param(s), quasi_perimeter(s) + 4);
  RegionSpec q = parse_spec("Ql x=1 y=0 z=2 a=[1] c=[] b=[1]");
  EXPECT_EQ(quasi_perimeter(q), 2 + 8 + 6);
  EXPECT_THROW(quasi_perimeter(parse_spec("Hex x=1 y=1 z=1")), std::invalid_argument);
}
