#include <gtest/gtest.h>

#include <set>

#include "fernlab/verify.hpp"

using namespace fernlab;

namespace {

BigInt M(const RegionSpec& s) { return count_tilings(build_region(s), {1000}); }

SweepBudget small_budget() {
  SweepBudget b;
  b.max_x = b.max_z = 3;
  b.max_y = 2;
  b.fern_alphabet = {{}, {1}, {2}, {1, 1}, {2, 1}};
  b.max_area = 100;
  return b;
}

}  // namespace

TEST(Verify, SmallGridFormulaMatchesOracle) {
  std::vector<Family> fams = rq_families();
  fams.push_back(Family::H);
  fams.push_back(Family::B);
  VerificationReport r = check_formula_vs_oracle(SweepBudget{}, fams);
  EXPECT_GT(r.instances_checked, 1000);
  for (auto& f : r.failures) ADD_FAILURE() << f.spec << ": " << f.note;
}

TEST(Verify, GridSpecsAreValid) {
  for (Family f : rq_families()) {
    auto specs = grid_specs(f, SweepBudget{});
    EXPECT_FALSE(specs.empty());
    bool reaches_min = false;
    for (auto& s : specs) {
      EXPECT_TRUE(validate_spec(s).empty());
      reaches_min |= s.y == min_y(s);
    }
    EXPECT_TRUE(reaches_min);
  }
}

TEST(Verify, ReportMerge) {
  VerificationReport a, b;
  a.instances_checked = 2;
  b.instances_checked = 3;
  b.skipped = 1;
  b.failures.push_back({"s", "1", "2", "x"});
  a.merge(b);
  EXPECT_EQ(a.instances_checked, 5);
  EXPECT_EQ(a.skipped, 1);
  EXPECT_FALSE(a.pass());
}

TEST(Kuo, EighteenTemplates) {
  std::set<std::string> ids;
  for (auto& k : kuo_templates()) {
    ids.insert(k.id);
    EXPECT_GE(kuo_head_index(k), 0) << k.id;
    EXPECT_EQ(&kuo_template(k.label), &k);
  }
  EXPECT_EQ(ids.size(), 18u);
  EXPECT_THROW(kuo_template("Zz"), std::invalid_argument);
}

TEST(Kuo, FigureInstancesByFormula) {
  EXPECT_EQ(kuo_figure_instances().size(), 12u);
  for (auto& [id, text] : kuo_figure_instances()) {
    KuoCheck kc = evaluate_kuo(kuo_template(id), parse_spec(text), KuoMode::Formula);
    EXPECT_TRUE(kc.holds) << id;
    EXPECT_TRUE(kc.h_decreases) << id;
  }
}

TEST(Kuo, FigureInstancesByOracle) {
  OracleConfig cfg{1000};
  KuoCheck kc = evaluate_kuo(kuo_template("Rc-lt"), parse_spec("Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]"),
                             KuoMode::Oracle, cfg);
  EXPECT_TRUE(kc.holds);
  EXPECT_EQ(kc.lhs, BigInt("4607334212636963808000000000"));
  EXPECT_TRUE(check_kuo_recurrence("Qnw-gt", parse_spec("Qnw x=2 y=2 z=2 a=[2,2] c=[1,2] b=[1,2]"),
                                   KuoMode::Oracle, cfg)
                  .pass());
}

TEST(Kuo, GridInstancesByOracle) {
  SweepBudget b = small_budget();
  b.max_area = 90;
  for (auto& k : kuo_templates()) {
    auto specs = kuo_grid_instances(k, b, 3);
    EXPECT_EQ(specs.size(), 3u) << k.id;
    for (auto& s : specs) {
      VerificationReport r = check_kuo_recurrence(k.id, s);
      for (auto& f : r.failures) ADD_FAILURE() << f.spec << ": " << f.note;
    }
  }
}

TEST(Kuo, LeftFernGrowsWithOppositeParityInQnw) {
  // with the ordinary plus-one on the left fern the Q-northwest identity fails
  RegionSpec s = parse_spec("Qnw x=2 y=1 z=2 a=[1] c=[1] b=[2]");
  KuoTemplate k = kuo_template("Qnw-lt");
  EXPECT_TRUE(evaluate_kuo(k, s, KuoMode::Oracle).holds);
  for (auto& t : k.t)
    if (t.a.op == SeqOp::PlusShifted) t.a.op = SeqOp::Plus1;
  EXPECT_FALSE(evaluate_kuo(k, s, KuoMode::Oracle).holds);
}

TEST(Kuo, SideConditions) {
  const KuoTemplate& k = kuo_template("Rc-lt");
  EXPECT_THROW(kuo_instance(k, parse_spec("Rc x=2 y=1 z=2 a=[2] c=[1] b=[1]")), SideConditionViolated);
  EXPECT_THROW(kuo_instance(k, parse_spec("Rc x=2 y=0 z=2 a=[1] c=[1] b=[2]")), SideConditionViolated);
  EXPECT_THROW(kuo_instance(k, parse_spec("Rc x=0 y=1 z=2 a=[1] c=[1] b=[2]")), SideConditionViolated);
  EXPECT_THROW(kuo_instance(k, parse_spec("Rl x=1 y=1 z=2 a=[1] c=[1] b=[2]")), SideConditionViolated);
  EXPECT_THROW(kuo_instance(k, parse_spec("Rc x=2 y=1 z=2 a=[1,0] c=[1] b=[2]")), SideConditionViolated);
  EXPECT_EQ(kuo_instance(k, parse_spec("Rc x=2 y=1 z=2 a=[1] c=[1] b=[2]")).size(), 6u);
}

TEST(Kuo, CompanionsHaveSmallerH) {
  SweepBudget b = small_budget();
  b.max_area = 400;
  for (auto& k : kuo_templates()) {
    int hi = kuo_head_index(k);
    for (auto& s : kuo_grid_instances(k, b, 30)) {
      auto six = kuo_instance(k, s);
      for (int i = 0; i < 6; ++i)
        if (i != hi) EXPECT_LT(h_param(six[i]), h_param(s)) << k.id << " " << format_spec(s);
    }
  }
}

TEST(Extremal, LemmaSuiteOnSmallGrid) {
  SweepBudget b;
  b.fern_alphabet = {{}, {1}, {2}, {1, 1}};
  LemmaReport L = check_extremal_lemmas(b, {400});
  EXPECT_GT(L.forced.instances_checked, 0);
  EXPECT_GT(L.split.instances_checked, 0);
  EXPECT_GT(L.base_case.instances_checked, 0);
  EXPECT_GT(L.zero_elim.instances_checked, 0);
  EXPECT_GT(L.reductions.instances_checked, 0);
  for (auto& f : L.total().failures) ADD_FAILURE() << f.spec << ": " << f.note << " " << f.lhs << " " << f.rhs;
}

TEST(Extremal, SouthwestReductionKeepsLeftFernWhole) {
  // at minimal y with a <= b the first triangle of b moves out, the rest of b
  // becomes the left fern and a the right one
  RegionSpec s = parse_spec("Rsw x=2 y=0 z=1 a=[1] c=[1] b=[2,1]");
  auto red = extremal_reduction(s);
  ASSERT_TRUE(red);
  EXPECT_EQ(red->family, Family::Qne);
  EXPECT_EQ(red->a, (FernSeq{1}));
  EXPECT_EQ(red->b, (FernSeq{1}));
  EXPECT_EQ(M(*red), M(s));
  long differs = 0;
  for (auto& g : grid_specs(Family::Rsw, small_budget())) {
    auto r = extremal_reduction(g);
    if (!r || total(g.a) > total(g.b) || build_region(g).size() > 100) continue;
    EXPECT_EQ(M(*r), M(g)) << format_spec(g);
    RegionSpec other{Family::Qne, g.x, r->y, g.z, 0, g.a, seq_prepend_zero(g.c), tail(g.b, 1)};
    if (validate_spec(other).empty() && M(other) != M(g)) ++differs;
  }
  EXPECT_GT(differs, 0);
}

TEST(Extremal, NortheastReductionKeepsRightFernWhole) {
  long differs = 0;
  for (auto& g : grid_specs(Family::Qne, small_budget())) {
    auto r = extremal_reduction(g);
    if (!r || total(g.a) < total(g.b) || build_region(g).size() > 100) continue;
    EXPECT_EQ(r->family, Family::Rsw);
    EXPECT_EQ(M(*r), M(g)) << format_spec(g);
    RegionSpec other{Family::Rsw, g.x, r->y, g.z, 0, tail(g.a, 1), g.c, g.b};
    if (validate_spec(other).empty() && M(other) != M(g)) ++differs;
  }
  EXPECT_GT(differs, 0);
}

TEST(Extremal, ZeroPrefixRaisesY) {
  // (0, t) in front of the longer side fern: the count is that of the
  // region without the prefix with y raised by the excess, capped at t
  RegionSpec base = parse_spec("Rc x=1 y=0 z=1 a=[1] c=[] b=[1]");
  RegionSpec v = base;
  v.a = {0, 2, 1};
  RegionSpec same_y = base, raised = base;
  raised.y += 2;
  EXPECT_EQ(M(v), M(raised));
  EXPECT_NE(M(v), M(same_y));
  // when the prefixed fern stays the shorter one nothing changes
  RegionSpec w = parse_spec("Rc x=1 y=0 z=1 a=[1] c=[] b=[3]");
  RegionSpec wv = w;
  wv.a = {0, 1, 1};
  EXPECT_EQ(M(wv), M(w));
}

TEST(Dual, RatioIsExactlyOne) {
  auto rows = check_dual_convergence({1, 1}, {2}, {1, 1}, 1, 1, {4, 8, 12, 16, 24});
  ASSERT_EQ(rows.size(), 5u);
  for (auto& r : rows) {
    EXPECT_EQ(r.exact_ratio, BigRat(1)) << r.N;
    EXPECT_EQ(r.rel_error, 0.0);
    EXPECT_DOUBLE_EQ(r.limit, 1.0);
    EXPECT_NEAR(r.ratio, 1.0, 1e-9);
  }
  EXPECT_TRUE(rows[0].exact_checked && rows[0].exact_agrees);
  EXPECT_FALSE(rows[4].exact_checked);
}

TEST(Dual, SlowerInstanceConverges) {
  auto rows = check_dual_convergence({2}, {1, 1}, {2}, 2, 1, {4, 24});
  EXPECT_GT(rows[0].rel_error, 0.5);
  EXPECT_LT(rows[1].rel_error, 0.15);
  EXPECT_TRUE(rows[0].exact_agrees);
}

TEST(Dual, TotalsMustMatch) {
  EXPECT_THROW(check_dual_convergence({1}, {2}, {2}, 1, 1, {4}), TotalsMismatch);
}
