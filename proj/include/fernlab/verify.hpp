#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "formulas.hpp"
#include "lattice.hpp"
#include "oracle.hpp"
#include "params.hpp"

namespace fernlab {

struct SweepBudget {
  long max_x = 2, max_y = 1, max_z = 2;
  std::vector<FernSeq> fern_alphabet = {{}, {1}, {1, 1}};
  long max_area = 80;
};

struct Failure {
  std::string spec;
  std::string lhs, rhs;
  std::string note;
};

struct VerificationReport {
  long instances_checked = 0;
  long skipped = 0;
  std::vector<Failure> failures;
  double elapsed = 0;  // seconds

  bool pass() const { return failures.empty(); }
  void merge(const VerificationReport& o) {
    instances_checked += o.instances_checked;
    skipped += o.skipped;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    elapsed += o.elapsed;
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline const std::vector<Family>& rq_families() {
  static const std::vector<Family> f = {Family::Rc, Family::Rl, Family::Rnw, Family::Rsw,
                                        Family::Qc, Family::Ql, Family::Qnw, Family::Qne};
  return f;
}

// Every valid spec of the given family in the budget grid, y from its minimum.
inline std::vector<RegionSpec> grid_specs(Family fam, const SweepBudget& b) {
  std::vector<RegionSpec> out;
  const auto& alph = b.fern_alphabet;
  const std::vector<FernSeq> none = {{}};
  bool side_ferns = is_rq(fam) || fam == Family::H;
  bool mid_fern = side_ferns || fam == Family::B;
  for (long x = 0; x <= b.max_x; ++x)
    for (long z = 0; z <= b.max_z; ++z)
      for (long y = -1; y <= b.max_y; ++y)
        for (auto& a : side_ferns ? alph : none)
          for (auto& c : mid_fern ? alph : none)
            for (auto& bb : side_ferns ? alph : none) {
              RegionSpec s{fam, x, y, z, 0, a, c, bb};
              if (validate_spec(s).empty()) out.push_back(s);
            }
  return out;
}

inline BigInt oracle_count(const RegionSpec& s, const OracleConfig& cfg) {
  return count_tilings(build_region(s), cfg);
}

// Formula against oracle on the given specs; regions over the budget area are skipped.
inline VerificationReport check_specs(const std::vector<RegionSpec>& specs, long max_area,
                                      const OracleConfig& cfg = {}) {
  detail::Stopwatch sw;
  VerificationReport rep;
  for (auto& s : specs) {
    Region r;
    try {
      r = build_region(s);
    } catch (const GeometryConflict& e) {
      rep.failures.push_back({format_spec(s), "", "", std::string("geometry: ") + e.what()});
      continue;
    }
    if (static_cast<long>(r.size()) > max_area) {
      ++rep.skipped;
      continue;
    }
    ++rep.instances_checked;
    BigInt o = count_tilings(r, cfg);
    try {
      BigInt f = formula(s).value;
      if (f != o) rep.failures.push_back({format_spec(s), to_decimal(f), to_decimal(o), "formula != oracle"});
    } catch (const std::exception& e) {
      rep.failures.push_back({format_spec(s), "", to_decimal(o), e.what()});
    }
  }
  rep.elapsed = sw.seconds();
  return rep;
}

inline VerificationReport check_formula_vs_oracle(const SweepBudget& b,
                                                  const std::vector<Family>& families = rq_families(),
                                                  const OracleConfig& cfg = {}) {
  VerificationReport rep;
  for (Family f : families) rep.merge(check_specs(grid_specs(f, b), b.max_area, cfg));
  return rep;
}

namespace detail {

inline bool all_positive(const FernSeq& f, size_t from = 0) {
  for (size_t i = from; i < f.size(); ++i)
    if (f[i] <= 0) return false;
  return true;
}

}  // namespace detail

// ---- Kuo recurrences ----

enum class SeqSrc { A, B, C };
enum class SeqOp { Id, Plus1, PlusShifted, Bar, Flip };
struct SeqExpr {
  SeqSrc src;
  SeqOp op;
};
struct TermTemplate {
  Family fam;
  int dx, dy, dz;
  SeqExpr a, c, b;
};
enum class Cond { Lt, Le, Gt, Ge, Eq };

// t[0] t[1] = t[2] t[3] + t[4] t[5]
struct KuoTemplate {
  std::string id, label;
  Family head;
  Cond cond;
  TermTemplate t[6];
};

struct SideConditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<KuoTemplate>& kuo_templates() {
  using F = Family;
  const SeqExpr A{SeqSrc::A, SeqOp::Id}, Ap{SeqSrc::A, SeqOp::Plus1}, B{SeqSrc::B, SeqOp::Id},
      As{SeqSrc::A, SeqOp::PlusShifted}, Bp{SeqSrc::B, SeqOp::Plus1}, C{SeqSrc::C, SeqOp::Id}, Cbar{SeqSrc::C, SeqOp::Bar},
      Cfl{SeqSrc::C, SeqOp::Flip};
  static const std::vector<KuoTemplate> T = {
      {"Rc-lt", "R⊙:a<b", F::Rc, Cond::Lt,
       {{F::Rc, 0, 0, 0, A, C, B}, {F::Rl, 0, 0, -1, Ap, C, B},
        {F::Rc, 1, 0, -1, A, C, B}, {F::Rl, -1, 0, 0, Ap, C, B},
        {F::Rnw, 0, -1, 0, A, C, B}, {F::Rsw, 0, 0, -1, Ap, C, B}}},
      {"Rc-ge", "R⊙:a≥b", F::Rc, Cond::Ge,
       {{F::Rc, 0, 0, 0, A, C, B}, {F::Rl, 0, -1, -1, Ap, C, B},
        {F::Rc, 1, 0, -1, A, C, B}, {F::Rl, -1, -1, 0, Ap, C, B},
        {F::Rnw, 0, -1, 0, A, C, B}, {F::Rsw, 0, -1, -1, Ap, C, B}}},
      {"Rl-le", "R←:a≤b", F::Rl, Cond::Le,
       {{F::Rl, 0, 0, 0, A, C, B}, {F::Rc, 0, -1, -1, A, C, Bp},
        {F::Rnw, 0, -1, -1, A, C, Bp}, {F::Rsw, 0, -1, 0, A, C, B},
        {F::Rl, 1, 0, -1, A, C, B}, {F::Rc, -1, -1, 0, A, C, Bp}}},
      {"Rl-gt", "R←:a>b", F::Rl, Cond::Gt,
       {{F::Rl, 0, 0, 0, A, C, B}, {F::Rc, 0, 0, -1, A, C, Bp},
        {F::Rnw, 0, 0, -1, A, C, Bp}, {F::Rsw, 0, -1, 0, A, C, B},
        {F::Rl, 1, 0, -1, A, C, B}, {F::Rc, -1, 0, 0, A, C, Bp}}},
      {"Rsw-le", "R↙:a≤b", F::Rsw, Cond::Le,
       {{F::Rsw, 0, 0, 0, A, C, B}, {F::Rc, -1, -1, 0, A, C, Bp},
        {F::Rc, 0, 0, -1, A, C, Bp}, {F::Rsw, -1, -1, 1, A, C, B},
        {F::Rl, 0, 0, 0, A, C, B}, {F::Rnw, -1, -1, 0, Bp, Cbar, A}}},
      {"Rsw-gt", "R↙:a>b", F::Rsw, Cond::Gt,
       {{F::Rsw, 0, 0, 0, A, C, B}, {F::Rc, -1, 0, 0, A, C, Bp},
        {F::Rc, 0, 1, -1, A, C, Bp}, {F::Rsw, -1, -1, 1, A, C, B},
        {F::Rl, 0, 0, 0, A, C, B}, {F::Rnw, -1, 0, 0, Bp, Cbar, A}}},
      {"Rnw-lt", "R↖:a<b", F::Rnw, Cond::Lt,
       {{F::Rnw, 0, 0, 0, A, C, B}, {F::Rc, -1, 0, -1, Ap, C, Bp},
        {F::Rsw, -1, -1, 0, Bp, Cbar, A}, {F::Rl, 0, 1, -1, Ap, C, B},
        {F::Rnw, -1, 0, -1, Ap, C, Bp}, {F::Rc, 0, 0, 0, A, C, B}}},
      {"Rnw-gt", "R↖:a>b", F::Rnw, Cond::Gt,
       {{F::Rnw, 0, 0, 0, A, C, B}, {F::Rc, -1, 0, -1, Ap, C, Bp},
        {F::Rsw, -1, 0, 0, Bp, Cbar, A}, {F::Rl, 0, 0, -1, Ap, C, B},
        {F::Rnw, -1, 0, -1, Ap, C, Bp}, {F::Rc, 0, 0, 0, A, C, B}}},
      {"Rnw-eq", "R↖:a=b", F::Rnw, Cond::Eq,
       {{F::Rnw, 0, 0, 0, A, C, B}, {F::Rc, -1, 0, -1, Ap, C, Bp},
        {F::Rsw, -1, -1, 0, Bp, Cbar, A}, {F::Rl, 0, 0, -1, Ap, C, B},
        {F::Rnw, -1, 0, -1, Ap, C, Bp}, {F::Rc, 0, 0, 0, A, C, B}}},
      {"Qc-lt", "Q⊙:a<b", F::Qc, Cond::Lt,
       {{F::Qc, 0, 0, 0, A, C, B}, {F::Ql, 0, 0, -1, Ap, C, B},
        {F::Qc, 1, 0, -1, A, C, B}, {F::Ql, -1, 0, 0, Ap, C, B},
        {F::Qne, 0, 0, -1, B, Cfl, Ap}, {F::Qnw, 0, -1, 0, A, C, B}}},
      {"Qc-ge", "Q⊙:a≥b", F::Qc, Cond::Ge,
       {{F::Qc, 0, 0, 0, A, C, B}, {F::Ql, 0, -1, -1, Ap, C, B},
        {F::Qc, 1, 0, -1, A, C, B}, {F::Ql, -1, -1, 0, Ap, C, B},
        {F::Qne, 0, -1, -1, B, Cfl, Ap}, {F::Qnw, 0, -1, 0, A, C, B}}},
      {"Ql-le", "Q←:a≤b", F::Ql, Cond::Le,
       {{F::Ql, 0, 0, 0, A, C, B}, {F::Qc, 0, -1, -1, A, C, Bp},
        {F::Qnw, 0, -1, -1, A, C, Bp}, {F::Qne, 0, -1, 0, B, Cfl, A},
        {F::Ql, 1, 0, -1, A, C, B}, {F::Qc, -1, -1, 0, A, C, Bp}}},
      {"Ql-gt", "Q←:a>b", F::Ql, Cond::Gt,
       {{F::Ql, 0, 0, 0, A, C, B}, {F::Qc, 0, 0, -1, A, C, Bp},
        {F::Qnw, 0, 0, -1, A, C, Bp}, {F::Qne, 0, -1, 0, B, Cfl, A},
        {F::Ql, 1, 0, -1, A, C, B}, {F::Qc, -1, 0, 0, A, C, Bp}}},
      // the Q↖ rows grow the left fern with the opposite parity
      {"Qnw-lt", "Q↖:a<b", F::Qnw, Cond::Lt,
       {{F::Qnw, 0, 0, 0, A, C, B}, {F::Qc, -1, 0, -1, As, C, Bp},
        {F::Qne, -1, -1, 0, A, C, Bp}, {F::Ql, 0, 1, -1, As, C, B},
        {F::Qnw, -1, 0, -1, As, C, Bp}, {F::Qc, 0, 0, 0, A, C, B}}},
      {"Qnw-gt", "Q↖:a>b", F::Qnw, Cond::Gt,
       {{F::Qnw, 0, 0, 0, A, C, B}, {F::Qc, -1, 0, -1, As, C, Bp},
        {F::Qne, -1, 0, 0, A, C, Bp}, {F::Ql, 0, 0, -1, As, C, B},
        {F::Qnw, -1, 0, -1, As, C, Bp}, {F::Qc, 0, 0, 0, A, C, B}}},
      {"Qnw-eq", "Q↖:a=b", F::Qnw, Cond::Eq,
       {{F::Qnw, 0, 0, 0, A, C, B}, {F::Qc, -1, 0, -1, As, C, Bp},
        {F::Qne, -1, -1, 0, A, C, Bp}, {F::Ql, 0, 0, -1, As, C, B},
        {F::Qnw, -1, 0, -1, As, C, Bp}, {F::Qc, 0, 0, 0, A, C, B}}},
      {"Qne-lt", "Q↗:a<b", F::Qne, Cond::Lt,
       {{F::Qc, 0, 1, -1, Ap, C, B}, {F::Ql, 0, 0, 0, B, Cfl, A},
        {F::Qne, 0, 0, 0, A, C, B}, {F::Qnw, 0, 0, -1, B, Cfl, Ap},
        {F::Qne, 1, 0, -1, A, C, B}, {F::Qnw, -1, 0, 0, B, Cfl, Ap}}},
      {"Qne-ge", "Q↗:a≥b", F::Qne, Cond::Ge,
       {{F::Qc, 0, 0, -1, Ap, C, B}, {F::Ql, 0, 0, 0, B, Cfl, A},
        {F::Qne, 0, 0, 0, A, C, B}, {F::Qnw, 0, -1, -1, B, Cfl, Ap},
        {F::Qne, 1, 0, -1, A, C, B}, {F::Qnw, -1, -1, 0, B, Cfl, Ap}}},
  };
  return T;
}

inline const KuoTemplate& kuo_template(const std::string& id) {
  for (auto& t : kuo_templates())
    if (t.id == id || t.label == id) return t;
  throw std::invalid_argument("unknown recurrence id: " + id);
}

inline bool cond_holds(Cond c, long a, long b) {
  switch (c) {
    case Cond::Lt: return a < b;
    case Cond::Le: return a <= b;
    case Cond::Gt: return a > b;
    case Cond::Ge: return a >= b;
    case Cond::Eq: return a == b;
  }
  return false;
}

namespace detail {

inline FernSeq eval_seq(const SeqExpr& e, const RegionSpec& s) {
  FernSeq f = e.src == SeqSrc::A ? s.a : e.src == SeqSrc::B ? s.b : s.c;
  if (f.empty()) f = {0};  // a single zero triangle
  switch (e.op) {
    case SeqOp::Id: return f;
    case SeqOp::Plus1: return seq_plus_one(f);
    case SeqOp::PlusShifted: return seq_plus_one_shifted(f);
    case SeqOp::Bar: return seq_bar(f);
    case SeqOp::Flip: return seq_flip(f);
  }
  return f;
}

inline bool is_head_term(const TermTemplate& t, Family head) {
  return t.fam == head && t.dx == 0 && t.dy == 0 && t.dz == 0 && t.a.src == SeqSrc::A &&
         t.a.op == SeqOp::Id && t.c.src == SeqSrc::C && t.c.op == SeqOp::Id &&
         t.b.src == SeqSrc::B && t.b.op == SeqOp::Id;
}

}  // namespace detail

// The six regions of a recurrence instance, in template order.
inline std::vector<RegionSpec> kuo_instance(const KuoTemplate& k, const RegionSpec& s) {
  if (s.family != k.head) throw SideConditionViolated("spec family does not match " + k.label);
  if (!validate_spec(s).empty()) throw SideConditionViolated("spec is invalid");
  if (!cond_holds(k.cond, total(s.a), total(s.b)))
    throw SideConditionViolated("side condition of " + k.label + " fails");
  if (s.y <= min_y(s)) throw SideConditionViolated("y must be above its minimum");
  if (s.x < 1 || s.z < 1) throw SideConditionViolated("x and z must be positive");
  if (!detail::all_positive(s.a) || !detail::all_positive(s.b) || !detail::all_positive(s.c, 1))
    throw SideConditionViolated("fern terms must be positive");
  std::vector<RegionSpec> out;
  for (auto& t : k.t) {
    RegionSpec r{t.fam, s.x + t.dx, s.y + t.dy, s.z + t.dz, 0, detail::eval_seq(t.a, s),
                 detail::eval_seq(t.c, s), detail::eval_seq(t.b, s)};
    auto v = validate_spec(r);
    if (!v.empty()) throw SideConditionViolated(format_spec(r) + ": " + v.front());
    out.push_back(r);
  }
  return out;
}

inline int kuo_head_index(const KuoTemplate& k) {
  for (int i = 0; i < 6; ++i)
    if (detail::is_head_term(k.t[i], k.head)) return i;
  return 0;
}

enum class KuoMode { Oracle, Formula };

struct KuoCheck {
  std::vector<RegionSpec> regions;
  std::vector<BigInt> values;
  BigInt lhs, rhs;
  bool holds = false;
  bool h_decreases = false;
};

inline KuoCheck evaluate_kuo(const KuoTemplate& k, const RegionSpec& s, KuoMode mode,
                             const OracleConfig& cfg = {}) {
  KuoCheck kc;
  kc.regions = kuo_instance(k, s);
  for (auto& r : kc.regions)
    kc.values.push_back(mode == KuoMode::Oracle ? oracle_count(r, cfg) : formula(r).value);
  kc.lhs = kc.values[0] * kc.values[1];
  kc.rhs = kc.values[2] * kc.values[3] + kc.values[4] * kc.values[5];
  kc.holds = kc.lhs == kc.rhs;
  int hi = kuo_head_index(k);
  long h = h_param(kc.regions[hi]);
  kc.h_decreases = true;
  for (int i = 0; i < 6; ++i)
    if (i != hi && h_param(kc.regions[i]) >= h) kc.h_decreases = false;
  return kc;
}

inline VerificationReport check_kuo_recurrence(const std::string& id, const RegionSpec& s,
                                               KuoMode mode = KuoMode::Oracle,
                                               const OracleConfig& cfg = {}) {
  detail::Stopwatch sw;
  const KuoTemplate& k = kuo_template(id);
  VerificationReport rep;
  KuoCheck kc = evaluate_kuo(k, s, mode, cfg);
  rep.instances_checked = 1;
  if (!kc.holds)
    rep.failures.push_back({format_spec(s), to_decimal(kc.lhs), to_decimal(kc.rhs), k.id + " identity fails"});
  if (!kc.h_decreases)
    rep.failures.push_back({format_spec(s), "", "", k.id + ": a companion region does not have smaller h"});
  rep.elapsed = sw.seconds();
  return rep;
}

// Grid instances of a recurrence whose six regions all fit in max_area.
inline std::vector<RegionSpec> kuo_grid_instances(const KuoTemplate& k, const SweepBudget& b,
                                                  size_t limit) {
  std::vector<RegionSpec> out;
  for (auto& s : grid_specs(k.head, b)) {
    if (out.size() >= limit) break;
    std::vector<RegionSpec> six;
    try {
      six = kuo_instance(k, s);
      bool fits = true;
      for (auto& r : six)
        if (static_cast<long>(build_region(r).size()) > b.max_area) fits = false;
      if (fits) out.push_back(s);
    } catch (const SideConditionViolated&) {
    } catch (const GeometryConflict&) {
    }
  }
  return out;
}

// Instances drawn in the Kuo condensation figures.
inline const std::vector<std::pair<std::string, std::string>>& kuo_figure_instances() {
  static const std::vector<std::pair<std::string, std::string>> v = {
      {"Rc-lt", "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]"},
      {"Rc-ge", "Rc x=2 y=1 z=2 a=[1,2] c=[2,1,1] b=[1,1]"},
      {"Rl-le", "Rl x=3 y=2 z=2 a=[2,1,1] c=[2,2] b=[2,1,2]"},
      {"Rl-gt", "Rl x=3 y=2 z=2 a=[2,2,1] c=[2,2] b=[2,1,1]"},
      {"Rsw-le", "Rsw x=3 y=2 z=2 a=[2,1] c=[2,2] b=[2,2]"},
      {"Rsw-gt", "Rsw x=3 y=2 z=2 a=[2,2] c=[2,2] b=[1,2]"},
      {"Rnw-lt", "Rnw x=2 y=2 z=2 a=[2,1] c=[2,1] b=[2,2]"},
      {"Rnw-gt", "Rnw x=2 y=2 z=2 a=[2,2] c=[2,1] b=[1,2]"},
      {"Qc-lt", "Qc x=2 y=2 z=2 a=[1,2] c=[1,2] b=[2,2]"},
      {"Ql-gt", "Ql x=3 y=2 z=2 a=[2,2] c=[2,1] b=[1,2]"},
      {"Qnw-gt", "Qnw x=2 y=2 z=2 a=[2,2] c=[1,2] b=[1,2]"},
      {"Qne-lt", "Qne x=3 y=2 z=2 a=[1,2] c=[1,2] b=[2,2]"},
  };
  return v;
}

// ---- extremal lemmas ----


// Equal-count reduction for a region at its minimal y, or nullopt when none applies.
// Ferns must have positive terms (middle fern from its second term).
inline std::optional<RegionSpec> extremal_reduction(const RegionSpec& s) {
  if (!is_rq(s.family) || s.y != min_y(s)) return std::nullopt;
  if (!detail::all_positive(s.a) || !detail::all_positive(s.b) || !detail::all_positive(s.c, 1))
    return std::nullopt;
  const long A = total(s.a), B = total(s.b);
  auto drop_b = [&](Family f, long dy) -> std::optional<RegionSpec> {
    if (s.b.empty()) return std::nullopt;
    return RegionSpec{f, s.x, std::min(s.b[0], B - A) + dy, s.z, 0, s.a, seq_prepend_zero(s.c), tail(s.b, 1)};
  };
  auto drop_a = [&](Family f, long dy) -> std::optional<RegionSpec> {
    if (s.a.empty()) return std::nullopt;
    return RegionSpec{f, s.x, std::min(s.a[0], A - B) + dy, s.z, 0, tail(s.a, 1), s.c, s.b};
  };
  using F = Family;
  switch (s.family) {
    case F::Rc: return A <= B ? drop_b(F::Qc, 0) : drop_a(F::Qc, 0);
    case F::Rl: return A <= B ? drop_b(F::Ql, 0) : drop_a(F::Ql, 0);
    case F::Qc: return A <= B ? drop_b(F::Rc, 0) : drop_a(F::Rc, 0);
    case F::Ql: return A <= B ? drop_b(F::Rl, 0) : drop_a(F::Rl, 0);
    case F::Rsw:
      if (A <= B) {
        if (s.b.empty()) return std::nullopt;
        return RegionSpec{F::Qne, s.x, std::min(s.b[0], B - A), s.z, 0, tail(s.b, 1), seq_bar(s.c), s.a};
      }
      if (s.a.empty()) return std::nullopt;
      return RegionSpec{F::Qne, s.x, std::min(s.a[0], A - B) - 1, s.z, 0, s.b, seq_flip(s.c), tail(s.a, 1)};
    case F::Rnw: return A >= B ? drop_a(F::Qnw, 0) : drop_b(F::Qnw, -1);
    case F::Qnw: return A >= B ? drop_a(F::Rnw, 0) : drop_b(F::Rnw, -1);
    case F::Qne:
      if (A >= B) {
        if (s.a.empty()) return std::nullopt;
        return RegionSpec{F::Rsw, s.x, std::min(s.a[0], A - B), s.z, 0, s.b, seq_bar(s.c), tail(s.a, 1)};
      }
      if (s.b.empty()) return std::nullopt;
      return RegionSpec{F::Rsw, s.x, std::min(s.b[0], B - A) - 1, s.z, 0, tail(s.b, 1), seq_flip(s.c), s.a};
    default: return std::nullopt;
  }
}

// Lemma checks over the R/Q grid: forced lozenges, fern-line splitting at
// z=0 and x=0, zero elimination, and the minimal-y reductions.
struct LemmaReport {
  VerificationReport forced, split, base_case, zero_elim, reductions;
  VerificationReport total() const {
    VerificationReport t;
    for (auto* r : {&forced, &split, &base_case, &zero_elim, &reductions}) t.merge(*r);
    return t;
  }
};

namespace detail {

inline void record(VerificationReport& rep, const RegionSpec& s, const BigInt& l, const BigInt& r,
                   const std::string& what) {
  ++rep.instances_checked;
  if (l != r) rep.failures.push_back({format_spec(s), to_decimal(l), to_decimal(r), what});
}

// zero-elimination variants of a spec: a leading zero pair, a zero then a
// positive triangle in front, an interior zero.
inline std::vector<std::pair<std::string, RegionSpec>> zero_variants(const RegionSpec& s) {
  std::vector<std::pair<std::string, RegionSpec>> v;
  auto with_a = [&](FernSeq a) { RegionSpec r = s; r.a = std::move(a); return r; };
  auto with_c = [&](FernSeq c) { RegionSpec r = s; r.c = std::move(c); return r; };
  auto with_b = [&](FernSeq b) { RegionSpec r = s; r.b = std::move(b); return r; };
  v.push_back({"pair a", with_a(cat({{0, 0}, s.a}))});
  v.push_back({"pair b", with_b(cat({{0, 0}, s.b}))});
  for (long t : {1, 2}) {
    v.push_back({"prefix a", with_a(cat({{0, t}, s.a}))});
    v.push_back({"prefix b", with_b(cat({{0, t}, s.b}))});
  }
  for (size_t i = 0; i < s.a.size(); ++i) {
    FernSeq a = s.a;
    if (a[i] < 1) continue;
    // split a_i into (1, 0, a_i - 1)
    a[i] -= 1;
    a.insert(a.begin() + i, {1, 0});
    v.push_back({"interior a", with_a(a)});
  }
  for (size_t i = 0; i < s.c.size(); ++i) {
    FernSeq c = s.c;
    if (c[i] < 1) continue;
    c[i] -= 1;
    c.insert(c.begin() + i, {1, 0});
    v.push_back({"interior c", with_c(c)});
  }
  for (size_t i = 0; i < s.b.size(); ++i) {
    FernSeq b = s.b;
    if (b[i] < 1) continue;
    b[i] -= 1;
    b.insert(b.begin() + i, {1, 0});
    v.push_back({"interior b", with_b(b)});
  }
  return v;
}

}  // namespace detail

inline LemmaReport check_extremal_lemmas(const SweepBudget& b, const OracleConfig& cfg = {}) {
  LemmaReport L;
  detail::Stopwatch sw;
  for (Family fam : rq_families()) {
    for (auto& s : grid_specs(fam, b)) {
      Region r;
      try {
        r = build_region(s);
      } catch (const GeometryConflict&) {
        continue;
      }
      if (static_cast<long>(r.size()) > b.max_area) continue;
      BigInt m = count_tilings(r, cfg);

      ForcedResult fr = remove_forced_lozenges(r);
      detail::record(L.forced, s, m, fr.dead ? BigInt(0) : count_tilings(fr.region, cfg), "forced lozenges");

      if (s.x == 0 || s.z == 0) {
        try {
          Split sp = split_along_fern_line(r, s);
          BigInt u = count_tilings(sp.upper, cfg), l = count_tilings(sp.lower, cfg);
          detail::record(L.split, s, m, u * l, "fern-line split");
          if (s.z == 0) {
            BigInt prod = 1;
            for (auto& t : formula(s).terms)
              if (!t.is_gamma && t.name.rfind("s", 0) == 0) prod *= t.count;
            detail::record(L.base_case, s, u * l, prod, "z=0 halves vs s-terms");
          }
        } catch (const CutNotSeparating& e) {
          L.split.failures.push_back({format_spec(s), "", "", e.what()});
        }
      }

      for (auto& [tag, v] : detail::zero_variants(s)) {
        if (!validate_spec(v).empty()) continue;
        Region rv;
        try {
          rv = build_region(v);
        } catch (const GeometryConflict&) {
          continue;
        }
        if (tag.rfind("prefix", 0) == 0) {
          // forced lozenges strip the (0, t) prefix; y grows by the part of
          // t that made this fern the longer one
          bool left = tag.back() == 'a';
          long own = left ? total(v.a) - total(v.b) : total(v.b) - total(v.a);
          RegionSpec t = s;
          t.y += std::clamp(own, 0L, (left ? v.a : v.b)[1]);
          Region rt = build_region(t);
          detail::record(L.zero_elim, v, count_tilings(rv, cfg), count_tilings(rt, cfg), "zero elimination " + tag);
          if (h_param(t) >= h_param(v))
            L.zero_elim.failures.push_back({format_spec(v), "", "", "prefix removal does not lower h"});
        } else {
          detail::record(L.zero_elim, v, count_tilings(rv, cfg), m, "zero elimination " + tag);
        }
      }

      if (auto red = extremal_reduction(s)) {
        Region rr;
        try {
          rr = build_region(*red);
        } catch (const GeometryConflict& e) {
          L.reductions.failures.push_back({format_spec(s), format_spec(*red), "", e.what()});
          continue;
        }
        detail::record(L.reductions, s, m, count_tilings(rr, cfg), "reduction to " + format_spec(*red));
        if (h_param(*red) >= h_param(s))
          L.reductions.failures.push_back({format_spec(s), format_spec(*red), "", "reduction does not lower h"});
      }
    }
  }
  L.forced.elapsed = sw.seconds();
  return L;
}

// ---- Kuo's theorems on small graphs ----

// Cells touching the outside of a convex region, in cyclic order.
inline std::vector<TriCoord> outer_boundary_cycle(const Region& r) {
  double cx = 0, cy = 0;
  auto centre = [](const TriCoord& t) {
    double X = t.col + (t.up ? 1.0 / 3 : 2.0 / 3), h = t.row + (t.up ? 1.0 / 3 : 2.0 / 3);
    return std::pair<double, double>{X + h / 2, h * std::sqrt(3.0) / 2};
  };
  for (auto& t : r) {
    auto [px, py] = centre(t);
    cx += px;
    cy += py;
  }
  cx /= r.size();
  cy /= r.size();
  std::vector<std::pair<double, TriCoord>> b;
  for (auto& t : r) {
    bool edge = false;
    for (auto& n : neighbours(t))
      if (!r.count(n)) edge = true;
    if (!edge) continue;
    auto [px, py] = centre(t);
    b.push_back({std::atan2(py - cy, px - cx), t});
  }
  std::sort(b.begin(), b.end(), [](auto& p, auto& q) { return p.first < q.first; });
  std::vector<TriCoord> out;
  for (auto& [ang, t] : b) out.push_back(t);
  return out;
}

// Both condensation identities on random quadruples of outer-face cells.
inline VerificationReport check_kuo_theorems(const std::vector<Region>& graphs, int quads_per_graph,
                                             unsigned seed, const OracleConfig& cfg = {}) {
  detail::Stopwatch sw;
  VerificationReport rep;
  std::mt19937 rng(seed);
  auto M = [&](const Region& g, std::initializer_list<TriCoord> drop) {
    Region h = g;
    for (auto& t : drop) h.erase(t);
    return count_tilings(h, cfg);
  };
  for (auto& g : graphs) {
    auto cyc = outer_boundary_cycle(g);
    int done = 0;
    for (int tries = 0; done < quads_per_graph && tries < 200 * quads_per_graph; ++tries) {
      std::vector<size_t> idx(4);
      for (auto& i : idx) i = rng() % cyc.size();
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
      TriCoord u = cyc[idx[0]], v = cyc[idx[1]], w = cyc[idx[2]], s = cyc[idx[3]];
      std::string where = "graph of " + std::to_string(g.size()) + " cells";
      if (u.up == w.up && v.up == s.up && u.up != v.up) {
        BigInt l = M(g, {}) * M(g, {u, v, w, s});
        BigInt r = M(g, {u, v}) * M(g, {w, s}) + M(g, {u, s}) * M(g, {v, w});
        ++rep.instances_checked;
        ++done;
        if (l != r) rep.failures.push_back({where, to_decimal(l), to_decimal(r), "condensation, alternating colours"});
      } else if (u.up == v.up && w.up == s.up && u.up != w.up) {
        BigInt l = M(g, {u, s}) * M(g, {v, w});
        BigInt r = M(g, {}) * M(g, {u, v, w, s}) + M(g, {u, w}) * M(g, {v, s});
        ++rep.instances_checked;
        ++done;
        if (l != r) rep.failures.push_back({where, to_decimal(l), to_decimal(r), "condensation, adjacent colours"});
      }
    }
  }
  rep.elapsed = sw.seconds();
  return rep;
}

// ---- dual of MacMahon ----

struct DualRow {
  long N;
  double ratio;      // from log-gamma values
  double limit;
  double rel_error;  // from the exact ratio
  BigRat exact_ratio;
  bool exact_checked = false;  // float ratio compared with the exact one
  bool exact_agrees = false;
};

inline RegionSpec dual_region(long X, long Z, FernSeq a, FernSeq c, FernSeq b) {
  Family f = (X - Z) % 2 == 0 ? Family::Rc : Family::Rl;
  return RegionSpec{f, X, 0, Z, 0, std::move(a), std::move(c), std::move(b)};
}

inline std::vector<DualRow> check_dual_convergence(const FernSeq& a, const FernSeq& c, const FernSeq& b,
                                                   double x, double z, const std::vector<long>& Ns,
                                                   long exact_up_to = 12) {
  if (total(a) != total(b)) throw TotalsMismatch("dual experiment needs total(a) = total(b)");
  const BigRat limit(dual_limit_product(a, c, b));
  auto pair_of = [](const FernSeq& f) { return FernSeq{even_sum(f), odd_sum(f)}; };
  std::vector<DualRow> rows;
  for (long N : Ns) {
    long X = static_cast<long>(std::floor(x * N)), Z = static_cast<long>(std::floor(z * N));
    FormulaResult fn = formula(dual_region(X, Z, a, c, b));
    FormulaResult fd = formula(dual_region(X, Z, pair_of(a), pair_of(c), pair_of(b)));
    DualRow row;
    row.N = N;
    row.ratio = std::exp(fn.log_value() - fd.log_value());
    row.limit = limit.get_d();
    row.exact_ratio = BigRat(fn.value) / BigRat(fd.value);
    row.exact_ratio.canonicalize();
    BigRat err = (row.exact_ratio - limit) / limit;
    row.rel_error = std::fabs(err.get_d());
    if (N <= exact_up_to) {
      row.exact_checked = true;
      double e = row.exact_ratio.get_d();
      row.exact_agrees = std::fabs(e - row.ratio) <= 1e-9 * std::max(1.0, std::fabs(e));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fernlab
