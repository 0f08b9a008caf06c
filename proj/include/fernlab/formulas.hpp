#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "exactnum.hpp"
#include "params.hpp"

namespace fernlab {

struct TotalsMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParityViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One factor of a product formula: either a gamma block or an integer count.
struct Term {
  std::string name;
  bool is_gamma = false;
  GammaProduct gamma;
  BigInt count = 1;
};

struct FormulaResult {
  BigInt value;
  GammaProduct gamma;  // product of all gamma blocks
  BigInt counts = 1;   // product of all integer factors
  std::vector<Term> terms;

  // natural log of the value, from lgamma; used where exact values get large
  double log_value() const { return std::log(counts.get_d()) + gamma.log_value(); }
};

namespace detail {

inline GammaProduct H(long n) { return hyperfactorial(n); }
inline GammaProduct H2(long twice_n) { return hyperfactorial2(twice_n); }
inline long fl2(long v) { return v >= 0 ? v / 2 : -((1 - v) / 2); }
inline long cl2(long v) { return -fl2(-v); }

class Builder {
 public:
  void gamma(std::string name, const GammaProduct& g) {
    r_.gamma *= g;
    r_.terms.push_back({std::move(name), true, g, 1});
  }
  void count(std::string name, const BigInt& v) {
    r_.counts *= v;
    r_.terms.push_back({std::move(name), false, {}, v});
  }
  void nest(const std::string& prefix, const FormulaResult& f) {
    for (auto t : f.terms) {
      t.name = prefix + t.name;
      if (t.is_gamma) r_.gamma *= t.gamma;
      else r_.counts *= t.count;
      r_.terms.push_back(std::move(t));
    }
  }
  FormulaResult finish() {
    if (r_.gamma.sqrt_pi_exponent() != 0)
      throw IrrationalResidue("sqrt(pi) exponent " + std::to_string(r_.gamma.sqrt_pi_exponent()));
    BigRat v = BigRat(r_.counts) * r_.gamma.to_rational();
    v.canonicalize();
    if (v.get_den() != 1) throw std::logic_error("formula value is not an integer: " + to_decimal(v));
    r_.value = v.get_num();
    return std::move(r_);
  }

 private:
  FormulaResult r_;
};

// pad to even length and give empty ferns two zero triangles, so that
// a_m, c_1, c_k, b_n always exist in the s-argument lists
inline FernSeq formula_fern(const FernSeq& f) {
  FernSeq g = pad_even(f);
  if (g.empty()) g = {0, 0};
  return g;
}

}  // namespace detail

inline BigInt macmahon_P(long a, long b, long c) {
  using detail::H;
  GammaProduct g = H(a) * H(b) * H(c) * H(a + b + c) / (H(a + b) * H(b + c) * H(c + a));
  return g.to_rational().get_num();
}

// Cohn-Larsen-Propp: tilings of the semihexagon with unit dents at the given
// positions along the base.  Only differences of positions matter.
inline BigInt clp_count(const std::vector<long>& positions) {
  BigInt num = 1, den = 1;
  for (size_t j = 0; j < positions.size(); ++j)
    for (size_t i = 0; i < j; ++i) {
      num *= positions[j] - positions[i];
      den *= static_cast<long>(j - i);
    }
  return num / den;
}

// Dents occupy the odd-indexed runs of the sequence read along the base.
inline std::vector<long> dent_positions(const FernSeq& f) {
  std::vector<long> pos;
  long t = 0;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0) throw std::invalid_argument("negative term in s-argument");
    if (i % 2 == 0)
      for (long k = 1; k <= f[i]; ++k) pos.push_back(t + k);
    t += f[i];
  }
  return pos;
}

inline BigInt s_dented(const FernSeq& f) { return clp_count(dent_positions(f)); }

// Cored hexagon as printed, valid when y and z have the same parity.
inline FormulaResult cored_hexagon_raw(long x, long y, long z, long m) {
  using detail::H;
  using detail::H2;
  using detail::fl2;
  using detail::cl2;
  if ((y - z) % 2 != 0) throw ParityViolation("cored hexagon: y and z must share parity");
  detail::Builder bld;
  const long yz = (y + z) / 2, s = x + y + z;
  bld.gamma("core:outer", H(m + x) * H(m + y) * H(m + z) * H(m + s) /
                              (H(m + x + y) * H(m + y + z) * H(m + z + x)));
  bld.gamma("core:mid", H(m + fl2(s)) * H(m + cl2(s)) /
                            (H(m + cl2(x + y)) * H(m + yz) * H(m + fl2(z + x))));
  GammaProduct num = H2(m).pow(2), den;
  for (long v : {x, y, z}) {
    num *= H(fl2(v)) * H(cl2(v));
    den *= H2(m + 2 * fl2(v)) * H2(m + 2 * cl2(v));
  }
  bld.gamma("core:halves", num / den);
  bld.gamma("core:pairs",
            H2(m + 2 * fl2(x + y)) * H2(m + 2 * cl2(x + y)) * H2(m + 2 * yz).pow(2) *
                H2(m + 2 * fl2(z + x)) * H2(m + 2 * cl2(z + x)) /
                (H2(m + 2 * fl2(s)) * H2(m + 2 * cl2(s)) * H(fl2(x + y)) * H(yz) * H(cl2(z + x))));
  return bld.finish();
}

inline FormulaResult cored_hexagon(long x, long y, long z, long m) {
  if ((y - z) % 2 == 0) return cored_hexagon_raw(x, y, z, m);
  if ((x - y) % 2 == 0) return cored_hexagon_raw(z, x, y, m);
  return cored_hexagon_raw(y, z, x, m);
}

inline BigInt cored_hexagon_count(long x, long y, long z, long m) {
  return cored_hexagon(x, y, z, m).value;
}

namespace detail {

// For the shifted families the middle side gains 1 and the core is rounded
// the mirror way, which is C_{z,y+1,x} under the dispatch above.
inline FormulaResult shifted_core(long x, long y, long z, long m, long shift) {
  return shift ? cored_hexagon(z, y + 1, x, m) : cored_hexagon(x, y, z, m);
}

inline FernSeq cat(std::initializer_list<FernSeq> parts) {
  FernSeq r;
  for (auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return r;
}
inline FernSeq slice(const FernSeq& f, size_t from, size_t to) {
  return FernSeq(f.begin() + from, f.begin() + to);
}
inline FernSeq reversed(FernSeq f) {
  std::reverse(f.begin(), f.end());
  return f;
}

// (pre, a_1..a_m, g1, c_1..c_k + g2 + b_n, b_{n-1}..b_1)
inline FernSeq upper_with_prefix(long pre, const FernSeq& a, long g1, const FernSeq& c, long g2,
                                 const FernSeq& b) {
  FernSeq mid = c;
  mid.back() += g2 + b.back();
  return cat({{pre}, a, {g1}, mid, reversed(slice(b, 0, b.size() - 1))});
}
// (a_1..a_m + g1, c_1..c_k + g2 + b_n, b_{n-1}..b_1)
inline FernSeq upper_plain(const FernSeq& a, long g1, const FernSeq& c, long g2, const FernSeq& b) {
  FernSeq left = a, mid = c;
  left.back() += g1;
  mid.back() += g2 + b.back();
  return cat({left, mid, reversed(slice(b, 0, b.size() - 1))});
}
// (a_1..a_{m-1}, a_m + g1 + c_1, c_2..c_k, g2, b_n..b_1, suf)
inline FernSeq lower_with_suffix(const FernSeq& a, long g1, const FernSeq& c, long g2,
                                 const FernSeq& b, long suf) {
  FernSeq joined = slice(a, 0, a.size() - 1);
  joined.push_back(a.back() + g1 + c.front());
  return cat({joined, slice(c, 1, c.size()), {g2}, reversed(b), {suf}});
}
// (pre, a_1..a_m, g1 + c_1, c_2..c_k, g2, b_n..b_1, suf)
inline FernSeq lower_both(long pre, const FernSeq& a, long g1, const FernSeq& c, long g2,
                          const FernSeq& b, long suf) {
  FernSeq mid = c;
  mid.front() += g1;
  return cat({{pre}, a, mid, {g2}, reversed(b), {suf}});
}

inline void add_s(Builder& bld, const std::string& name, const FernSeq& args) {
  bld.count(name + format_seq(args), s_dented(args));
}

}  // namespace detail

inline FormulaResult r_region_formula(const RegionSpec& spec) {
  using detail::H;
  require_valid(spec);
  if (!is_r(spec.family)) throw std::invalid_argument("not an R family");
  const FernSeq a = detail::formula_fern(spec.a), b = detail::formula_fern(spec.b),
                c = detail::formula_fern(spec.c);
  const FernStats sa = fern_stats(a), sb = fern_stats(b), sc = fern_stats(c);
  const long x = spec.x, y = spec.y, z = spec.z;
  const long A = sa.total, B = sb.total, C = sc.total, M = std::max(A, B), mn = std::min(A, B);
  const Family f = spec.family;
  const long nw = f == Family::Rnw, sw = f == Family::Rsw, shift = nw + sw;
  const long gl = detail::fl2(x + z), gr = detail::cl2(x + z);
  const long g2 = f == Family::Rsw ? gr : gl;  // argument of the second H ratio

  detail::Builder bld;
  bld.nest("C: ", detail::shifted_core(x, 2 * y + z + 2 * M, z, C, shift));
  detail::add_s(bld, "s+", detail::upper_with_prefix(y + B - mn + sw, a, gl, c, gr, b));
  detail::add_s(bld, "s-", detail::lower_with_suffix(a, gl, c, gr, b, y + A - mn + nw));
  bld.gamma("ratio:c", H(C + gl) / (H(C) * H(gl)));
  bld.gamma("ratio:max", H(M + y + g2) / H(M + C + y + g2));
  const long p = M - sa.odd_sum + sb.odd_sum + sc.odd_sum, q = M + sa.odd_sum - sb.odd_sum + sc.even_sum;
  bld.gamma("block:yz", H(M + y + z + nw) * H(M + C + y + z + sw) /
                            (H(p + y + z + sw) * H(q + y + z + nw)));
  bld.gamma("block:y", H(p + y + sw) * H(q + y + nw) / (H(M + y) * H(M + y + shift)));
  return bld.finish();
}

inline FormulaResult q_region_formula(const RegionSpec& spec) {
  using detail::H;
  require_valid(spec);
  if (!is_q(spec.family)) throw std::invalid_argument("not a Q family");
  const FernSeq a = detail::formula_fern(spec.a), b = detail::formula_fern(spec.b),
                c = detail::formula_fern(spec.c);
  const FernStats sa = fern_stats(a), sb = fern_stats(b), sc = fern_stats(c);
  const long x = spec.x, y = spec.y, z = spec.z;
  const long A = sa.total, B = sb.total, C = sc.total, M = std::max(A, B), mn = std::min(A, B);
  const Family f = spec.family;
  const long nw = f == Family::Qnw, ne = f == Family::Qne, shift = nw + ne;
  const long fl = detail::fl2(x + z), cl = detail::cl2(x + z);
  const long g1 = ne ? cl : fl, g2 = ne ? fl : cl;
  const long gm = ne ? cl : fl;  // argument of the second H ratio

  detail::Builder bld;
  bld.nest("C: ", detail::shifted_core(x, 2 * y + z + 2 * M, z, C, shift));
  detail::add_s(bld, "s+", detail::upper_plain(a, g1, c, g2, b));
  detail::add_s(bld, "s-", detail::lower_both(y + B - mn, a, g1, c, g2, b, y + A - mn + shift));
  bld.gamma("ratio:c", H(C + fl) / (H(C) * H(fl)));
  bld.gamma("ratio:max", H(M + y + gm) / H(M + C + y + gm));
  const long o = sa.odd_sum + sb.odd_sum + sc.odd_sum;
  const long e = std::labs(A - B) + sa.even_sum + sb.even_sum + sc.even_sum + 2 * y + shift;
  bld.gamma("block:z", H(M + y + z + nw) * H(M + C + y + z + ne) / (H(o + z) * H(e + z)));
  bld.gamma("block:0", H(o) * H(e) / (H(M + y) * H(M + y + shift)));
  return bld.finish();
}

inline FormulaResult h_region_formula(const RegionSpec& spec) {
  using detail::H;
  if (total(spec.a) != total(spec.b)) throw TotalsMismatch("H region needs total(a) = total(b)");
  require_valid(spec);
  const FernSeq a = detail::formula_fern(spec.a), b = detail::formula_fern(spec.b),
                c = detail::formula_fern(spec.c);
  const FernStats sa = fern_stats(a), sb = fern_stats(b), sc = fern_stats(c);
  const long x = spec.x, z = spec.z, A = sa.total, C = sc.total;
  const long g1 = detail::fl2(x + z), g2 = detail::cl2(x + z);
  // all three ferns start up-pointing
  const long u = sa.odd_sum + sb.odd_sum + sc.odd_sum, d = sa.even_sum + sb.even_sum + sc.even_sum;

  detail::Builder bld;
  bld.nest("C: ", cored_hexagon(x, z + 2 * A, z, C));
  detail::add_s(bld, "S+", detail::upper_plain(a, g1, c, g2, b));
  detail::add_s(bld, "S-", detail::lower_both(0, a, g1, c, g2, b, 0));
  bld.gamma("ratio:c", H(C + g1) / (H(C) * H(g1)));
  bld.gamma("ratio:a", H(A + g1) / H(A + C + g1));
  bld.gamma("block:z", H(A + z) * H(A + C + z) / (H(u + z) * H(d + z)));
  bld.gamma("block:0", H(u) * H(d) / H(A).pow(2));
  return bld.finish();
}

inline FormulaResult b_region_formula(const RegionSpec& spec) {
  using detail::H;
  if ((spec.x - spec.y) % 2 != 0) throw ParityViolation("B region needs x ≡ y");
  require_valid(spec);
  const FernSeq c = detail::formula_fern(spec.c);
  const FernStats sc = fern_stats(c);
  const long x = spec.x, y = spec.y, z = spec.z, C = sc.total, g = (x + y) / 2;

  detail::Builder bld;
  bld.nest("C: ", cored_hexagon(x, y + 2 * z, y, C));
  detail::add_s(bld, "s", detail::slice(c, 0, c.size() - 1));
  FernSeq mid = c;
  mid.front() += g;
  detail::add_s(bld, "s", detail::cat({{z}, mid, {g, z}}));
  bld.gamma("ratio:c", H(C + g) / (H(C) * H(g)));
  bld.gamma("ratio:z", H(z + g) / H(z + C + g));
  bld.gamma("block:y", H(y + z) * H(C + y + z) / (H(sc.odd_sum + y) * H(sc.even_sum + y + 2 * z)));
  bld.gamma("block:0", H(sc.odd_sum) * H(sc.even_sum + 2 * z) / H(z).pow(2));
  return bld.finish();
}

// Closed form for any family; S uses the position-set product directly.
inline FormulaResult formula(const RegionSpec& spec) {
  require_valid(spec);
  switch (spec.family) {
    case Family::Hex: {
      detail::Builder bld;
      bld.count("P(x,y,z)", macmahon_P(spec.x, spec.y, spec.z));
      return bld.finish();
    }
    case Family::C: return cored_hexagon(spec.x, spec.y, spec.z, spec.m);
    case Family::S: {
      detail::Builder bld;
      detail::add_s(bld, "s", spec.a);
      return bld.finish();
    }
    case Family::H: return h_region_formula(spec);
    case Family::B: return b_region_formula(spec);
    default: return is_r(spec.family) ? r_region_formula(spec) : q_region_formula(spec);
  }
}

inline BigInt r_region_count(const RegionSpec& s) { return r_region_formula(s).value; }
inline BigInt q_region_count(const RegionSpec& s) { return q_region_formula(s).value; }
inline BigInt h_region_count(const RegionSpec& s) { return h_region_formula(s).value; }
inline BigInt b_region_count(const RegionSpec& s) { return b_region_formula(s).value; }

inline BigInt dual_limit_product(const FernSeq& a, const FernSeq& c, const FernSeq& b) {
  if (total(a) != total(b)) throw TotalsMismatch("dual limit needs total(a) = total(b)");
  BigInt r = 1;
  for (const FernSeq* f : {&a, &b, &c}) {
    if (f->empty()) continue;
    r *= s_dented(detail::slice(*f, 0, f->size() - 1));
    r *= s_dented(detail::slice(*f, 1, f->size()));
  }
  return r;
}

}  // namespace fernlab
