#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fernlab {

using FernSeq = std::vector<long>;

struct FernStats {
  long total = 0, odd_sum = 0, even_sum = 0;
  // sizes of up/down triangles given the orientation of the first one
  long up_sum(bool first_up) const { return first_up ? odd_sum : even_sum; }
  long down_sum(bool first_up) const { return first_up ? even_sum : odd_sum; }
};

inline FernStats fern_stats(const FernSeq& f) {
  FernStats s;
  for (size_t i = 0; i < f.size(); ++i) {
    s.total += f[i];
    (i % 2 == 0 ? s.odd_sum : s.even_sum) += f[i];
  }
  return s;
}

inline long total(const FernSeq& f) { return fern_stats(f).total; }
inline long odd_sum(const FernSeq& f) { return fern_stats(f).odd_sum; }
inline long even_sum(const FernSeq& f) { return fern_stats(f).even_sum; }

inline FernSeq seq_plus_one(FernSeq f) {
  if (f.size() % 2 == 0 && !f.empty()) ++f.back();
  else f.push_back(1);
  return f;
}

// plus-one taken with the opposite parity: odd length → last term incremented,
// even length → a new term 1 appended
inline FernSeq seq_plus_one_shifted(FernSeq f) {
  if (f.size() % 2 == 1) ++f.back();
  else f.push_back(1);
  return f;
}

inline FernSeq seq_prepend_zero(FernSeq f) {
  f.insert(f.begin(), 0);
  return f;
}

inline FernSeq seq_bar(FernSeq f) {
  std::reverse(f.begin(), f.end());
  if (f.size() % 2 == 1) f.insert(f.begin(), 0);
  return f;
}

inline FernSeq seq_flip(FernSeq f) {
  std::reverse(f.begin(), f.end());
  if (f.size() % 2 == 0 && !f.empty()) f.insert(f.begin(), 0);
  return f;
}

inline FernSeq pad_even(FernSeq f) {
  if (f.size() % 2 == 1) f.push_back(0);
  return f;
}

inline FernSeq tail(const FernSeq& f, size_t from) {
  if (from >= f.size()) return {};
  return FernSeq(f.begin() + from, f.end());
}

enum class Family { Rc, Rl, Rnw, Rsw, Qc, Ql, Qnw, Qne, H, B, S, C, Hex };

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> v = {
      {Family::Rc, "Rc"},   {Family::Rl, "Rl"},   {Family::Rnw, "Rnw"}, {Family::Rsw, "Rsw"},
      {Family::Qc, "Qc"},   {Family::Ql, "Ql"},   {Family::Qnw, "Qnw"}, {Family::Qne, "Qne"},
      {Family::H, "H"},     {Family::B, "B"},     {Family::S, "S"},     {Family::C, "C"},
      {Family::Hex, "Hex"}};
  return v;
}

inline std::string family_name(Family f) {
  for (auto& [k, n] : family_names())
    if (k == f) return n;
  return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
  for (auto& [k, n] : family_names())
    if (n == s) return k;
  return std::nullopt;
}

inline bool is_r(Family f) {
  return f == Family::Rc || f == Family::Rl || f == Family::Rnw || f == Family::Rsw;
}
inline bool is_q(Family f) {
  return f == Family::Qc || f == Family::Ql || f == Family::Qnw || f == Family::Qne;
}
inline bool is_rq(Family f) { return is_r(f) || is_q(f); }
// families whose auxiliary hexagon is (x, z+1, z, x, z+1, z)
inline bool is_shifted(Family f) {
  return f == Family::Rnw || f == Family::Rsw || f == Family::Qnw || f == Family::Qne;
}
// families requiring x and z of equal parity
inline bool same_parity_family(Family f) {
  return f == Family::Rc || f == Family::Rnw || f == Family::Qc || f == Family::Qnw;
}

struct RegionSpec {
  Family family = Family::Hex;
  long x = 0, y = 0, z = 0, m = 0;
  FernSeq a, c, b;
  bool operator==(const RegionSpec&) const = default;
};

struct InvalidSpec : std::runtime_error {
  std::vector<std::string> violations;
  explicit InvalidSpec(std::vector<std::string> v)
      : std::runtime_error(v.empty() ? "invalid spec" : v.front()), violations(std::move(v)) {}
};

inline long min_y(const RegionSpec& s) {
  long A = total(s.a), B = total(s.b);
  switch (s.family) {
    case Family::Rnw: return B > A ? -1 : 0;
    case Family::Rsw: return A > B ? -1 : 0;
    case Family::Qnw:
    case Family::Qne: return A < B ? -1 : 0;
    default: return 0;
  }
}

inline std::vector<std::string> validate_spec(const RegionSpec& s) {
  std::vector<std::string> v;
  auto nonneg = [&](const FernSeq& f, const char* name) {
    for (long t : f)
      if (t < 0) {
        v.push_back(std::string("negative term in ") + name);
        return;
      }
  };
  nonneg(s.a, "a");
  nonneg(s.b, "b");
  nonneg(s.c, "c");
  if (s.x < 0) v.push_back("x must be nonnegative");
  if (s.z < 0) v.push_back("z must be nonnegative");
  if (s.m < 0) v.push_back("m must be nonnegative");
  Family f = s.family;
  if (is_rq(f)) {
    bool same = (s.x - s.z) % 2 == 0;
    if (same_parity_family(f) && !same) v.push_back("parity: x ≡ z required");
    if (!same_parity_family(f) && same) v.push_back("parity: x ≢ z required");
    if (s.y < min_y(s)) v.push_back("y below minimum " + std::to_string(min_y(s)));
  } else {
    if (s.y < 0) v.push_back("y must be nonnegative");
  }
  if (f == Family::B && (s.x - s.y) % 2 != 0) v.push_back("parity: x ≡ y required");
  if (f == Family::H && total(s.a) != total(s.b)) v.push_back("totals: a = b required");
  return v;
}

inline void require_valid(const RegionSpec& s) {
  auto v = validate_spec(s);
  if (!v.empty()) throw InvalidSpec(v);
}

inline long quasi_perimeter(const RegionSpec& s) {
  if (!is_rq(s.family)) throw std::invalid_argument("quasi-perimeter defined for R and Q families");
  long A = total(s.a), B = total(s.b);
  long p = 2 * s.x + 4 * s.y + 4 * s.z + 3 * A + 3 * B + 2 * std::labs(A - B);
  if (is_shifted(s.family)) p += 2;
  return p;
}

inline long h_param(const RegionSpec& s) { return quasi_perimeter(s) + s.x + s.z; }

inline std::string format_seq(const FernSeq& f) {
  std::string r = "[";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) r += ",";
    r += std::to_string(f[i]);
  }
  return r + "]";
}

inline std::string format_spec(const RegionSpec& s) {
  std::ostringstream os;
  os << family_name(s.family) << " x=" << s.x << " y=" << s.y << " z=" << s.z << " a="
     << format_seq(s.a) << " c=" << format_seq(s.c) << " b=" << format_seq(s.b);
  if (s.family == Family::C || s.m != 0) os << " m=" << s.m;
  return os.str();
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline FernSeq parse_seq(const std::string& text) {
  static const std::regex re(R"(^\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]$)");
  if (!std::regex_match(text, re)) throw ParseError("bad sequence: " + text);
  FernSeq f;
  std::string body = text.substr(1, text.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) f.push_back(std::stol(item));
  return f;
}

inline RegionSpec parse_spec(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  if (!(is >> tok)) throw ParseError("empty spec");
  auto fam = family_from_name(tok);
  if (!fam) throw ParseError("unknown family: " + tok);
  RegionSpec s;
  s.family = *fam;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "a") s.a = parse_seq(val);
      else if (key == "b") s.b = parse_seq(val);
      else if (key == "c") s.c = parse_seq(val);
      else {
        size_t used = 0;
        long n = std::stol(val, &used);
        if (used != val.size()) throw ParseError("bad integer: " + val);
        if (key == "x") s.x = n;
        else if (key == "y") s.y = n;
        else if (key == "z") s.z = n;
        else if (key == "m") s.m = n;
        else throw ParseError("unknown key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for " + key + ": " + val);
    } catch (const std::out_of_range&) {
      throw ParseError("value out of range for " + key);
    }
  }
  return s;
}

}  // namespace fernlab
