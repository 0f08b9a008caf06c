#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "params.hpp"

namespace fernlab {

// Lattice points are (X, h) in skew coordinates: the Euclidean position is
// (X + h/2, h*sqrt(3)/2).  Row r is the strip between heights r and r+1,
// rows increase upward.  Up(r,c) has vertices (c,r),(c+1,r),(c,r+1);
// Down(r,c) has vertices (c,r+1),(c+1,r+1),(c+1,r).
struct TriCoord {
  long row = 0, col = 0;
  bool up = true;
  auto operator<=>(const TriCoord& o) const {
    return std::tie(row, col, o.up) <=> std::tie(o.row, o.col, up);
  }
  bool operator==(const TriCoord&) const = default;
};

inline std::vector<TriCoord> neighbours(const TriCoord& t) {
  if (t.up) return {{t.row, t.col - 1, false}, {t.row, t.col, false}, {t.row - 1, t.col, false}};
  return {{t.row, t.col, true}, {t.row, t.col + 1, true}, {t.row + 1, t.col, true}};
}

inline bool adjacent(const TriCoord& a, const TriCoord& b) {
  for (auto& n : neighbours(a))
    if (n == b) return true;
  return false;
}

using Region = std::set<TriCoord>;

struct Lozenge {
  TriCoord first;   // up
  TriCoord second;  // down
  auto operator<=>(const Lozenge&) const = default;
};

struct GeometryConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CutNotSeparating : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long count_up(const Region& r) {
  long n = 0;
  for (auto& t : r) n += t.up;
  return n;
}

inline bool is_balanced(const Region& r) { return 2 * count_up(r) == static_cast<long>(r.size()); }

constexpr long kInf = LONG_MAX / 4;

// Convex lattice polygon h0<=h<=h1, x0<=X<=x1, s0<=X+h<=s1.
struct Poly {
  long h0 = -kInf, h1 = kInf, x0 = -kInf, x1 = kInf, s0 = -kInf, s1 = kInf;

  void push_n(long t) { h1 += t; }
  void push_ne(long t) { s1 += t; }
  void push_se(long t) { x1 += t; }
  void push_s(long t) { h0 -= t; }
  void push_sw(long t) { s0 -= t; }
  void push_nw(long t) { x0 -= t; }

  // sides N, NE, SE, S, SW, NW
  std::vector<long> sides() const {
    return {s1 - h1 - x0, h1 + x1 - s1, s1 - x1 - h0, x1 - s0 + h0, s0 - x0 - h0, h1 - s0 + x0};
  }
  bool holds(long X, long h) const {
    return h0 <= h && h <= h1 && x0 <= X && X <= x1 && s0 <= X + h && X + h <= s1;
  }
  bool holds(const TriCoord& t) const {
    if (t.up) return holds(t.col, t.row) && holds(t.col + 1, t.row) && holds(t.col, t.row + 1);
    return holds(t.col, t.row + 1) && holds(t.col + 1, t.row + 1) && holds(t.col + 1, t.row);
  }
  // west vertex, east vertex
  std::pair<long, long> west() const { return {x0, s0 - x0}; }
  std::pair<long, long> east() const { return {x1, s1 - x1}; }
  long left_at(long h) const { return std::max(x0, s0 - h); }
  long right_at(long h) const { return std::min(x1, s1 - h); }
};

inline Poly hexagon(long n, long ne, long se, long s, long sw, long nw) {
  Poly p;
  p.h0 = 0;
  p.s0 = 0;
  p.x1 = s;
  p.x0 = -sw;
  p.s1 = s + se;
  p.h1 = ne + se;
  auto sd = p.sides();
  if (sd != std::vector<long>{n, ne, se, s, sw, nw})
    throw GeometryConflict("hexagon sides do not close");
  return p;
}

// side k, base on height h starting at X
inline Poly up_triangle(long X, long h, long k) { return Poly{h, h + k, X, X + k, X + h, X + h + k}; }

// side k, top side on height h starting at X
inline Poly down_triangle(long X, long h, long k) { return Poly{h - k, h, X, X + k, X + h, X + h + k}; }

// every unit triangle of a bounded polygon
inline Region cells(const Poly& p) {
  Region r;
  long hlo = p.h0, hhi = p.h1;
  for (long h = hlo; h < hhi; ++h) {
    long xlo = std::max(p.x0, p.s0 - h - 1), xhi = std::min(p.x1, p.s1 - h);
    for (long X = xlo; X <= xhi; ++X) {
      TriCoord u{h, X, true}, d{h, X, false};
      if (p.holds(u)) r.insert(u);
      if (p.holds(d)) r.insert(d);
    }
  }
  return r;
}

inline Region cells_within(const Poly& p, const Poly& bound) {
  Poly q = p;
  q.h0 = std::max(q.h0, bound.h0);
  q.h1 = std::min(q.h1, bound.h1);
  q.x0 = std::max(q.x0, bound.x0);
  q.x1 = std::min(q.x1, bound.x1);
  q.s0 = std::max(q.s0, bound.s0);
  q.s1 = std::min(q.s1, bound.s1);
  if (q.h0 > q.h1 || q.x0 > q.x1 || q.s0 > q.s1) return {};
  return cells(q);
}

// A piece of the fern line: a triangle (up or down) or a gap between ferns.
struct Piece {
  enum Kind { Up, Down, Gap } kind;
  long start, len;
};

struct Layout {
  Poly hex;
  long level = 0;
  bool has_line = false;
  std::vector<Piece> pieces;     // left to right along the fern line
  std::vector<Poly> extra_holes;  // other removed triangles (core, dents)
};

namespace detail {

inline void append_fern(std::vector<Piece>& out, long& X, const FernSeq& f, bool first_up) {
  for (size_t i = 0; i < f.size(); ++i) {
    bool up = (i % 2 == 0) == first_up;
    out.push_back({up ? Piece::Up : Piece::Down, X, f[i]});
    X += f[i];
  }
}

// right fern b is read from the right, b_1 up-pointing
inline void append_right_fern(std::vector<Piece>& out, long& X, const FernSeq& b) {
  for (size_t k = b.size(); k-- > 0;) {
    bool up = k % 2 == 0;
    out.push_back({up ? Piece::Up : Piece::Down, X, b[k]});
    X += b[k];
  }
}

inline long floor_half(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace detail

inline Layout layout_of(const RegionSpec& s) {
  require_valid(s);
  Layout L;
  const long A = total(s.a), B = total(s.b), C = total(s.c);
  const Family f = s.family;

  if (is_rq(f)) {
    const bool R = is_r(f);
    Poly hx = is_shifted(f) ? hexagon(s.x, s.z + 1, s.z, s.x, s.z + 1, s.z)
                            : hexagon(s.x, s.z, s.z, s.x, s.z, s.z);
    auto [wx, wh] = hx.west();
    auto [ex, eh] = hx.east();
    long cx2 = wx + ex, ch2 = wh + eh;
    switch (f) {
      case Family::Rl: case Family::Ql: cx2 -= 1; break;
      case Family::Rnw: case Family::Qnw: cx2 -= 1; ch2 += 1; break;
      case Family::Rsw: ch2 -= 1; break;
      case Family::Qne: ch2 += 1; break;
      default: break;
    }
    if (cx2 % 2 != 0 || ch2 % 2 != 0) throw GeometryConflict("middle fern off the lattice");
    const long midX = cx2 / 2, level = ch2 / 2;

    FernStats sa = fern_stats(s.a), sb = fern_stats(s.b), sc = fern_stats(s.c);
    if (R) {
      hx.push_n(sa.even_sum + sb.odd_sum + sc.odd_sum);
      hx.push_s(sa.odd_sum + sb.even_sum + sc.even_sum);
    } else {
      hx.push_n(sa.odd_sum + sb.odd_sum + sc.odd_sum);
      hx.push_s(sa.even_sum + sb.even_sum + sc.even_sum);
    }
    hx.push_ne(B + C);
    hx.push_se(B + C);
    hx.push_sw(A);
    hx.push_nw(A);
    const long y = s.y;
    if (R) {
      if (A > B) {
        hx.push_s(y + A - B); hx.push_se(y + A - B); hx.push_n(y); hx.push_nw(y);
      } else {
        hx.push_s(y); hx.push_se(y); hx.push_n(y + B - A); hx.push_nw(y + B - A);
      }
    } else {
      if (A <= B) {
        hx.push_se(y); hx.push_s(2 * y + B - A); hx.push_sw(y + B - A);
      } else {
        hx.push_se(y + A - B); hx.push_s(2 * y + A - B); hx.push_sw(y);
      }
    }
    for (long sd : hx.sides())
      if (sd < 0) throw GeometryConflict("negative hexagon side");
    L.hex = hx;
    L.level = level;
    L.has_line = true;
    long X = hx.left_at(level);
    detail::append_fern(L.pieces, X, s.a, !R);
    if (midX < X) throw GeometryConflict("left and middle ferns overlap");
    L.pieces.push_back({Piece::Gap, X, midX - X});
    X = midX;
    detail::append_fern(L.pieces, X, s.c, true);
    long right_start = hx.right_at(level) - B;
    if (right_start < X) throw GeometryConflict("middle and right ferns overlap");
    L.pieces.push_back({Piece::Gap, X, right_start - X});
    X = right_start;
    detail::append_right_fern(L.pieces, X, s.b);
  } else if (f == Family::H) {
    FernStats sa = fern_stats(s.a), sb = fern_stats(s.b), sc = fern_stats(s.c);
    long u = sa.odd_sum + sb.odd_sum + sc.odd_sum, d = sa.even_sum + sb.even_sum + sc.even_sum;
    Poly hx = hexagon(s.x + d, s.z + u, s.z + d, s.x + u, s.z + d, s.z + u);
    L.hex = hx;
    L.level = hx.west().second;
    L.has_line = true;
    long X = hx.west().first;
    detail::append_fern(L.pieces, X, s.a, true);
    long g1 = detail::floor_half(s.x + s.z), g2 = s.x + s.z - g1;
    L.pieces.push_back({Piece::Gap, X, g1});
    X += g1;
    detail::append_fern(L.pieces, X, s.c, true);
    L.pieces.push_back({Piece::Gap, X, g2});
    X += g2;
    detail::append_right_fern(L.pieces, X, s.b);
    if (X != hx.east().first) throw GeometryConflict("ferns do not span the W-E line");
  } else if (f == Family::B) {
    FernStats sc = fern_stats(s.c);
    long yz = s.y + s.z;
    Poly hx = hexagon(s.x + sc.even_sum, yz + sc.odd_sum, yz + sc.even_sum, s.x + sc.odd_sum,
                      yz + sc.even_sum, yz + sc.odd_sum);
    L.hex = hx;
    L.level = hx.west().second + s.z;
    L.has_line = true;
    long X = hx.left_at(L.level);
    long g = (s.x + s.y) / 2;
    L.pieces.push_back({Piece::Gap, X, g});
    X += g;
    detail::append_fern(L.pieces, X, s.c, true);
    L.pieces.push_back({Piece::Gap, X, g});
    X += g;
    if (X != hx.right_at(L.level)) throw GeometryConflict("fern not centred");
  } else if (f == Family::C) {
    Poly hx = hexagon(s.x, s.y, s.z, s.x, s.y, s.z);
    auto [wx, wh] = hx.west();
    auto [ex, eh] = hx.east();
    long cx2 = wx + ex, ch2 = wh + eh;
    bool px = s.x % 2, py = s.y % 2, pz = s.z % 2;
    // rounding of the centre, per odd-one-out side
    if (py == pz && px != py) cx2 -= 1;
    else if (px == pz && py != px) { cx2 += 1; ch2 -= 1; }
    else if (px == py && pz != px) ch2 += 1;
    hx.push_n(s.m);
    hx.push_ne(s.m);
    hx.push_se(s.m);
    L.hex = hx;
    L.extra_holes.push_back(up_triangle(cx2 / 2, ch2 / 2, s.m));
  } else if (f == Family::S) {
    FernStats sa = fern_stats(s.a);
    Poly p;
    p.h0 = 0;
    p.h1 = sa.odd_sum;
    p.x0 = 0;
    p.x1 = sa.total;
    p.s0 = 0;
    p.s1 = sa.total;
    L.hex = p;
    long X = 0;
    for (size_t i = 0; i < s.a.size(); ++i) {
      if (i % 2 == 0 && s.a[i] > 0) L.extra_holes.push_back(up_triangle(X, 0, s.a[i]));
      X += s.a[i];
    }
  } else {
    L.hex = hexagon(s.x, s.y, s.z, s.x, s.y, s.z);
  }
  for (long sd : L.hex.sides())
    if (sd < 0) throw GeometryConflict("negative hexagon side");
  return L;
}

inline Poly piece_poly(const Piece& p, long level) {
  return p.kind == Piece::Up ? up_triangle(p.start, level, p.len)
                             : down_triangle(p.start, level, p.len);
}

inline Region build_region(const Layout& L) {
  Region r = cells(L.hex);
  auto remove = [&](const Poly& hole) {
    for (auto& t : cells(hole)) {
      if (!L.hex.holds(t)) throw GeometryConflict("removed triangle leaves the hexagon");
      if (!r.count(t)) throw GeometryConflict("removed triangles overlap");
      r.erase(t);
    }
  };
  for (auto& p : L.pieces)
    if (p.kind != Piece::Gap && p.len > 0) remove(piece_poly(p, L.level));
  for (auto& h : L.extra_holes) remove(h);
  return r;
}

inline Region build_region(const RegionSpec& s) { return build_region(layout_of(s)); }

// T_{m,n}(positions): semihexagon of top m and height n with unit dents.
inline Region semihexagon_with_dents(long m, const std::vector<long>& positions) {
  long n = static_cast<long>(positions.size());
  Poly p;
  p.h0 = 0;
  p.h1 = n;
  p.x0 = 0;
  p.x1 = m + n;
  p.s0 = 0;
  p.s1 = m + n;
  Region r = cells(p);
  for (long x : positions) r.erase(TriCoord{0, x - 1, true});
  return r;
}

struct ForcedResult {
  Region region;
  long removed = 0;
  bool dead = false;  // some cell cannot be covered: the count is 0
  std::vector<Lozenge> lozenges;
};

inline ForcedResult remove_forced_lozenges(const Region& r) {
  ForcedResult res{r, 0, false, {}};
  Region& g = res.region;
  std::vector<TriCoord> work(g.begin(), g.end());
  while (!work.empty()) {
    TriCoord t = work.back();
    work.pop_back();
    if (!g.count(t)) continue;
    std::vector<TriCoord> nb;
    for (auto& n : neighbours(t))
      if (g.count(n)) nb.push_back(n);
    if (nb.empty()) {
      res.dead = true;
      return res;
    }
    if (nb.size() == 1) {
      TriCoord o = nb[0];
      g.erase(t);
      g.erase(o);
      ++res.removed;
      res.lozenges.push_back(t.up ? Lozenge{t, o} : Lozenge{o, t});
      for (auto& n : neighbours(o))
        if (g.count(n)) work.push_back(n);
    }
  }
  return res;
}

struct Split {
  Region upper, lower;
};

// Q must satisfy: every cell of Q next to the rest has one orientation,
// and Q is balanced.
inline Split split_region(const Region& r, const Region& q) {
  int seen = -1;
  for (auto& t : q) {
    for (auto& n : neighbours(t)) {
      if (r.count(n) && !q.count(n)) {
        int o = t.up ? 1 : 0;
        if (seen != -1 && seen != o) throw CutNotSeparating("mixed cell types along the cut");
        seen = o;
      }
    }
  }
  if (!is_balanced(q)) throw CutNotSeparating("sub-region is not balanced");
  Split s;
  s.upper = q;
  for (auto& t : r)
    if (!q.count(t)) s.lower.insert(t);
  return s;
}

inline Split split_along_fern_line(const Region& r, const RegionSpec& spec) {
  if (r.empty()) return {};
  Layout L = layout_of(spec);
  if (!L.has_line) throw CutNotSeparating("family has no fern line");
  Region q;
  for (auto& t : r)
    if (t.row >= L.level) q.insert(t);
  if (spec.x == 0) {
    // the gaps between ferns become up-pointing bumps given to the lower part
    for (auto& p : L.pieces)
      if (p.kind == Piece::Gap && p.len > 0)
        for (auto& t : cells_within(up_triangle(p.start, L.level, p.len), L.hex)) q.erase(t);
  }
  return split_region(r, q);
}

inline TriCoord rotate180(const TriCoord& t) { return {-t.row - 1, -t.col - 1, !t.up}; }

inline TriCoord reflect_vertical(const TriCoord& t) {
  return t.up ? TriCoord{t.row, -t.col - t.row - 1, true} : TriCoord{t.row, -t.col - t.row - 2, false};
}

inline TriCoord reflect_horizontal(const TriCoord& t) {
  return t.up ? TriCoord{-t.row - 1, t.col + t.row, false} : TriCoord{-t.row - 1, t.col + t.row + 1, true};
}

template <class F>
Region map_region(const Region& r, F f) {
  Region o;
  for (auto& t : r) o.insert(f(t));
  return o;
}

inline Region rotate180(const Region& r) { return map_region(r, [](const TriCoord& t) { return rotate180(t); }); }
inline Region reflect_vertical(const Region& r) {
  return map_region(r, [](const TriCoord& t) { return reflect_vertical(t); });
}
inline Region reflect_horizontal(const Region& r) {
  return map_region(r, [](const TriCoord& t) { return reflect_horizontal(t); });
}

// translate so the lowest row is 0 and the smallest column in it is 0
inline Region normalize(const Region& r) {
  if (r.empty()) return r;
  long mr = r.begin()->row, mc = kInf;
  for (auto& t : r)
    if (t.row == mr) mc = std::min(mc, t.col);
  return map_region(r, [&](const TriCoord& t) { return TriCoord{t.row - mr, t.col - mc, t.up}; });
}

inline std::string serialize(const Region& r) {
  std::ostringstream os;
  for (auto& t : r) os << t.row << ' ' << t.col << ' ' << (t.up ? 'U' : 'D') << '\n';
  return os.str();
}

inline Region deserialize(const std::string& text) {
  Region r;
  std::istringstream is(text);
  long row, col;
  char o;
  while (is >> row >> col >> o) {
    if (o != 'U' && o != 'D') throw std::invalid_argument("orientation must be U or D");
    r.insert({row, col, o == 'U'});
  }
  return r;
}

}  // namespace fernlab
