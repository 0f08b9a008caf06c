#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "exactnum.hpp"
#include "lattice.hpp"

namespace fernlab {

// Auto: profile DP on small regions, the determinant on large ones.
enum class Backend { ProfileDP, SignedDeterminant, Auto };

struct AreaCeilingExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  long max_area = 200;
  Backend backend = Backend::ProfileDP;
};

namespace detail {

// cells ordered row by row, left to right
inline std::vector<TriCoord> scan_order(const Region& r) {
  std::vector<TriCoord> v(r.begin(), r.end());
  std::sort(v.begin(), v.end(), [](const TriCoord& a, const TriCoord& b) {
    long pa = 2 * a.col + (a.up ? 0 : 1), pb = 2 * b.col + (b.up ? 0 : 1);
    return a.row != b.row ? a.row < b.row : pa < pb;
  });
  return v;
}

inline std::vector<TriCoord> forward_neighbours(const TriCoord& t) {
  if (t.up) return {{t.row, t.col, false}};
  return {{t.row, t.col + 1, true}, {t.row + 1, t.col, true}};
}

using Mask = unsigned __int128;

struct MaskHash {
  size_t operator()(const Mask& m) const {
    uint64_t lo = static_cast<uint64_t>(m), hi = static_cast<uint64_t>(m >> 64);
    return std::hash<uint64_t>()(lo * 0x9E3779B97F4A7C15ULL ^ hi);
  }
};

}  // namespace detail

inline BigInt count_profile_dp(const Region& r) {
  if (r.empty()) return 1;
  if (!is_balanced(r)) return 0;
  auto order = detail::scan_order(r);
  std::map<TriCoord, long> index;
  for (size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<long>(i);
  std::vector<std::vector<long>> fwd(order.size());
  for (size_t i = 0; i < order.size(); ++i)
    for (auto& n : detail::forward_neighbours(order[i])) {
      auto it = index.find(n);
      if (it == index.end()) continue;
      long d = it->second - static_cast<long>(i);
      if (d <= 0 || d >= 128) throw AreaCeilingExceeded("profile wider than 127 cells");
      fwd[i].push_back(d);
    }
  using detail::Mask;
  std::unordered_map<Mask, BigInt, detail::MaskHash> cur, next;
  cur[0] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    next.clear();
    for (auto& [mask, cnt] : cur) {
      if (mask & 1) {
        next[mask >> 1] += cnt;
        continue;
      }
      for (long d : fwd[i]) {
        Mask bit = Mask(1) << d;
        if (mask & bit) continue;
        next[(mask | bit) >> 1] += cnt;
      }
    }
    std::swap(cur, next);
    if (cur.empty()) return 0;
  }
  auto it = cur.find(0);
  return it == cur.end() ? BigInt(0) : it->second;
}

inline std::vector<std::vector<Lozenge>> enumerate_tilings(const Region& r, long limit) {
  std::vector<std::vector<Lozenge>> out;
  if (!is_balanced(r)) return out;
  auto order = detail::scan_order(r);
  Region left = r;
  std::vector<Lozenge> cur;
  std::function<void(size_t)> go = [&](size_t i) {
    while (i < order.size() && !left.count(order[i])) ++i;
    if (i == order.size()) {
      if (static_cast<long>(out.size()) >= limit) throw LimitExceeded("more tilings than the limit");
      out.push_back(cur);
      return;
    }
    TriCoord t = order[i];
    for (auto& n : detail::forward_neighbours(t)) {
      if (!left.count(n)) continue;
      left.erase(t);
      left.erase(n);
      cur.push_back(t.up ? Lozenge{t, n} : Lozenge{n, t});
      go(i + 1);
      cur.pop_back();
      left.insert(t);
      left.insert(n);
    }
  };
  go(0);
  return out;
}

// One tiling by augmenting paths, or nullopt when none exists.
inline std::optional<std::vector<Lozenge>> find_tiling(const Region& r) {
  if (!is_balanced(r)) return std::nullopt;
  std::map<TriCoord, TriCoord> match;  // down -> up
  std::set<TriCoord> seen;
  std::function<bool(const TriCoord&)> augment = [&](const TriCoord& u) {
    for (auto& d : neighbours(u)) {
      if (!r.count(d) || seen.count(d)) continue;
      seen.insert(d);
      auto it = match.find(d);
      if (it == match.end() || augment(it->second)) {
        match[d] = u;
        return true;
      }
    }
    return false;
  };
  for (auto& t : r) {
    if (!t.up) continue;
    seen.clear();
    if (!augment(t)) return std::nullopt;
  }
  std::vector<Lozenge> out;
  for (auto& [d, u] : match) out.push_back({u, d});
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Fraction-free elimination; returns det of a square integer matrix.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Dual graph with deletable edges; the embedding is the lattice one.
struct DualGraph {
  std::map<TriCoord, std::vector<TriCoord>> adj;

  explicit DualGraph(const Region& r) {
    for (auto& t : r) {
      auto& v = adj[t];
      for (auto& n : neighbours(t))
        if (r.count(n)) v.push_back(n);
    }
  }
  void erase_edge(const TriCoord& a, const TriCoord& b) {
    auto& va = adj[a];
    va.erase(std::remove(va.begin(), va.end(), b), va.end());
    auto& vb = adj[b];
    vb.erase(std::remove(vb.begin(), vb.end(), a), vb.end());
  }
  void erase_vertex(const TriCoord& a) {
    for (auto& n : std::vector<TriCoord>(adj[a])) erase_edge(a, n);
    adj.erase(a);
  }
};

// neighbours in counter-clockwise order of direction
inline std::vector<TriCoord> ccw_neighbours(const TriCoord& t) {
  if (t.up) return {{t.row, t.col, false}, {t.row, t.col - 1, false}, {t.row - 1, t.col, false}};
  return {{t.row + 1, t.col, true}, {t.row, t.col, true}, {t.row, t.col + 1, true}};
}

// Removes forced pairs and bridges.  Returns false if no perfect matching exists.
inline bool simplify(DualGraph& g) {
  for (;;) {
    bool changed = false;
    for (auto it = g.adj.begin(); it != g.adj.end();) {
      if (it->second.empty()) return false;
      if (it->second.size() == 1) {
        TriCoord a = it->first, b = it->second[0];
        g.erase_vertex(a);
        g.erase_vertex(b);
        changed = true;
        it = g.adj.begin();
        continue;
      }
      ++it;
    }
    if (g.adj.empty()) return true;
    // bridges by DFS lowlink
    std::map<TriCoord, long> tin, low;
    long timer = 0;
    std::vector<std::pair<TriCoord, TriCoord>> bridges;
    std::function<void(const TriCoord&, const TriCoord*)> dfs = [&](const TriCoord& v, const TriCoord* p) {
      tin[v] = low[v] = timer++;
      for (auto& w : g.adj[v]) {
        if (p && w == *p) continue;
        if (tin.count(w)) low[v] = std::min(low[v], tin[w]);
        else {
          dfs(w, &v);
          low[v] = std::min(low[v], low[w]);
          if (low[w] > tin[v]) bridges.push_back({v, w});
        }
      }
    };
    for (auto& [v, _] : g.adj)
      if (!tin.count(v)) dfs(v, nullptr);
    if (bridges.empty()) {
      if (!changed) return true;
      continue;
    }
    auto [u, v] = bridges.front();
    g.erase_edge(u, v);
    // side of u after deleting the bridge
    std::set<TriCoord> side{u};
    std::vector<TriCoord> st{u};
    while (!st.empty()) {
      TriCoord t = st.back();
      st.pop_back();
      for (auto& w : g.adj[t])
        if (side.insert(w).second) st.push_back(w);
    }
    long bal = 0;
    for (auto& t : side) bal += t.up ? 1 : -1;
    if (bal == 0) continue;
    if (bal == (u.up ? 1 : -1)) {
      g.erase_vertex(u);
      g.erase_vertex(v);
      continue;
    }
    return false;
  }
}

// Edge signs such that every bounded face of length 2k carries k+1 minus signs mod 2.
inline std::map<std::pair<TriCoord, TriCoord>, int> kasteleyn_signs(const DualGraph& g) {
  std::vector<std::pair<TriCoord, TriCoord>> edges;
  std::map<std::pair<TriCoord, TriCoord>, size_t> eid;
  for (auto& [t, nb] : g.adj)
    if (t.up)
      for (auto& n : nb) {
        eid[{t, n}] = edges.size();
        edges.push_back({t, n});
      }
  auto id_of = [&](const TriCoord& a, const TriCoord& b) { return a.up ? eid.at({a, b}) : eid.at({b, a}); };
  auto present = [&](const TriCoord& a, const TriCoord& b) {
    auto& v = g.adj.at(a);
    return std::find(v.begin(), v.end(), b) != v.end();
  };
  // 3x skew coordinates of centroids
  auto pos = [](const TriCoord& t) -> std::pair<long, long> {
    return t.up ? std::pair{3 * t.col + 1, 3 * t.row + 1} : std::pair{3 * t.col + 2, 3 * t.row + 2};
  };
  std::set<std::pair<TriCoord, TriCoord>> used;
  struct Face {
    std::vector<size_t> edges;
    long area2;
  };
  std::vector<Face> faces;
  std::map<TriCoord, long> comp;
  {
    long c = 0;
    for (auto& [t, _] : g.adj) {
      if (comp.count(t)) continue;
      std::vector<TriCoord> st{t};
      comp[t] = c;
      while (!st.empty()) {
        auto x = st.back();
        st.pop_back();
        for (auto& w : g.adj.at(x))
          if (comp.emplace(w, c).second) st.push_back(w);
      }
      ++c;
    }
  }
  std::vector<long> face_comp;
  for (auto& [t, nb] : g.adj)
    for (auto& n : nb) {
      if (used.count({t, n})) continue;
      Face f{{}, 0};
      TriCoord u = t, v = n;
      while (!used.count({u, v})) {
        used.insert({u, v});
        f.edges.push_back(id_of(u, v));
        auto [ux, uh] = pos(u);
        auto [vx, vh] = pos(v);
        f.area2 += ux * vh - vx * uh;
        // next neighbour of v clockwise after u
        auto ring = ccw_neighbours(v);
        size_t k = std::find(ring.begin(), ring.end(), u) - ring.begin();
        TriCoord w = u;
        for (size_t s = 1; s <= 3; ++s) {
          TriCoord cand = ring[(k + 3 - s) % 3];
          if (present(v, cand)) {
            w = cand;
            break;
          }
        }
        u = v;
        v = w;
      }
      faces.push_back(f);
      face_comp.push_back(comp.at(t));
    }
  // drop the outer face of each component
  std::map<long, size_t> outer;
  for (size_t i = 0; i < faces.size(); ++i) {
    long c = face_comp[i];
    if (!outer.count(c) || faces[i].area2 < faces[outer[c]].area2) outer[c] = i;
  }
  size_t ne = edges.size(), words = (ne + 64) / 64;
  std::vector<std::vector<uint64_t>> rows;
  for (size_t i = 0; i < faces.size(); ++i) {
    if (outer[face_comp[i]] == i) continue;
    std::vector<uint64_t> row(words, 0);
    std::map<size_t, int> times;
    for (size_t e : faces[i].edges) times[e]++;
    long once = 0;
    for (auto& [e, c] : times)
      if (c % 2) {
        row[e / 64] ^= uint64_t(1) << (e % 64);
        ++once;
      }
    if ((once / 2 + 1) % 2) row[ne / 64] ^= uint64_t(1) << (ne % 64);
    rows.push_back(row);
  }
  auto bit = [&](const std::vector<uint64_t>& r, size_t j) { return (r[j / 64] >> (j % 64)) & 1; };
  std::vector<long> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < ne && rank < rows.size(); ++col) {
    size_t p = rank;
    while (p < rows.size() && !bit(rows[p], col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != rank && bit(rows[i], col))
        for (size_t w = 0; w < words; ++w) rows[i][w] ^= rows[rank][w];
    pivot_col.push_back(static_cast<long>(col));
    ++rank;
  }
  for (size_t i = rank; i < rows.size(); ++i)
    if (bit(rows[i], ne)) throw std::logic_error("no Kasteleyn signing found");
  std::vector<int> neg(ne, 0);
  for (size_t i = 0; i < rank; ++i) neg[pivot_col[i]] = static_cast<int>(bit(rows[i], ne));
  std::map<std::pair<TriCoord, TriCoord>, int> signs;
  for (size_t e = 0; e < ne; ++e) signs[edges[e]] = neg[e] ? -1 : 1;
  return signs;
}

}  // namespace detail

inline BigInt count_signed_determinant(const Region& r) {
  if (r.empty()) return 1;
  if (!is_balanced(r)) return 0;
  detail::DualGraph g(r);
  if (!detail::simplify(g)) return 0;
  if (g.adj.empty()) return 1;
  auto signs = detail::kasteleyn_signs(g);
  std::map<TriCoord, size_t> ui, di;
  for (auto& [t, _] : g.adj) (t.up ? ui : di).emplace(t, t.up ? ui.size() : di.size());
  if (ui.size() != di.size()) return 0;
  std::vector<std::vector<BigInt>> m(ui.size(), std::vector<BigInt>(di.size(), 0));
  for (auto& [e, s] : signs) m[ui[e.first]][di[e.second]] = s;
  BigInt d = detail::bareiss_det(std::move(m));
  return abs(d);
}

inline BigInt count_tilings(const Region& r, const OracleConfig& cfg = {}) {
  if (static_cast<long>(r.size()) > cfg.max_area)
    throw AreaCeilingExceeded("region area " + std::to_string(r.size()) + " exceeds ceiling " +
                              std::to_string(cfg.max_area));
  Backend b = cfg.backend;
  if (b == Backend::Auto) b = r.size() <= 400 ? Backend::ProfileDP : Backend::SignedDeterminant;
  return b == Backend::ProfileDP ? count_profile_dp(r) : count_signed_determinant(r);
}

}  // namespace fernlab
