#pragma once

#include <climits>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace fernlab {

// Cells of the base polygon that the region leaves out: the ferns, cores and dents.
inline Region removed_cells(const Layout& L, const Region& r) {
  Region out;
  for (auto& t : cells(L.hex))
    if (!r.count(t)) out.insert(t);
  return out;
}

// Half-unit column of a cell's centre, used by the text drawing.
inline long text_column(const TriCoord& t) { return 2 * t.col + t.row + (t.up ? 1 : 2); }

// Which of the three lozenge directions: 0 vertical edge shared, 1 left
// slanted, 2 horizontal.
inline int lozenge_kind(const Lozenge& l) {
  const TriCoord& u = l.first;
  const TriCoord& d = l.second;
  if (d.row == u.row && d.col == u.col) return 0;
  if (d.row == u.row) return 1;
  return 2;
}

// One line per lattice row, top first: '^' and 'v' for region cells, '#' for
// removed cells, lozenge kinds as '|', '/', '=' when a tiling is given.
inline std::string render_ascii(const Region& r, const Region& removed = {},
                                const std::vector<Lozenge>* tiling = nullptr) {
  if (r.empty() && removed.empty()) return "";
  std::map<TriCoord, char> glyph;
  for (auto& t : r) glyph[t] = t.up ? '^' : 'v';
  for (auto& t : removed) glyph[t] = '#';
  if (tiling) {
    static const char k[] = {'|', '/', '='};
    for (auto& l : *tiling) glyph[l.first] = glyph[l.second] = k[lozenge_kind(l)];
  }
  long rmin = LONG_MAX, rmax = LONG_MIN, cmin = LONG_MAX, cmax = LONG_MIN;
  for (auto& [t, g] : glyph) {
    rmin = std::min(rmin, t.row);
    rmax = std::max(rmax, t.row);
    cmin = std::min(cmin, text_column(t));
    cmax = std::max(cmax, text_column(t));
  }
  std::ostringstream os;
  for (long row = rmax; row >= rmin; --row) {
    std::string line(cmax - cmin + 1, ' ');
    for (auto it = glyph.lower_bound({row, LONG_MIN, true}); it != glyph.end() && it->first.row == row; ++it)
      line[text_column(it->first) - cmin] = it->second;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

namespace detail {

struct Pt {
  double x, y;
};

inline std::vector<Pt> corners(const TriCoord& t, double unit) {
  auto P = [&](double X, double h) { return Pt{(X + h / 2) * unit, -h * std::sqrt(3.0) / 2 * unit}; };
  double c = t.col, r = t.row;
  if (t.up) return {P(c, r), P(c + 1, r), P(c, r + 1)};
  return {P(c, r + 1), P(c + 1, r + 1), P(c + 1, r)};
}

inline std::string points(const std::vector<Pt>& v) {
  std::ostringstream os;
  os.precision(6);
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].x << ',' << v[i].y;
  return os.str();
}

}  // namespace detail

// SVG drawing with 20 px unit triangles; removed cells filled black.
inline std::string render_svg(const Region& r, const Region& removed = {},
                              const std::vector<Lozenge>* tiling = nullptr, double unit = 20) {
  double x0 = 1e18, y0 = 1e18, x1 = -1e18, y1 = -1e18;
  auto grow = [&](const TriCoord& t) {
    for (auto& p : detail::corners(t, unit)) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  };
  for (auto& t : r) grow(t);
  for (auto& t : removed) grow(t);
  if (x0 > x1) x0 = y0 = x1 = y1 = 0;
  const double pad = 4;
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - pad << ' ' << y0 - pad << ' '
     << x1 - x0 + 2 * pad << ' ' << y1 - y0 + 2 * pad << "\" width=\"" << x1 - x0 + 2 * pad
     << "\" height=\"" << y1 - y0 + 2 * pad << "\">\n";
  os << "<g stroke=\"#999\" stroke-width=\"0.5\" fill=\"white\">\n";
  for (auto& t : r) os << "<polygon points=\"" << detail::points(detail::corners(t, unit)) << "\"/>\n";
  os << "</g>\n<g fill=\"black\" stroke=\"black\" stroke-width=\"0.5\">\n";
  for (auto& t : removed) os << "<polygon points=\"" << detail::points(detail::corners(t, unit)) << "\"/>\n";
  os << "</g>\n";
  if (tiling) {
    static const char* fill[] = {"#f4d35e", "#5fa8d3", "#ee964b"};
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    for (auto& l : *tiling) {
      auto a = detail::corners(l.first, unit), b = detail::corners(l.second, unit);
      // the rhombus: the up triangle's free corner, then the shared edge, then the down's free corner
      std::vector<detail::Pt> shared, ua, db;
      for (auto& p : a) {
        bool s = false;
        for (auto& q : b) s |= std::hypot(p.x - q.x, p.y - q.y) < 1e-6;
        (s ? shared : ua).push_back(p);
      }
      for (auto& q : b) {
        bool s = false;
        for (auto& p : a) s |= std::hypot(p.x - q.x, p.y - q.y) < 1e-6;
        if (!s) db.push_back(q);
      }
      if (shared.size() != 2 || ua.size() != 1 || db.size() != 1) continue;
      os << "<polygon fill=\"" << fill[lozenge_kind(l)] << "\" points=\""
         << detail::points({ua[0], shared[0], db[0], shared[1]}) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fernlab
