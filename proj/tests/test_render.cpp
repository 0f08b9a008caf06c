#include <gtest/gtest.h>

#include "fernlab/oracle.hpp"
#include "fernlab/render.hpp"

using namespace fernlab;

namespace {

size_t occurrences(const std::string& s, const std::string& what) {
  size_t n = 0;
  for (size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Render, UnitHexagonAscii) {
  Region r = build_region(parse_spec("Hex x=1 y=1 z=1"));
  std::string a = render_ascii(r);
  EXPECT_EQ(a, "^v^\nv^v\n");
}

TEST(Render, RemovedCellsShowAsHash) {
  RegionSpec s = parse_spec("Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]");
  Layout L = layout_of(s);
  Region r = build_region(L);
  Region removed = removed_cells(L, r);
  EXPECT_EQ(removed.size(), 13u);
  std::string a = render_ascii(r, removed);
  EXPECT_EQ(occurrences(a, "#"), 13u);
  EXPECT_EQ(occurrences(a, "^") + occurrences(a, "v"), r.size());
  EXPECT_EQ(a, render_ascii(r, removed));
}

TEST(Render, TilingGlyphs) {
  Region r = build_region(parse_spec("Hex x=1 y=1 z=1"));
  auto t = find_tiling(r);
  ASSERT_TRUE(t);
  std::string a = render_ascii(r, {}, &*t);
  EXPECT_EQ(occurrences(a, "^") + occurrences(a, "v"), 0u);
  std::set<int> kinds;
  for (auto& l : *t) kinds.insert(lozenge_kind(l));
  EXPECT_EQ(kinds.size(), 3u);
}

TEST(Render, Svg) {
  RegionSpec s = parse_spec("Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]");
  Layout L = layout_of(s);
  Region r = build_region(L);
  Region removed = removed_cells(L, r);
  std::string svg = render_svg(r, removed);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(occurrences(svg, "<polygon"), r.size() + removed.size());
  EXPECT_NE(svg.find("fill=\"black\""), std::string::npos);
}

TEST(Render, SvgTilingDrawsRhombi) {
  Region r = build_region(parse_spec("Hex x=1 y=1 z=1"));
  auto t = find_tiling(r);
  std::string plain = render_svg(r);
  std::string tiled = render_svg(r, {}, &*t);
  EXPECT_EQ(occurrences(tiled, "<polygon") - occurrences(plain, "<polygon"), 3u);
}

TEST(Render, UnitEdgeIsTwentyPixels) {
  Region up = {{0, 0, true}};
  std::string svg = render_svg(up);
  EXPECT_NE(svg.find("points=\"0,-0 20,-0 10,-17.3205\""), std::string::npos) << svg;
}

TEST(Render, Empty) {
  EXPECT_EQ(render_ascii({}), "");
  EXPECT_NE(render_svg({}).find("<svg"), std::string::npos);
}
