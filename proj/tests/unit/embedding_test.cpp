#include <gtest/gtest.h>

#include "knotoid/knotoid.hpp"

using namespace knotoid;

TEST(Embedding, TrivialDiagramHasOneRegion) {
  const auto m = build_map(parse_code(""));
  ASSERT_EQ(m.faces.size(), 1u);
  EXPECT_EQ(m.faces[0].arcs, std::vector<int>{0});
  EXPECT_TRUE(sphere_knot_type(m));
}

TEST(Embedding, KinkHasTwoRegions) {
  const auto rs = regions(parse_code("1 -1  +"));
  ASSERT_EQ(rs.size(), 2u);
  std::vector<std::vector<int>> arcs;
  for (const auto& r : rs) arcs.push_back(r.arcs);
  std::sort(arcs.begin(), arcs.end());
  EXPECT_EQ(arcs, (std::vector<std::vector<int>>{{0, 1, 2}, {1}}));
}

TEST(Embedding, RealizableDiagramsHaveNPlusOneRegions) {
  for (int n = 0; n <= 3; ++n)
    for (const auto& c : all_codes(n)) {
      const int f = traced_face_count(c);
      EXPECT_EQ(is_realizable(c), f == n + 1);
      EXPECT_EQ(try_build_map(c).has_value(), f == n + 1);
      EXPECT_LE(f, n + 1) << format_code(c);  // Euler characteristic at most 2
    }
}

TEST(Embedding, UnrealizableCodeThrows) {
  // interleaved crossings of opposite sign cannot be drawn in the sphere
  EXPECT_TRUE(is_realizable(parse_code("1 -2 -1 2  ++")));
  const auto c = parse_code("1 -2 -1 2  +-");
  EXPECT_FALSE(is_realizable(c));
  EXPECT_THROW(build_map(c), NotRealizable);
}

TEST(Embedding, EveryArcBordersItsRegionsOnBothSides) {
  for (const auto& c : all_codes(3)) {
    auto m = try_build_map(c);
    if (!m) continue;
    std::vector<int> uses(c.arc_count(), 0);
    for (const auto& f : m->faces)
      for (int d : f.darts) ++uses[dart_arc(d)];
    for (int u : uses) EXPECT_EQ(u, 2);
  }
}

TEST(Embedding, EndpointClasses) {
  EXPECT_EQ(classify_endpoints(parse_code("    0")), EndpointClass::KnotType);
  EXPECT_EQ(classify_endpoints(parse_code("-1 1  -  1")), EndpointClass::NonProper);
  EXPECT_EQ(classify_endpoints(parse_code("-1 1  -  0 1 2")), EndpointClass::KnotType);
  EXPECT_EQ(classify_endpoints(parse_code("-1 2 1 -2  --  0 2 3")), EndpointClass::Proper);
}

TEST(Embedding, ExtendedVariantsEnumerateRegions) {
  const auto vs = extended_variants(parse_code("-1 2 -2 1  --"));
  EXPECT_EQ(vs.size(), 3u);
  for (const auto& v : vs) EXPECT_TRUE(is_realizable_planar(v));
  EXPECT_FALSE(is_realizable_planar(parse_code("-1 2 -2 1  --  0 4")));
}
