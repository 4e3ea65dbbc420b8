#include <gtest/gtest.h>

#include <random>
#include <set>

#include "knotoid/knotoid.hpp"

using namespace knotoid;

namespace {

std::vector<GaussCode> diagrams(int max_n, Surface s) {
  std::vector<GaussCode> out;
  for (int n = 0; n <= max_n; ++n) {
    auto v = realizable_codes(n, s);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace

TEST(Moves, KinksOnTheTrivialDiagram) {
  std::set<std::string> results;
  const auto t = parse_code("");
  for (const auto& s : enumerate_moves(t, kind_bit(MoveKind::R1Add), 1))
    for (const auto& r : apply_move(t, s)) results.insert(format_code(r.sphere()));
  EXPECT_EQ(results, (std::set<std::string>{"-1 1  +", "-1 1  -", "1 -1  +", "1 -1  -"}));
}

TEST(Moves, ReducingKinkAndClasp) {
  const auto kink = parse_code("1 -1  +");
  const auto sites = enumerate_moves(kink, kind_bit(MoveKind::R1Remove), 1);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(apply_move(kink, sites[0]), std::vector<GaussCode>{parse_code("")});
  EXPECT_EQ(reduce(parse_code("-1 2 -2 1  +-")), parse_code(""));
  EXPECT_EQ(reduce(parse_code("-1 2 -3 1 -2 3  ---")), parse_code("-1 2 -3 1 -2 3  ---"));
}

TEST(Moves, ResultsAreRealizableAndCanonical) {
  for (Surface surf : {Surface::Sphere, Surface::Planar})
    for (const auto& c : diagrams(3, surf)) {
      const auto m = build_map(c);
      for (const auto& s : enumerate_moves(c, m, kAllKinds, c.crossings() + 2)) {
        for (const auto& r : apply_move(c, m, s)) {
          ASSERT_TRUE(surf == Surface::Planar ? is_realizable_planar(r) : is_realizable(r))
              << format_code(c) << " " << to_string(s.kind) << " -> " << format_code(r);
          EXPECT_TRUE(is_canonical(r));
          const int dn = r.crossings() - c.crossings();
          switch (s.kind) {
            case MoveKind::R1Add: EXPECT_EQ(dn, 1); break;
            case MoveKind::R1Remove: EXPECT_EQ(dn, -1); break;
            case MoveKind::R2Add: EXPECT_EQ(dn, 2); break;
            case MoveKind::R2Remove: EXPECT_EQ(dn, -2); break;
            case MoveKind::R3: EXPECT_EQ(dn, 0); break;
          }
        }
      }
    }
}

TEST(Moves, CapLimitsGrowth) {
  const auto c = parse_code("-1 2 -2 1  --  2");
  for (const auto& s : enumerate_moves(c, kIncreasing, 3)) EXPECT_EQ(s.kind, MoveKind::R1Add);
  EXPECT_TRUE(enumerate_moves(c, kIncreasing, 2).empty());
}

TEST(Moves, NoRemovalInsideTheOuterRegion) {
  // the kink loop is the outer region: removing it would sweep the arc across infinity
  const auto c = parse_code("-1 1  -  1");
  EXPECT_TRUE(enumerate_moves(c, kDecreasing, 1).empty());
  EXPECT_EQ(enumerate_moves(c.sphere(), kDecreasing, 1).size(), 1u);
}

TEST(Moves, RegionRuleMatchesRetracedRegions) {
  long covered = 0;
  for (const auto& c : diagrams(3, Surface::Planar)) {
    const auto m = build_map(c);
    for (const auto& s : enumerate_moves(c, m, kAllKinds, c.crossings() + 2)) {
      const auto rule = outer_by_region_rule(c, m, s);
      if (!rule) continue;
      ++covered;
      std::vector<std::vector<int>> got;
      for (const auto& r : apply_move(c, m, s)) got.push_back(*r.outer);
      auto want = *rule;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got, want) << format_code(c) << " " << to_string(s.kind);
    }
  }
  EXPECT_GT(covered, 100000);
}

TEST(Moves, ReductionNeverIncreasesTheCode) {
  std::mt19937_64 rng(7);
  const auto pool = diagrams(3, Surface::Planar);
  for (int i = 0; i < 300; ++i) {
    const auto& c = pool[rng() % pool.size()];
    const auto r = reduce(c);
    EXPECT_NE(compare(r, c), Order::Greater);
    EXPECT_LE(r.crossings(), c.crossings());
    EXPECT_EQ(reduce(r), r);
  }
}

TEST(Moves, IncreasingSitesDecodeInEnumerationOrder) {
  for (Surface s : {Surface::Sphere, Surface::Planar})
    for (int n = 0; n <= 2; ++n)
      for (const auto& c : realizable_codes(n, s)) {
        const auto m = build_map(c);
        for (int cap : {n, n + 1, n + 2}) {
          const auto want = enumerate_moves(c, m, kIncreasing, cap);
          ASSERT_EQ(increasing_site_count(c, m, cap), want.size()) << format_code(c);
          for (std::size_t i = 0; i < want.size(); ++i) ASSERT_EQ(increasing_site(c, m, cap, i), want[i]);
          EXPECT_THROW(increasing_site(c, m, cap, want.size()), std::out_of_range);
        }
      }
}
