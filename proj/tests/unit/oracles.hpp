#pragma once

// Slow, independent reference implementations used to check the library.

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

#include "knotoid/knotoid.hpp"

namespace oracle {

using namespace knotoid;

/// Every word in which each label 1..n appears once over and once under,
/// with every sign vector, relabeled and deduplicated.
inline std::vector<GaussCode> brute_codes(int n) {
  std::vector<CrossingVisit> slots;
  for (int c = 1; c <= n; ++c) {
    slots.push_back({c, false});
    slots.push_back({c, true});
  }
  auto key = [](const CrossingVisit& v) { return 2 * v.label + (v.over ? 1 : 0); };
  std::sort(slots.begin(), slots.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  std::set<GaussCode, CodeLess> seen;
  do {
    for (unsigned s = 0; s < (1u << n); ++s) {
      GaussCode c;
      c.word = slots;
      for (int i = 0; i < n; ++i) c.signs.push_back((s >> i) & 1u ? 1 : -1);
      seen.insert(canonicalize_labels(c));
    }
  } while (std::next_permutation(slots.begin(), slots.end(), [&](auto& a, auto& b) { return key(a) < key(b); }));
  return {seen.begin(), seen.end()};
}

/// Components of the move graph on diagrams with at most `cap` crossings
/// (edges: every move and reversion), restricted to `nodes`.
inline UnionFind bfs_components(const std::vector<GaussCode>& nodes, int cap) {
  std::unordered_map<GaussCode, int, GaussCodeHash> id;
  std::unordered_map<GaussCode, int, GaussCodeHash> node_index;
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index.emplace(nodes[i], static_cast<int>(i));
  UnionFind uf(static_cast<int>(nodes.size()));
  int next_comp = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (id.count(nodes[i])) continue;
    const int cc = next_comp++;
    std::deque<GaussCode> q{nodes[i]};
    id.emplace(nodes[i], cc);
    while (!q.empty()) {
      GaussCode c = std::move(q.front());
      q.pop_front();
      if (auto it = node_index.find(c); it != node_index.end()) uf.unite(static_cast<int>(i), it->second);
      const auto m = build_map(c);
      std::vector<GaussCode> nb{reverse(c)};
      for (const auto& s : enumerate_moves(c, m, kAllKinds, cap))
        for (auto& r : apply_move(c, m, s)) nb.push_back(std::move(r));
      for (auto& r : nb)
        if (id.emplace(r, cc).second) q.push_back(std::move(r));
    }
  }
  return uf;
}

}  // namespace oracle
