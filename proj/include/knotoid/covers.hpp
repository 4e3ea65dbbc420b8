#pragma once

#include <array>
#include <numeric>
#include <vector>

#include "knotoid/embedding.hpp"
#include "knotoid/gauss_code.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/polynomial.hpp"

namespace knotoid {

/// Closed diagram on the annulus obtained as the double branched cover of a
/// planar knotoid diagram, branched at its endpoints.
///
/// The lifted curve runs along the diagram from tail to head on one sheet
/// and back on the other, so it has 4n passages and 4n arcs; lifted arc 0
/// passes through the tail, lifted arc 2n through the head. Lifted crossing
/// 2(c-1)+s is the copy of crossing c on sheet s.
struct AnnularDiagram {
  int crossings = 0;
  std::vector<CrossingVisit> word;
  std::vector<int> signs;
  // Arc ends around each crossing, counterclockwise: 2*arc for the arc's
  // start, 2*arc+1 for its end.
  std::vector<std::array<int, 4>> ends;
  std::vector<std::array<bool, 4>> over;
  // Intersection parity of each lifted arc with a fixed arc joining the two
  // boundary circles. A state circle is essential iff its total is odd.
  std::vector<char> arc_parity;

  int arc_count() const { return static_cast<int>(arc_parity.size()); }
  int writhe() const { return std::accumulate(signs.begin(), signs.end(), 0); }
};

struct CutLines {
  std::vector<int> from_tail;  // arcs crossed, in order, tail region to outer region
  std::vector<int> from_head;
};

inline CutLines default_cut_lines(const DiagramMap& m, int outer) {
  return {detail::dual_path(m, m.tail_face(), outer), detail::dual_path(m, m.head_face(), outer)};
}

inline AnnularDiagram lift(const GaussCode& code, const DiagramMap& m, const CutLines& cuts) {
  const int n = code.crossings();
  AnnularDiagram a;
  a.crossings = 2 * n;
  if (n == 0) {
    a.arc_parity = {1};
    return a;
  }
  std::vector<int> c1(2 * n + 1, 0), cnt(2 * n + 1, 0);
  for (int z : cuts.from_tail) {
    c1[z] ^= 1;
    cnt[z] ^= 1;
  }
  for (int z : cuts.from_head) cnt[z] ^= 1;
  // Sheet of the forward pass at each passage.
  std::vector<int> sheet(2 * n);
  int s = 0;
  for (int k = 0; k < 2 * n; ++k) {
    s ^= cnt[k];
    sheet[k] = s;
  }
  const int len = 4 * n;
  auto lifted_label = [](int c, int sh) { return 2 * (c - 1) + sh + 1; };
  // Lifted visit index of passage k on the forward (0) or backward (1) pass.
  auto visit = [&](int k, int pass) { return pass == 0 ? k : len - 1 - k; };
  a.word.resize(len);
  for (int k = 0; k < 2 * n; ++k) {
    const auto& v = code.word[k];
    a.word[visit(k, 0)] = {lifted_label(v.label, sheet[k]), v.over};
    a.word[visit(k, 1)] = {lifted_label(v.label, sheet[k] ^ 1), v.over};
  }
  a.arc_parity.assign(len, 0);
  a.arc_parity[0] = 1;
  for (int j = 1; j < 2 * n; ++j) a.arc_parity[j] = static_cast<char>(c1[j]);
  for (int t = 1; t < 2 * n; ++t) a.arc_parity[2 * n + t] = static_cast<char>(c1[2 * n - t]);

  a.signs.assign(2 * n, 0);
  a.ends.resize(2 * n);
  a.over.resize(2 * n);
  for (int c = 1; c <= n; ++c) {
    const int po = m.over_pos[c], pu = m.under_pos[c];
    const int ring_darts[4] = {m.sigma[bwd_dart(pu)], m.sigma[m.sigma[bwd_dart(pu)]],
                               m.sigma[m.sigma[m.sigma[bwd_dart(pu)]]], bwd_dart(pu)};
    for (int sh = 0; sh < 2; ++sh) {
      const int x = lifted_label(c, sh) - 1;
      const int pass_o = sheet[po] == sh ? 0 : 1, pass_u = sheet[pu] == sh ? 0 : 1;
      a.signs[x] = code.signs[c - 1] * (pass_o ? -1 : 1) * (pass_u ? -1 : 1);
      for (int r = 0; r < 4; ++r) {
        const int d = ring_darts[r];
        // d leaves the crossing along original arc dart_arc(d): backward
        // darts point into the arc before the passage.
        const bool is_over = dart_is_fwd(d) ? dart_arc(d) - 1 == po : dart_arc(d) == po;
        const int p = is_over ? po : pu;
        const int pass = is_over ? pass_o : pass_u;
        const int vi = visit(p, pass);
        const bool before = dart_is_fwd(d) == (pass == 1);  // lifted arc ending at the visit
        a.ends[x][r] = before ? 2 * vi + 1 : 2 * ((vi + 1) % len);
        a.over[x][r] = is_over;
      }
    }
  }
  return a;
}

inline AnnularDiagram lift(const GaussCode& code) {
  const auto m = build_map(code);
  const int outer = m.find_face(*code.outer);
  if (outer < 0) throw NotRealizable("outer arc list is not a region of '" + format_code(code) + "'", 0);
  return lift(code, m, default_cut_lines(m, outer));
}

/// Number of closed components of the lifted curve (1 for every knotoid).
inline int component_count(const AnnularDiagram& a) {
  const int arcs = a.arc_count();
  std::vector<int> parent(arcs);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < a.ends.size(); ++x) {
    // over strand passes straight through slots r and r+2
    for (int r = 0; r < 2; ++r) parent[find(a.ends[x][r] >> 1)] = find(a.ends[x][r + 2] >> 1);
  }
  int comps = 0;
  for (int i = 0; i < arcs; ++i) comps += find(i) == i;
  return comps;
}

/// Kauffman bracket in the solid torus: contractible state circles give
/// -A^2 - A^-2, essential ones give v; normalized by (-A^3)^(-writhe).
inline MultiPoly torus_jones(const AnnularDiagram& a) {
  const int arcs = a.arc_count();
  const int nx = static_cast<int>(a.ends.size());
  if (nx == 0) return MultiPoly(Monomial::v(1), 1);
  std::vector<int> parent(arcs);
  std::vector<char> par(arcs), root(arcs);
  MultiPoly sum;
  for (unsigned long s = 0; s < (1ul << nx); ++s) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int aexp = 0;
    for (int x = 0; x < nx; ++x) {
      const bool b = (s >> x) & 1u;
      aexp += b ? -1 : 1;
      const auto& e = a.ends[x];
      int k = a.over[x][0] ? 0 : 1;  // an over slot
      // A-smoothing joins each over slot to its clockwise neighbour.
      const int nb = b ? (k + 1) % 4 : (k + 3) % 4;
      const int k2 = (k + 2) % 4, nb2 = b ? (k + 3) % 4 : (k + 1) % 4;
      parent[find(e[k] >> 1)] = find(e[nb] >> 1);
      parent[find(e[k2] >> 1)] = find(e[nb2] >> 1);
    }
    std::fill(par.begin(), par.end(), 0);
    std::fill(root.begin(), root.end(), 0);
    for (int i = 0; i < arcs; ++i) {
      const int r = find(i);
      root[r] = 1;
      par[r] ^= a.arc_parity[i];
    }
    int ess = 0, con = 0;
    for (int i = 0; i < arcs; ++i)
      if (root[i]) (par[i] ? ess : con) += 1;
    sum += detail::delta_power(con) * MultiPoly(Monomial{aexp, ess, {}}, 1);
  }
  return sum * detail::writhe_factor(a.writhe());
}

/// Solid-torus Jones polynomial of the lift, computed with default cut lines.
inline MultiPoly dbc_invariant(const GaussCode& code) { return torus_jones(lift(code)); }

inline MultiPoly dbc_invariant(const GaussCode& code, const DiagramMap& m) {
  const int outer = m.find_face(*code.outer);
  if (outer < 0) throw NotRealizable("outer arc list is not a region of '" + format_code(code) + "'", 0);
  return torus_jones(lift(code, m, default_cut_lines(m, outer)));
}

}  // namespace knotoid
