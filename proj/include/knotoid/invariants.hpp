#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "knotoid/embedding.hpp"
#include "knotoid/gauss_code.hpp"
#include "knotoid/polynomial.hpp"

namespace knotoid {

/// Summary of one smoothed state after cusp cancellation.
///
/// `segment_zigzag` is the signed cusp balance of the long segment: cusps are
/// recorded by the side of the arc's own orientation their acute angle lies
/// on (+1 left, -1 right), and consecutive cusps on opposite local sides
/// cancel, so the reduced segment carries |segment_zigzag| cusps of a single
/// type. Circle cusps always cancel completely on a sphere diagram.
struct StateSummary {
  int a_exp = 0;  // power of A from the smoothing weights
  int segment_zigzag = 0;
  int circles = 0;
  int enclosing = 0;  // circles separating the segment from the outer region
  int circle_zigzag = 0;  // total |balance| over circles; 0 on valid diagrams
};

namespace detail {

inline int passage_label(const GaussCode& c, int slot) {
  const int a = dart_arc(slot);
  return dart_is_fwd(slot) ? c.word[a - 1].label : c.word[a].label;
}

// Arcs crossed by a shortest dual path from face `from` to face `to`;
// neighbours are explored in increasing arc order.
inline std::vector<int> dual_path(const DiagramMap& m, int from, int to) {
  const int nf = static_cast<int>(m.faces.size());
  std::vector<int> prev_face(nf, -2), prev_arc(nf, -1);
  std::deque<int> q{from};
  prev_face[from] = -1;
  while (!q.empty()) {
    const int f = q.front();
    q.pop_front();
    if (f == to) break;
    std::vector<std::pair<int, int>> nb;
    for (int d : m.faces[f].darts) nb.emplace_back(dart_arc(d), m.face_of[reverse_dart(d)]);
    std::sort(nb.begin(), nb.end());
    for (auto [arc, g] : nb) {
      if (prev_face[g] != -2) continue;
      prev_face[g] = f;
      prev_arc[g] = arc;
      q.push_back(g);
    }
  }
  std::vector<int> arcs;
  for (int f = to; prev_face[f] >= 0; f = prev_face[f]) arcs.push_back(prev_arc[f]);
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace detail

/// Visits all 2^n states of the oriented/disoriented smoothing expansion.
/// At a crossing of sign s the oriented smoothing weighs A^s and the
/// disoriented one A^-s. `outer` is the outer face, or -1 on the sphere.
template <class Fn>
void for_each_state(const GaussCode& code, const DiagramMap& m, int outer, Fn&& fn) {
  const int n = code.crossings();
  const int arcs = 2 * n + 1;
  const int dc = m.dart_count();
  std::vector<int> cut;
  if (outer >= 0) cut = detail::dual_path(m, m.tail_face(), outer);

  std::vector<int> partner(dc, -1);
  std::vector<char> dis(n + 1, 0);
  std::vector<int> owner(arcs);
  std::vector<int> parity;
  for (unsigned long s = 0; s < (1ul << n); ++s) {
    StateSummary st;
    for (int c = 1; c <= n; ++c) {
      const bool d = (s >> (c - 1)) & 1u;
      dis[c] = d;
      const int sg = code.signs[c - 1];
      st.a_exp += d ? -sg : sg;
      const int po = m.over_pos[c], pu = m.under_pos[c];
      const int io = bwd_dart(po), oo = fwd_dart(po + 1), iu = bwd_dart(pu), ou = fwd_dart(pu + 1);
      if (!d) {
        partner[io] = ou; partner[ou] = io; partner[iu] = oo; partner[oo] = iu;
      } else {
        partner[io] = iu; partner[iu] = io; partner[oo] = ou; partner[ou] = oo;
      }
    }
    std::fill(owner.begin(), owner.end(), -1);
    // Walk a component from dart e0; returns the cusp balance.
    auto walk = [&](int e0, int id, bool segment) {
      int bal = 0;
      int e = e0;
      while (true) {
        owner[dart_arc(e)] = id;
        const int a = reverse_dart(e);
        if (segment && a == bwd_dart(2 * n)) break;
        const int b = partner[a];
        if (dis[detail::passage_label(code, a)]) {
          // The curve hugs the corner between slots a and b; it lies to the
          // right of travel when b follows a counterclockwise.
          const bool right = b == m.sigma[a];
          const bool against = !dart_is_fwd(e);
          bal += (right != against) ? -1 : 1;
        }
        e = b;
        if (!segment && e == e0) break;
      }
      return bal;
    };
    st.segment_zigzag = walk(fwd_dart(0), 0, true);
    int id = 1;
    for (int z = 0; z < arcs; ++z) {
      if (owner[z] >= 0) continue;
      const int bal = walk(fwd_dart(z), id++, false);
      st.circle_zigzag += bal < 0 ? -bal : bal;
    }
    st.circles = id - 1;
    if (outer >= 0 && st.circles > 0) {
      parity.assign(id, 0);
      for (int a : cut) parity[owner[a]] ^= 1;
      for (int k = 1; k < id; ++k) st.enclosing += parity[k];
    }
    fn(static_cast<const StateSummary&>(st));
  }
}

namespace detail {

// (-A^3)^(-w)
inline MultiPoly writhe_factor(int w) { return MultiPoly(Monomial::A(-3 * w), (w % 2) ? -1 : 1); }

inline MultiPoly delta_power(int k) {
  static thread_local std::vector<MultiPoly> cache{MultiPoly::one()};
  while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * MultiPoly::delta());
  return cache[k];
}

}  // namespace detail

/// Arrow polynomial of a knotoid in S^2: a reduced segment with 2k cusps
/// contributes m_k, every circle contributes -A^2 - A^-2.
inline MultiPoly arrow_polynomial(const GaussCode& code, const DiagramMap& m) {
  MultiPoly sum;
  for_each_state(code, m, -1, [&](const StateSummary& st) {
    const int k = std::abs(st.segment_zigzag) / 2;
    Monomial mono = Monomial::A(st.a_exp);
    if (k) mono = mono * Monomial::var(Family::m, k);
    sum += detail::delta_power(st.circles) * MultiPoly(mono, 1);
  });
  return sum * detail::writhe_factor(writhe(code));
}

inline MultiPoly arrow_polynomial(const GaussCode& code) { return arrow_polynomial(code, build_map(code)); }

/// Loop arrow polynomial of a planar knotoid. Circles that do not separate
/// the segment from the outer region contribute -A^2 - A^-2, separating
/// circles contribute v. Segment zigzags of the two local types give m_k and
/// w_k; when the segment is also enclosed, one enclosing circle and the
/// zigzags are read together as p_k or q_k.
inline MultiPoly loop_arrow_polynomial(const GaussCode& code, const DiagramMap& m) {
  const int outer = m.find_face(*code.outer);
  if (outer < 0) throw NotRealizable("outer arc list is not a region of '" + format_code(code) + "'", 0);
  MultiPoly sum;
  for_each_state(code, m, outer, [&](const StateSummary& st) {
    const int z = st.segment_zigzag;
    const int k = std::abs(z) / 2;
    Monomial mono = Monomial::A(st.a_exp);
    int v = st.enclosing;
    if (k) {
      const bool left = z > 0;
      if (v) {
        mono = mono * Monomial::var(left ? Family::q : Family::p, k);
        --v;
      } else {
        mono = mono * Monomial::var(left ? Family::w : Family::m, k);
      }
    }
    mono = mono * Monomial::v(v);
    sum += detail::delta_power(st.circles - st.enclosing) * MultiPoly(mono, 1);
  });
  return sum * detail::writhe_factor(writhe(code));
}

inline MultiPoly loop_arrow_polynomial(const GaussCode& code) {
  return loop_arrow_polynomial(code, build_map(code));
}

}  // namespace knotoid
