#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "knotoid/embedding.hpp"
#include "knotoid/gauss_code.hpp"

namespace knotoid {

enum class MoveKind { R1Add = 0, R1Remove = 1, R2Add = 2, R2Remove = 3, R3 = 4 };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1Add: return "R1Add";
    case MoveKind::R1Remove: return "R1Remove";
    case MoveKind::R2Add: return "R2Add";
    case MoveKind::R2Remove: return "R2Remove";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

using KindMask = unsigned;
constexpr KindMask kind_bit(MoveKind k) { return 1u << static_cast<unsigned>(k); }
constexpr KindMask kAllKinds = 0x1fu;
constexpr KindMask kDecreasing = kind_bit(MoveKind::R1Remove) | kind_bit(MoveKind::R2Remove);
constexpr KindMask kIncreasing = kind_bit(MoveKind::R1Add) | kind_bit(MoveKind::R2Add);
constexpr KindMask kReducing = kDecreasing | kind_bit(MoveKind::R3);

/// A place where a move applies.
///
/// R1Remove / R2Remove / R3: `face` is the monogon, bigon or triangle.
/// R1Add: a kink on dart `d1`, drawn into the face to its right; `flag` is
/// true when the strand passes over first.
/// R2Add: a finger move across `face` between dart `d1` and dart `d2`; the
/// strand on `d1` passes over when `flag` is set. When d1 == d2 the two
/// points lie on the same side of one arc, d1's point first. When d2 is the
/// reverse of d1, `after` says whether d2's point lies later along the
/// orientation than d1's.
struct MoveSite {
  MoveKind kind = MoveKind::R1Add;
  int face = -1;
  int d1 = -1;
  int d2 = -1;
  bool flag = false;
  bool after = false;

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

class InvalidSite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool interior_arc(int arc, int n) { return arc > 0 && arc < 2 * n; }

// Crossing labels at the two ends of an interior arc.
inline std::pair<int, int> arc_ends(const GaussCode& c, int arc) {
  return {c.word[arc - 1].label, c.word[arc].label};
}

inline int outer_face_id(const GaussCode& code, const DiagramMap& m) {
  if (!code.outer) return -1;
  const int f = m.find_face(*code.outer);
  if (f < 0) throw InvalidSite("outer arc list '" + format_code(code) + "' is not a region");
  return f;
}

inline bool is_monogon(const GaussCode&, const DiagramMap& m, int f) {
  return m.faces[f].darts.size() == 1 && m.n > 0;
}

inline bool is_bigon(const GaussCode& c, const DiagramMap& m, int f) {
  const auto& ds = m.faces[f].darts;
  if (ds.size() != 2) return false;
  const int a = dart_arc(ds[0]), b = dart_arc(ds[1]);
  if (a == b || !interior_arc(a, m.n) || !interior_arc(b, m.n)) return false;
  const auto [x, y] = arc_ends(c, a);
  if (x == y) return false;
  return c.word[a - 1].over == c.word[a].over;
}

inline bool is_r3_triangle(const GaussCode& c, const DiagramMap& m, int f) {
  const auto& ds = m.faces[f].darts;
  if (ds.size() != 3) return false;
  int labels[6];
  bool top = false;
  for (int i = 0; i < 3; ++i) {
    const int a = dart_arc(ds[i]);
    if (!interior_arc(a, m.n)) return false;
    labels[2 * i] = c.word[a - 1].label;
    labels[2 * i + 1] = c.word[a].label;
    if (labels[2 * i] == labels[2 * i + 1]) return false;
    if (c.word[a - 1].over && c.word[a].over) top = true;
  }
  if (dart_arc(ds[0]) == dart_arc(ds[1]) || dart_arc(ds[1]) == dart_arc(ds[2]) || dart_arc(ds[0]) == dart_arc(ds[2]))
    return false;
  std::sort(labels, labels + 6);
  if (std::unique(labels, labels + 6) - labels != 3) return false;
  return top;
}

// Canonical code from a word with arbitrary positive labels; sign_of[label].
inline GaussCode relabel(const std::vector<CrossingVisit>& word, const std::vector<int>& sign_of) {
  std::vector<int> to(sign_of.size(), 0);
  GaussCode out;
  out.word.reserve(word.size());
  int next = 0;
  for (const auto& v : word) {
    if (!to[v.label]) {
      to[v.label] = ++next;
      out.signs.push_back(sign_of[v.label]);
    }
    out.word.push_back({to[v.label], v.over});
  }
  return out;
}

// Word with groups of new visits spliced into arcs. Group g goes into arc
// slot[g]; groups sharing an arc keep their order in `groups`.
struct Splice {
  std::vector<CrossingVisit> word;
  std::vector<int> old_pos;               // old passage -> new position
  std::vector<std::vector<int>> new_pos;  // group, item -> new position
};

inline Splice splice(const GaussCode& c, const std::vector<int>& slot,
                     const std::vector<std::vector<CrossingVisit>>& groups) {
  const int len = static_cast<int>(c.word.size());
  Splice s;
  s.old_pos.assign(len, -1);
  s.new_pos.resize(groups.size());
  for (int a = 0; a <= len; ++a) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (slot[g] != a) continue;
      for (const auto& v : groups[g]) {
        s.new_pos[g].push_back(static_cast<int>(s.word.size()));
        s.word.push_back(v);
      }
    }
    if (a < len) {
      s.old_pos[a] = static_cast<int>(s.word.size());
      s.word.push_back(c.word[a]);
    }
  }
  return s;
}

// Image of an old dart after insertions: forward darts land on the first
// piece of their arc, backward darts on the last piece.
inline int map_dart_insert(int dart, const Splice& s, int old_len) {
  const int a = dart_arc(dart);
  if (dart_is_fwd(dart)) return fwd_dart(a == 0 ? 0 : s.old_pos[a - 1] + 1);
  return bwd_dart(a == old_len ? static_cast<int>(s.word.size()) : s.old_pos[a]);
}

// Image of an old dart after deleting word positions (sorted); the arc must
// survive.
inline int map_dart_delete(int dart, const std::vector<int>& deleted) {
  const int a = dart_arc(dart);
  const int shift = static_cast<int>(std::lower_bound(deleted.begin(), deleted.end(), a) - deleted.begin());
  return (a - shift) * 2 + (dart & 1);
}

inline std::vector<int> outer_from_dart(const GaussCode& code, int dart) {
  const auto m = build_map(code);
  return m.faces[m.face_of[dart]].arcs;
}

// A dart of face f avoiding the given arcs.
inline int dart_avoiding(const DiagramMap& m, int f, const std::vector<int>& arcs) {
  for (int d : m.faces[f].darts)
    if (std::find(arcs.begin(), arcs.end(), dart_arc(d)) == arcs.end()) return d;
  throw InvalidSite("outer region has no surviving dart");
}

inline GaussCode remove_positions(const GaussCode& c, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  std::vector<CrossingVisit> w;
  w.reserve(c.word.size() - positions.size());
  for (int p = 0; p < static_cast<int>(c.word.size()); ++p)
    if (!std::binary_search(positions.begin(), positions.end(), p)) w.push_back(c.word[p]);
  std::vector<int> sign_of(c.crossings() + 1, 0);
  for (int k = 1; k <= c.crossings(); ++k) sign_of[k] = c.signs[k - 1];
  return relabel(w, sign_of);
}

struct R2Plan {
  std::vector<int> slot;
  std::vector<std::vector<CrossingVisit>> groups;
  // group/item index of B and T on the d1 strand
  int gb = 0, ib = 0, gt = 0, it = 0;
};

// Crossing B is met first along d1's direction on the d1 strand, T second;
// along d2's direction the d2 strand meets T first.
inline R2Plan plan_r2(const GaussCode& c, const MoveSite& s) {
  const int n = c.crossings();
  const int B = n + 1, T = n + 2;
  const bool lo = s.flag;
  const CrossingVisit bl{B, lo}, tl{T, lo}, tr{T, !lo}, br{B, !lo};
  const int a1 = dart_arc(s.d1), a2 = dart_arc(s.d2);
  R2Plan p;
  if (s.d1 == s.d2) {
    std::vector<CrossingVisit> g{bl, tl, tr, br};
    if (dart_is_fwd(s.d1)) {
      p.gb = 0; p.ib = 0; p.gt = 0; p.it = 1;
    } else {
      std::reverse(g.begin(), g.end());
      p.gb = 0; p.ib = 3; p.gt = 0; p.it = 2;
    }
    p.slot = {a1};
    p.groups = {g};
    return p;
  }
  std::vector<CrossingVisit> gl{bl, tl}, gr{tr, br};
  int ib = 0, it = 1;
  if (!dart_is_fwd(s.d1)) {
    std::swap(gl[0], gl[1]);
    ib = 1;
    it = 0;
  }
  if (!dart_is_fwd(s.d2)) std::swap(gr[0], gr[1]);
  if (a1 == a2) {
    if (s.after) {
      p.slot = {a1, a1};
      p.groups = {gl, gr};
      p.gb = p.gt = 0;
    } else {
      p.slot = {a1, a1};
      p.groups = {gr, gl};
      p.gb = p.gt = 1;
    }
  } else {
    p.slot = {a1, a2};
    p.groups = {gl, gr};
    p.gb = p.gt = 0;
  }
  p.ib = ib;
  p.it = it;
  return p;
}

inline int r2_sign_b(const MoveSite& s) {
  const int e1 = dart_is_fwd(s.d1) ? 1 : -1, e2 = dart_is_fwd(s.d2) ? 1 : -1;
  const int e = s.d1 == s.d2 ? 1 : e1 * e2;
  return -(s.flag ? 1 : -1) * e;
}

inline int r1_sign(const MoveSite& s) {
  const int v = s.flag ? 1 : -1;
  return dart_is_fwd(s.d1) ? v : -v;
}

}  // namespace detail

/// All applicable sites of the requested kinds. Crossing-increasing sites
/// are omitted when the result would exceed `cap` crossings. In the plane
/// no move may sweep across the outer region.
inline std::vector<MoveSite> enumerate_moves(const GaussCode& code, const DiagramMap& m, KindMask kinds,
                                             int cap) {
  std::vector<MoveSite> out;
  const int n = code.crossings();
  const int outer = detail::outer_face_id(code, m);
  const int nf = static_cast<int>(m.faces.size());
  for (int f = 0; f < nf; ++f) {
    const auto& ds = m.faces[f].darts;
    if (f != outer) {
      if ((kinds & kind_bit(MoveKind::R1Remove)) && detail::is_monogon(code, m, f))
        out.push_back({MoveKind::R1Remove, f, ds[0], -1});
      if ((kinds & kind_bit(MoveKind::R2Remove)) && detail::is_bigon(code, m, f))
        out.push_back({MoveKind::R2Remove, f, ds[0], ds[1]});
      if ((kinds & kind_bit(MoveKind::R3)) && detail::is_r3_triangle(code, m, f))
        out.push_back({MoveKind::R3, f, ds[0], -1});
    }
    if ((kinds & kind_bit(MoveKind::R1Add)) && n + 1 <= cap)
      for (int d : ds)
        for (bool over_first : {true, false}) out.push_back({MoveKind::R1Add, f, d, -1, over_first});
    if ((kinds & kind_bit(MoveKind::R2Add)) && n + 2 <= cap) {
      const int k = static_cast<int>(ds.size());
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
          for (bool over : {true, false}) {
            if (ds[j] == reverse_dart(ds[i])) {
              out.push_back({MoveKind::R2Add, f, ds[i], ds[j], over, false});
              out.push_back({MoveKind::R2Add, f, ds[i], ds[j], over, true});
            } else {
              out.push_back({MoveKind::R2Add, f, ds[i], ds[j], over, false});
            }
          }
    }
  }
  return out;
}

inline std::vector<MoveSite> enumerate_moves(const GaussCode& code, KindMask kinds, int cap) {
  return enumerate_moves(code, build_map(code), kinds, cap);
}

namespace detail {

// Ω2 finger sites of one face: two per dart pair, four when the pair is an
// arc and its own reverse.
inline std::size_t r2_sites(const DiagramMap& m, int f) {
  const auto& ds = m.faces[f].darts;
  const std::size_t k = ds.size();
  std::size_t twins = 0;
  for (int d : ds)
    if (dart_is_fwd(d) && m.face_of[reverse_dart(d)] == f) ++twins;
  return k * (k + 1) + 2 * twins;
}

}  // namespace detail

/// Number of crossing-increasing sites, i.e. the size of
/// enumerate_moves(code, m, kIncreasing, cap), without listing them.
inline std::size_t increasing_site_count(const GaussCode& code, const DiagramMap& m, int cap) {
  const int n = code.crossings();
  std::size_t total = 0;
  for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
    if (n + 1 <= cap) total += 2 * m.faces[f].darts.size();
    if (n + 2 <= cap) total += detail::r2_sites(m, f);
  }
  return total;
}

/// The idx-th entry of enumerate_moves(code, m, kIncreasing, cap).
inline MoveSite increasing_site(const GaussCode& code, const DiagramMap& m, int cap, std::size_t idx) {
  const int n = code.crossings();
  for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
    const auto& ds = m.faces[f].darts;
    const std::size_t k = ds.size();
    if (n + 1 <= cap) {
      if (idx < 2 * k) return {MoveKind::R1Add, f, ds[idx / 2], -1, idx % 2 == 0};
      idx -= 2 * k;
    }
    if (n + 2 > cap) continue;
    const std::size_t here = detail::r2_sites(m, f);
    if (idx >= here) {
      idx -= here;
      continue;
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j)
        for (bool over : {true, false}) {
          if (ds[j] == reverse_dart(ds[i])) {
            if (idx < 2) return {MoveKind::R2Add, f, ds[i], ds[j], over, idx == 1};
            idx -= 2;
          } else {
            if (idx == 0) return {MoveKind::R2Add, f, ds[i], ds[j], over, false};
            --idx;
          }
        }
  }
  throw std::out_of_range("increasing_site: index past the last site");
}

/// Applies a move. Planar codes get their outer list updated by following a
/// dart of the old outer region into the new diagram. A crossing-increasing
/// Ω2 inside the outer region splits it in two and yields both choices.
inline std::vector<GaussCode> apply_move(const GaussCode& code, const DiagramMap& m, const MoveSite& s) {
  const int n = code.crossings();
  const int len = 2 * n;
  const bool planar = code.outer.has_value();
  const int outer = detail::outer_face_id(code, m);
  const int dc = m.dart_count();
  auto bad = [&](const char* why) { return InvalidSite(std::string(why) + " for '" + format_code(code) + "'"); };
  if (s.face < 0 || s.face >= static_cast<int>(m.faces.size())) throw bad("stale face");

  switch (s.kind) {
    case MoveKind::R1Remove: {
      if (!detail::is_monogon(code, m, s.face) || s.face == outer) throw bad("not a removable kink");
      const int z = dart_arc(m.faces[s.face].darts[0]);
      std::vector<int> del{z - 1, z};
      GaussCode out = detail::remove_positions(code, del);
      if (planar) {
        const int d = detail::dart_avoiding(m, outer, {z});
        out.outer = detail::outer_from_dart(out, detail::map_dart_delete(d, del));
      }
      return {out};
    }
    case MoveKind::R2Remove: {
      if (!detail::is_bigon(code, m, s.face) || s.face == outer) throw bad("not a removable bigon");
      const auto& ds = m.faces[s.face].darts;
      const int z1 = dart_arc(ds[0]), z2 = dart_arc(ds[1]);
      std::vector<int> del{z1 - 1, z1, z2 - 1, z2};
      std::sort(del.begin(), del.end());
      GaussCode out = detail::remove_positions(code, del);
      if (planar) {
        const int d = detail::dart_avoiding(m, outer, {z1, z2});
        out.outer = detail::outer_from_dart(out, detail::map_dart_delete(d, del));
      }
      return {out};
    }
    case MoveKind::R3: {
      if (!detail::is_r3_triangle(code, m, s.face) || s.face == outer) throw bad("not an Ω3 triangle");
      GaussCode w = code;
      w.outer.reset();
      std::vector<int> sides;
      for (int d : m.faces[s.face].darts) {
        const int z = dart_arc(d);
        sides.push_back(z);
        std::swap(w.word[z - 1], w.word[z]);
      }
      GaussCode out = canonicalize_labels(w);
      if (planar) out.outer = detail::outer_from_dart(out, detail::dart_avoiding(m, outer, sides));
      return {out};
    }
    case MoveKind::R1Add: {
      if (s.d1 < 0 || s.d1 >= dc || m.face_of[s.d1] != s.face) throw bad("stale kink site");
      const int X = n + 1;
      std::vector<CrossingVisit> g = s.flag ? std::vector<CrossingVisit>{{X, true}, {X, false}}
                                            : std::vector<CrossingVisit>{{X, false}, {X, true}};
      const auto sp = detail::splice(code, {dart_arc(s.d1)}, {g});
      std::vector<int> sign_of(n + 2, 0);
      for (int k = 1; k <= n; ++k) sign_of[k] = code.signs[k - 1];
      sign_of[X] = detail::r1_sign(s);
      GaussCode out = detail::relabel(sp.word, sign_of);
      if (planar) {
        const int d = m.faces[outer].darts[0];
        out.outer = detail::outer_from_dart(out, detail::map_dart_insert(d, sp, len));
      }
      return {out};
    }
    case MoveKind::R2Add: {
      if (s.d1 < 0 || s.d2 < 0 || s.d1 >= dc || s.d2 >= dc || m.face_of[s.d1] != s.face ||
          m.face_of[s.d2] != s.face)
        throw bad("stale finger-move site");
      const auto plan = detail::plan_r2(code, s);
      const auto sp = detail::splice(code, plan.slot, plan.groups);
      std::vector<int> sign_of(n + 3, 0);
      for (int k = 1; k <= n; ++k) sign_of[k] = code.signs[k - 1];
      sign_of[n + 1] = detail::r2_sign_b(s);
      sign_of[n + 2] = -sign_of[n + 1];
      GaussCode out = detail::relabel(sp.word, sign_of);
      if (!planar) return {out};
      if (s.face != outer) {
        const int d = detail::dart_avoiding(m, outer, {});
        out.outer = detail::outer_from_dart(out, detail::map_dart_insert(d, sp, len));
        return {out};
      }
      const int pb = sp.new_pos[plan.gb][plan.ib], pt = sp.new_pos[plan.gt][plan.it];
      const bool f1 = dart_is_fwd(s.d1);
      const int below = f1 ? fwd_dart(pb) : bwd_dart(pb + 1);
      const int above = f1 ? fwd_dart(pt + 1) : bwd_dart(pt);
      const auto nm = build_map(out);
      GaussCode a = out, b = out;
      a.outer = nm.faces[nm.face_of[below]].arcs;
      b.outer = nm.faces[nm.face_of[above]].arcs;
      return {a, b};
    }
  }
  return {};
}

inline std::vector<GaussCode> apply_move(const GaussCode& code, const MoveSite& s) {
  return apply_move(code, build_map(code), s);
}

/// Outer region after a planar move, derived from the old regions alone by
/// the local rules for each move (which arcs split, merge or change sides),
/// without tracing the new diagram. Returns nullopt for finger moves between
/// two points of the same arc, which the rules do not cover.
inline std::optional<std::vector<std::vector<int>>> outer_by_region_rule(const GaussCode& code,
                                                                       const DiagramMap& m,
                                                                       const MoveSite& s) {
  if (!code.outer) return std::nullopt;
  const int outer = detail::outer_face_id(code, m);
  const auto& out_arcs = *code.outer;
  auto finish = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  auto corner = [&](int d) { return m.face_of[m.sigma[m.sigma[d]]]; };

  switch (s.kind) {
    case MoveKind::R1Add: {
      // Arc a splits into a, a+1 (the loop), a+2. The loop's outside touches
      // the outer region iff the kink is drawn into it.
      const int a = dart_arc(s.d1);
      std::vector<int> r;
      for (int x : out_arcs) {
        if (x < a) r.push_back(x);
        else if (x > a) r.push_back(x + 2);
        else {
          r.push_back(a);
          r.push_back(a + 2);
          if (s.face == outer) r.push_back(a + 1);
        }
      }
      return std::vector<std::vector<int>>{finish(r)};
    }
    case MoveKind::R1Remove: {
      const int z = dart_arc(m.faces[s.face].darts[0]);
      std::vector<int> r;
      for (int x : out_arcs) {
        if (x == z) continue;
        r.push_back(x < z ? x : (x == z + 1 ? z - 1 : x - 2));
      }
      return std::vector<std::vector<int>>{finish(r)};
    }
    case MoveKind::R2Remove: {
      const auto& ds = m.faces[s.face].darts;
      const int z1 = std::min(dart_arc(ds[0]), dart_arc(ds[1])), z2 = std::max(dart_arc(ds[0]), dart_arc(ds[1]));
      const int c1 = corner(ds[0]), c2 = corner(ds[1]);
      std::vector<int> src = out_arcs;
      if (outer == c1 || outer == c2) {
        const int other = outer == c1 ? c2 : c1;
        src.insert(src.end(), m.faces[other].arcs.begin(), m.faces[other].arcs.end());
      }
      std::vector<int> r;
      for (int x : src) {
        if (x == z1 || x == z2) continue;
        if (x < z1) r.push_back(x);
        else if (x < z2) r.push_back(x == z1 + 1 ? z1 - 1 : x - 2);
        else r.push_back(x == z2 + 1 ? z2 - 3 : x - 4);
      }
      return std::vector<std::vector<int>>{finish(r)};
    }
    case MoveKind::R3: {
      // Side a_i ends up on the outer region iff the corner region opposite
      // to it is the outer region.
      const auto& ds = m.faces[s.face].darts;
      std::vector<int> r = out_arcs;
      for (int i = 0; i < 3; ++i) {
        const int ai = dart_arc(ds[(i + 2) % 3]);
        const int ri = corner(ds[(i + 1) % 3]);
        r.erase(std::remove(r.begin(), r.end(), ai), r.end());
        if (ri == outer) r.push_back(ai);
      }
      return std::vector<std::vector<int>>{finish(r)};
    }
    case MoveKind::R2Add: {
      const int a1 = dart_arc(s.d1), a2 = dart_arc(s.d2);
      if (a1 == a2) return std::nullopt;
      const int f = s.face;
      const auto& cyc = m.faces[f].darts;
      const int k = static_cast<int>(cyc.size());
      const int i1 = static_cast<int>(std::find(cyc.begin(), cyc.end(), s.d1) - cyc.begin());
      const int i2 = static_cast<int>(std::find(cyc.begin(), cyc.end(), s.d2) - cyc.begin());
      constexpr int kTop = -2, kBottom = -3, kBigon = -4;
      // Face token of an old dart other than d1, d2 after the split of f.
      auto tok = [&](int e) {
        if (m.face_of[e] != f) return m.face_of[e];
        const int ie = static_cast<int>(std::find(cyc.begin(), cyc.end(), e) - cyc.begin());
        const int from1 = (ie - i1 + k) % k, from2 = (i2 - i1 + k) % k;
        return from1 < from2 ? kTop : kBottom;
      };
      const int lo = std::min(a1, a2), hi = std::max(a1, a2);
      auto shift = [&](int x) { return x < lo ? x : (x > hi ? x + 4 : x + 2); };
      auto pieces = [&](int arc, bool fwd) {
        const int base = arc == lo ? lo : hi + 2;
        std::vector<int> p{base, base + 1, base + 2};
        if (!fwd) std::reverse(p.begin(), p.end());
        return p;  // in the dart's direction
      };
      const auto pl = pieces(a1, dart_is_fwd(s.d1)), pr = pieces(a2, dart_is_fwd(s.d2));
      const int g_l = tok(reverse_dart(s.d1)), g_r = tok(reverse_dart(s.d2));
      struct Side { int arc, right, left; };
      const Side sides[6] = {
          {pl[0], kBottom, g_l}, {pl[1], g_r, kBigon}, {pl[2], kTop, g_l},
          {pr[0], kTop, g_r},    {pr[1], g_l, kBigon}, {pr[2], kBottom, g_r},
      };
      auto collect = [&](int target) {
        std::vector<int> r;
        for (int e = 0; e < m.dart_count(); ++e) {
          const int x = dart_arc(e);
          if (x == a1 || x == a2) continue;
          if (tok(e) == target) r.push_back(shift(x));
        }
        for (const auto& sd : sides)
          if (sd.right == target || sd.left == target) r.push_back(sd.arc);
        return finish(r);
      };
      if (f != outer) return std::vector<std::vector<int>>{collect(outer)};
      return std::vector<std::vector<int>>{collect(kBottom), collect(kTop)};
    }
  }
  return std::nullopt;
}

/// Greedy reduction: repeatedly take the order-minimal result among all
/// crossing-decreasing and Ω3 moves that lowers the code in the total order.
inline GaussCode reduce(GaussCode code) {
  while (true) {
    const auto m = build_map(code);
    std::optional<GaussCode> best;
    for (const auto& s : enumerate_moves(code, m, kReducing, code.crossings())) {
      for (auto& c : apply_move(code, m, s)) {
        if (compare(c, code) != Order::Less) continue;
        if (!best || compare(c, *best) == Order::Less) best = std::move(c);
      }
    }
    if (!best) return code;
    code = std::move(*best);
  }
}

}  // namespace knotoid
