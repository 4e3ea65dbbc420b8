#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotoid/gauss_code.hpp"

namespace knotoid {

class NotRealizable : public std::runtime_error {
 public:
  NotRealizable(const std::string& what, int faces) : std::runtime_error(what), traced_faces(faces) {}
  int traced_faces;
};

/// Darts: arc z owns dart 2z (along the orientation) and 2z+1 (against it).
inline int fwd_dart(int arc) { return 2 * arc; }
inline int bwd_dart(int arc) { return 2 * arc + 1; }
inline int dart_arc(int dart) { return dart >> 1; }
inline bool dart_is_fwd(int dart) { return (dart & 1) == 0; }
inline int reverse_dart(int dart) { return dart ^ 1; }

/// Region of a diagram: the darts of its boundary walk (the face lies to the
/// right of each dart) and the sorted set of arcs they belong to.
struct Region {
  std::vector<int> darts;
  std::vector<int> arcs;
};

/// Combinatorial embedding of the underlying graph of a knotoid diagram:
/// n crossing vertices, two endpoint vertices, 2n+1 edges.
struct DiagramMap {
  int n = 0;
  std::vector<int> over_pos;   // crossing label -> word position of its over passage
  std::vector<int> under_pos;  // crossing label -> word position of its under passage
  std::vector<int> sigma;      // dart -> next dart counterclockwise around its origin
  std::vector<int> face_of;    // dart -> region index
  std::vector<Region> faces;

  int dart_count() const { return static_cast<int>(sigma.size()); }
  int tail_face() const { return face_of[fwd_dart(0)]; }
  int head_face() const { return face_of[bwd_dart(2 * n)]; }
  /// Next dart along the boundary walk of the face to the right of `d`.
  int face_next(int d) const { return sigma[reverse_dart(d)]; }

  /// Region with exactly the given arc set, or -1.
  int find_face(const std::vector<int>& arcs) const {
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].arcs == arcs) return static_cast<int>(f);
    return -1;
  }
};

namespace detail {

// Counterclockwise slot order at a positive crossing is
// (in-under, out-over, out-under, in-over); a negative crossing reverses it.
inline void fill_rotation(const GaussCode& code, DiagramMap& m) {
  const int n = code.crossings();
  m.n = n;
  m.over_pos.assign(n + 1, -1);
  m.under_pos.assign(n + 1, -1);
  for (int p = 0; p < 2 * n; ++p) {
    const auto& v = code.word[p];
    (v.over ? m.over_pos : m.under_pos)[v.label] = p;
  }
  const int darts = 2 * (2 * n + 1);
  m.sigma.assign(darts, -1);
  m.sigma[fwd_dart(0)] = fwd_dart(0);
  m.sigma[bwd_dart(2 * n)] = bwd_dart(2 * n);
  for (int c = 1; c <= n; ++c) {
    const int po = m.over_pos[c], pu = m.under_pos[c];
    const int in_under = bwd_dart(pu), out_under = fwd_dart(pu + 1);
    const int in_over = bwd_dart(po), out_over = fwd_dart(po + 1);
    int ring[4];
    if (code.signs[c - 1] > 0) {
      ring[0] = in_under; ring[1] = out_over; ring[2] = out_under; ring[3] = in_over;
    } else {
      ring[0] = in_under; ring[1] = in_over; ring[2] = out_under; ring[3] = out_over;
    }
    for (int k = 0; k < 4; ++k) m.sigma[ring[k]] = ring[(k + 1) % 4];
  }
}

inline void trace_faces(DiagramMap& m) {
  const int darts = m.dart_count();
  m.face_of.assign(darts, -1);
  m.faces.clear();
  for (int d0 = 0; d0 < darts; ++d0) {
    if (m.face_of[d0] >= 0) continue;
    Region r;
    const int id = static_cast<int>(m.faces.size());
    for (int d = d0; m.face_of[d] < 0; d = m.face_next(d)) {
      m.face_of[d] = id;
      r.darts.push_back(d);
      r.arcs.push_back(dart_arc(d));
    }
    std::sort(r.arcs.begin(), r.arcs.end());
    r.arcs.erase(std::unique(r.arcs.begin(), r.arcs.end()), r.arcs.end());
    m.faces.push_back(std::move(r));
  }
}

}  // namespace detail

/// Traces the rotation system forced by the code. Returns nullopt when the
/// traced surface is not a sphere (face count differs from n+1).
inline std::optional<DiagramMap> try_build_map(const GaussCode& code) {
  DiagramMap m;
  detail::fill_rotation(code, m);
  detail::trace_faces(m);
  if (static_cast<int>(m.faces.size()) != code.crossings() + 1) return std::nullopt;
  return m;
}

inline DiagramMap build_map(const GaussCode& code) {
  DiagramMap m;
  detail::fill_rotation(code, m);
  detail::trace_faces(m);
  const int f = static_cast<int>(m.faces.size());
  if (f != code.crossings() + 1)
    throw NotRealizable("code '" + format_code(code) + "' traces " + std::to_string(f) +
                            " faces, expected " + std::to_string(code.crossings() + 1),
                        f);
  return m;
}

/// Face count only; avoids building region lists.
inline int traced_face_count(const GaussCode& code) {
  DiagramMap m;
  detail::fill_rotation(code, m);
  const int darts = m.dart_count();
  std::vector<char> seen(darts, 0);
  int faces = 0;
  for (int d0 = 0; d0 < darts; ++d0) {
    if (seen[d0]) continue;
    ++faces;
    for (int d = d0; !seen[d]; d = m.face_next(d)) seen[d] = 1;
  }
  return faces;
}

inline bool is_realizable(const GaussCode& code) { return traced_face_count(code) == code.crossings() + 1; }

/// For an extended code: realizable in S^2 and its outer list is a region.
inline bool is_realizable_planar(const GaussCode& code) {
  if (!code.outer) return false;
  auto m = try_build_map(code);
  return m && m->find_face(*code.outer) >= 0;
}

inline std::vector<Region> regions(const GaussCode& code) { return build_map(code).faces; }

/// One extended code per region of the diagram.
inline std::vector<GaussCode> extended_variants(const GaussCode& code) {
  const auto m = build_map(code);
  std::vector<GaussCode> out;
  out.reserve(m.faces.size());
  for (const auto& f : m.faces) {
    GaussCode x = canonicalize_labels(code.sphere());
    x.outer = f.arcs;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), CodeLess{});
  return out;
}

enum class EndpointClass { KnotType = 0, Proper = 1, NonProper = 2 };

inline const char* to_string(EndpointClass c) {
  switch (c) {
    case EndpointClass::KnotType: return "knot_type";
    case EndpointClass::Proper: return "proper";
    case EndpointClass::NonProper: return "non_proper";
  }
  return "?";
}

/// Endpoint position relative to the outer region. Arcs 0 and 2n are the only
/// arcs touching the tail and the head, and each touches a single region.
inline EndpointClass classify_endpoints(const GaussCode& xcode) {
  if (!xcode.outer) throw std::invalid_argument("classify_endpoints needs an extended code");
  const auto& out = *xcode.outer;
  const bool tail = std::binary_search(out.begin(), out.end(), 0);
  const bool head = std::binary_search(out.begin(), out.end(), 2 * xcode.crossings());
  if (tail && head) return EndpointClass::KnotType;
  if (tail || head) return EndpointClass::Proper;
  return EndpointClass::NonProper;
}

/// In S^2 a knotoid diagram is knot-type when both endpoints share a region.
inline bool sphere_knot_type(const DiagramMap& m) { return m.tail_face() == m.head_face(); }

}  // namespace knotoid
