#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knotoid/embedding.hpp"
#include "knotoid/gauss_code.hpp"

namespace knotoid {

enum class Surface { Sphere, Planar };

inline const char* to_string(Surface s) { return s == Surface::Sphere ? "sphere" : "planar"; }

inline std::optional<Surface> parse_surface(std::string_view s) {
  if (s == "sphere") return Surface::Sphere;
  if (s == "planar") return Surface::Planar;
  return std::nullopt;
}

/// Calls `fn` on every canonical oriented Gauss code with n crossings, in
/// increasing code order, stopping early if `fn` returns false. With a
/// cursor, generation resumes after it (outer data is ignored), or at it
/// when `inclusive` is set.
inline void generate_codes(int n, const std::function<bool(const GaussCode&)>& fn,
                           const std::optional<GaussCode>& after = std::nullopt, bool inclusive = false) {
  GaussCode code;
  code.word.reserve(2 * n);
  code.signs.assign(n, -1);
  // 0 unseen, 1 open after under, 2 open after over, 3 closed
  std::vector<int> state(n + 2, 0);
  const std::vector<CrossingVisit>* cur = after ? &after->word : nullptr;
  if (cur && static_cast<int>(cur->size()) != 2 * n) cur = nullptr;
  bool stop = false;

  auto emit_signs = [&](bool tight) {
    const std::uint64_t total = std::uint64_t{1} << n;
    std::uint64_t s = 0;
    if (tight) {
      // resume at (inclusive) or just after the cursor's sign string
      std::uint64_t c = 0;
      for (int i = 0; i < n; ++i) c = (c << 1) | (after->signs[i] > 0 ? 1u : 0u);
      s = inclusive ? c : c + 1;
    }
    for (; s < total && !stop; ++s) {
      for (int i = 0; i < n; ++i) code.signs[i] = (s >> (n - 1 - i)) & 1u ? 1 : -1;
      if (!fn(code)) stop = true;
    }
  };

  std::function<void(int, bool)> rec = [&](int opened, bool tight) {
    const int i = static_cast<int>(code.word.size());
    if (i == 2 * n) {
      emit_signs(tight);
      return;
    }
    const int floor_key = tight ? detail::visit_key((*cur)[i]) : 0;
    auto try_visit = [&](CrossingVisit v, int next_opened) {
      const int key = detail::visit_key(v);
      if (stop || key < floor_key) return;
      code.word.push_back(v);
      rec(next_opened, tight && key == floor_key);
      code.word.pop_back();
    };
    for (int l = 1; l <= opened && !stop; ++l) {
      const int st = state[l];
      if (st != 1 && st != 2) continue;
      state[l] = 3;
      try_visit({l, st == 1}, opened);
      state[l] = st;
    }
    if (opened < n) {
      const int l = opened + 1;
      for (bool over : {false, true}) {
        state[l] = over ? 2 : 1;
        try_visit({l, over}, l);
        state[l] = 0;
      }
    }
  };
  rec(0, cur != nullptr);
}

inline std::vector<GaussCode> all_codes(int n) {
  std::vector<GaussCode> out;
  generate_codes(n, [&](const GaussCode& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

/// Streams realizable diagrams: sphere codes, or every extended variant for
/// the plane. Each emitted diagram comes with its combinatorial map.
inline void realizable_diagrams(int n, Surface surface,
                                const std::function<bool(const GaussCode&, const DiagramMap&)>& fn,
                                const std::optional<GaussCode>& after = std::nullopt) {
  bool stop = false;
  generate_codes(
      n,
      [&](const GaussCode& c) {
        auto m = try_build_map(c);
        if (!m) return true;
        if (surface == Surface::Sphere) {
          if (!fn(c, *m)) stop = true;
          return !stop;
        }
        std::vector<GaussCode> vars;
        vars.reserve(m->faces.size());
        for (const auto& f : m->faces) {
          GaussCode x = c;
          x.outer = f.arcs;
          vars.push_back(std::move(x));
        }
        std::sort(vars.begin(), vars.end(), CodeLess{});
        for (const auto& x : vars) {
          if (after && after->outer && compare(x, *after) != Order::Greater) continue;
          if (!fn(x, *m)) {
            stop = true;
            break;
          }
        }
        return !stop;
      },
      after, after && after->outer && surface == Surface::Planar);
}

inline std::vector<GaussCode> realizable_codes(int n, Surface surface) {
  std::vector<GaussCode> out;
  realizable_diagrams(n, surface, [&](const GaussCode& c, const DiagramMap&) {
    out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace knotoid
