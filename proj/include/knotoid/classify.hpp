#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotoid/covers.hpp"
#include "knotoid/embedding.hpp"
#include "knotoid/enumerate.hpp"
#include "knotoid/gauss_code.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/moves.hpp"
#include "knotoid/parallel.hpp"
#include "knotoid/union_find.hpp"

namespace knotoid {

struct WalkParams {
  int steps = 10000;
  int rounds = 5;
  double bias = 2.0;        // weight of {Ω1/Ω2 removal, Ω3} against {Ω1/Ω2 addition}
  int headroom = 4;         // walks abort growth beyond max_crossings + headroom
  std::uint64_t seed = 1;
  int trivial_rounds = 20;  // extra rounds on the trivial sphere cell
  bool per_node = true;     // one walk per node; otherwise one per component
  int threads = 1;
};

struct Cell {
  std::string primary;    // loop arrow (plane) or arrow polynomial (sphere)
  std::string secondary;  // lift Jones polynomial (plane only)
  std::vector<int> nodes;
  bool terminated = false;  // one isotopy component, or only composites: no more walks
  bool resolved = false;    // one class up to involutions, or only composites
};

/// Diagrams with up to max_crossings crossings, indexed in code order, with
/// their invariant cells and the union-find of known equivalences.
struct ClassificationState {
  Surface surface = Surface::Planar;
  int max_crossings = 0;
  std::vector<GaussCode> nodes;
  std::unordered_map<GaussCode, int, GaussCodeHash> index;
  std::vector<int> cell_of;
  std::vector<Cell> cells;
  UnionFind uf;
  std::vector<char> composite;
  std::vector<std::array<int, 3>> images;  // node ids of the mirror, symmetry and rotation images
  int round = 0;          // main walk rounds completed
  int trivial_round = 0;  // extra rounds spent on the trivial sphere cell
  bool composites_done = false;

  int id_of(const GaussCode& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  int crossings(int id) const { return nodes[id].crossings(); }

  int component_count(int cell) {
    std::vector<int> roots;
    for (int v : cells[cell].nodes) roots.push_back(uf.find(v));
    std::sort(roots.begin(), roots.end());
    return static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
  }

  /// Known equivalences plus the involution edges.
  UnionFind involution_classes() const {
    UnionFind u = uf;
    for (std::size_t v = 0; v < images.size(); ++v)
      for (int w : images[v]) u.unite(static_cast<int>(v), w);
    return u;
  }

  void update_terminated() {
    UnionFind inv = involution_classes();
    std::vector<char> comp_composite;
    if (composites_done) {
      comp_composite.assign(nodes.size(), 0);
      for (std::size_t v = 0; v < nodes.size(); ++v)
        if (composite[v]) comp_composite[uf.find(static_cast<int>(v))] = 1;
    }
    for (auto& cell : cells) {
      const int r0 = uf.find(cell.nodes.front()), i0 = inv.find(cell.nodes.front());
      const bool only_composite =
          composites_done && std::all_of(cell.nodes.begin(), cell.nodes.end(),
                                         [&](int v) { return comp_composite[uf.find(v)] != 0; });
      cell.terminated = only_composite ||
                        std::all_of(cell.nodes.begin(), cell.nodes.end(), [&](int v) { return uf.find(v) == r0; });
      cell.resolved = cell.terminated ||
                      std::all_of(cell.nodes.begin(), cell.nodes.end(), [&](int v) { return inv.find(v) == i0; });
    }
  }

  bool all_terminated() const {
    return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.terminated; });
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t node, std::uint64_t round, std::uint64_t tag) {
  return splitmix64(splitmix64(splitmix64(seed ^ (tag << 56)) ^ node) ^ round);
}

inline void index_nodes(ClassificationState& st) {
  st.index.clear();
  st.index.reserve(st.nodes.size() * 2);
  for (std::size_t i = 0; i < st.nodes.size(); ++i) st.index.emplace(st.nodes[i], static_cast<int>(i));
}

inline int require_node(const ClassificationState& st, const GaussCode& c) {
  const int id = st.id_of(c);
  if (id < 0) throw std::logic_error("diagram missing from node set: " + format_code(c));
  return id;
}

inline void require_same_cell(const ClassificationState& st, int a, int b) {
  if (st.cell_of[a] != st.cell_of[b])
    throw std::logic_error("move crossed invariant cells: " + format_code(st.nodes[a]) + " / " +
                           format_code(st.nodes[b]));
}

}  // namespace detail

/// All realizable diagrams with up to max_crossings crossings.
inline std::vector<GaussCode> diagrams_up_to(int max_crossings, Surface surface) {
  std::vector<GaussCode> out;
  for (int n = 0; n <= max_crossings; ++n)
    realizable_diagrams(n, surface, [&](const GaussCode& c, const DiagramMap&) {
      out.push_back(c);
      return true;
    });
  return out;
}

/// Invariant key parts of one diagram: (loop arrow, lift Jones) in the plane,
/// (arrow, "") on the sphere.
inline std::pair<std::string, std::string> invariant_key(const GaussCode& c, Surface surface) {
  const auto m = build_map(c);
  if (surface == Surface::Sphere) return {render(arrow_polynomial(c, m)), {}};
  return {render(loop_arrow_polynomial(c, m)), render(dbc_invariant(c, m))};
}

/// Nodes and invariant cells. Cells are numbered by their smallest node.
inline ClassificationState partition(int max_crossings, Surface surface, int threads = 1) {
  ClassificationState st;
  st.surface = surface;
  st.max_crossings = max_crossings;
  st.nodes = diagrams_up_to(max_crossings, surface);
  detail::index_nodes(st);
  const std::size_t n = st.nodes.size();
  std::vector<std::pair<std::string, std::string>> keys(n);
  parallel_for(n, threads, [&](std::size_t i) { keys[i] = invariant_key(st.nodes[i], surface); });
  std::map<std::pair<std::string, std::string>, int> cell_id;
  st.cell_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = cell_id.try_emplace(keys[i], static_cast<int>(st.cells.size()));
    if (fresh) st.cells.push_back(Cell{keys[i].first, keys[i].second, {}, false, false});
    st.cell_of[i] = it->second;
    st.cells[it->second].nodes.push_back(static_cast<int>(i));
  }
  st.uf = UnionFind(static_cast<int>(n));
  st.composite.assign(n, 0);
  st.images.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = st.nodes[i];
    st.images[i] = {detail::require_node(st, mirror(c)), detail::require_node(st, symmetry(c)),
                    detail::require_node(st, rotate(c))};
  }
  st.update_terminated();
  return st;
}

/// Edges for every crossing-decreasing Ω1/Ω2 move, every Ω3 move and
/// reversion.
inline void seed_edges(ClassificationState& st, int threads = 1) {
  const std::size_t n = st.nodes.size();
  std::vector<std::vector<int>> nb(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& c = st.nodes[i];
    const auto m = build_map(c);
    for (const auto& s : enumerate_moves(c, m, kReducing, c.crossings()))
      for (const auto& r : apply_move(c, m, s)) nb[i].push_back(detail::require_node(st, r));
    nb[i].push_back(detail::require_node(st, reverse(c)));
  });
  for (std::size_t i = 0; i < n; ++i)
    for (int j : nb[i]) {
      detail::require_same_cell(st, static_cast<int>(i), j);
      st.uf.unite(static_cast<int>(i), j);
    }
  st.update_terminated();
}

/// One biased random walk from node `start`. Returns the nodes met along the
/// way (diagrams within max_crossings) and the node the final reduction
/// reaches, sorted and deduplicated.
inline std::vector<int> random_walk(const ClassificationState& st, int start, const WalkParams& p,
                                    std::uint64_t stream) {
  std::mt19937_64 rng(stream);
  const int cap = st.max_crossings + p.headroom;
  const double p_reduce = p.bias / (p.bias + 1.0);
  std::vector<int> hits;
  GaussCode cur = st.nodes[start];
  auto record = [&](const GaussCode& c) {
    if (c.crossings() > st.max_crossings) return;
    hits.push_back(detail::require_node(st, c));
  };
  for (int step = 0; step < p.steps; ++step) {
    const auto m = build_map(cur);
    const auto red = enumerate_moves(cur, m, kReducing, cap);
    const std::size_t inc = increasing_site_count(cur, m, cap);
    if (red.empty() && inc == 0) break;
    bool use_red = !red.empty();
    if (!red.empty() && inc > 0) use_red = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_reduce;
    const MoveSite site = use_red ? red[std::uniform_int_distribution<std::size_t>(0, red.size() - 1)(rng)]
                                  : increasing_site(cur, m, cap, std::uniform_int_distribution<std::size_t>(0, inc - 1)(rng));
    auto outs = apply_move(cur, m, site);
    cur = std::move(outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)]);
    record(cur);
  }
  record(reduce(cur));
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

/// Walks from every node (or component) of the selected unterminated
/// cells, in fixed-size chunks. Merges are applied after each chunk in start
/// order, and starts whose cell has terminated meanwhile are skipped, so the
/// outcome does not depend on the thread count.
inline void walk_round(ClassificationState& st, const WalkParams& p, std::uint64_t round_id,
                       std::uint64_t tag = 0, int only_cell = -1) {
  constexpr std::size_t kChunk = 256;
  std::vector<int> starts;
  for (std::size_t c = 0; c < st.cells.size(); ++c) {
    if (st.cells[c].terminated) continue;
    if (only_cell >= 0 && static_cast<int>(c) != only_cell) continue;
    std::vector<int> roots;
    for (int v : st.cells[c].nodes) {
      if (p.per_node) {
        starts.push_back(v);
      } else {
        roots.push_back(st.uf.find(v));
      }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    starts.insert(starts.end(), roots.begin(), roots.end());
  }
  const int threads = resolve_threads(p.threads);
  for (std::size_t lo = 0; lo < starts.size(); lo += kChunk) {
    std::vector<int> chunk;
    for (std::size_t i = lo; i < std::min(starts.size(), lo + kChunk); ++i)
      if (!st.cells[st.cell_of[starts[i]]].terminated) chunk.push_back(starts[i]);
    if (chunk.empty()) continue;
    std::vector<std::vector<int>> hits(chunk.size());
    parallel_for(chunk.size(), threads, [&](std::size_t i) {
      hits[i] = random_walk(st, chunk[i], p, detail::stream_seed(p.seed, chunk[i], round_id, tag));
    });
    for (std::size_t i = 0; i < chunk.size(); ++i)
      for (int h : hits[i]) {
        detail::require_same_cell(st, chunk[i], h);
        st.uf.unite(chunk[i], h);
      }
    st.update_terminated();
  }
}

/// Products of two knotoid diagrams by endpoint concatenation: d1*d2, d2*d1,
/// rev(d1)*d2 and d2*rev(d1). In the plane the second factor is drawn inside
/// the region holding the first factor's head, which needs the second
/// factor's tail in its outer region; the product keeps the first factor's
/// outer region. Unavailable products are skipped.
inline std::vector<GaussCode> compose(const GaussCode& d1, const GaussCode& d2) {
  if (d1.extended() != d2.extended()) throw std::invalid_argument("compose: mixed sphere and planar factors");
  auto concat = [](const GaussCode& a, const GaussCode& b) -> std::optional<GaussCode> {
    const int na = a.crossings();
    GaussCode r;
    r.word = a.word;
    for (auto v : b.word) r.word.push_back({v.label + na, v.over});
    r.signs = a.signs;
    r.signs.insert(r.signs.end(), b.signs.begin(), b.signs.end());
    if (!a.outer) return r;
    if (!std::binary_search(b.outer->begin(), b.outer->end(), 0)) return std::nullopt;
    if (na == 0) {
      r.outer = b.outer;
      return r;
    }
    const auto ma = build_map(a);
    const int fo = ma.find_face(*a.outer);
    int dart = -1;
    for (int d : ma.faces[fo].darts)
      if (dart_arc(d) != 2 * na) {
        dart = d;
        break;
      }
    const auto mr = build_map(r);
    r.outer = mr.faces[mr.face_of[dart]].arcs;
    return r;
  };
  const GaussCode r1 = reverse(d1);
  std::vector<GaussCode> out;
  for (auto [a, b] : {std::pair{&d1, &d2}, std::pair{&d2, &d1}, std::pair{&r1, &d2}, std::pair{&d2, &r1}})
    if (auto c = concat(*a, *b)) out.push_back(canonicalize_labels(*c));
  std::sort(out.begin(), out.end(), CodeLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Marks every product of two diagrams of nontrivial classes that fits
/// within max_crossings. All diagrams are used as factors, not only class
/// representatives: in the plane a product exists only for factors whose
/// endpoints sit in suitable regions.
inline void mark_composites(ClassificationState& st, int threads = 1) {
  const int n = static_cast<int>(st.nodes.size());
  const int trivial = st.uf.find(0);
  std::vector<std::vector<int>> by_crossings(st.max_crossings + 1);
  for (int v = 0; v < n; ++v)
    if (st.uf.find(v) != trivial) by_crossings[st.crossings(v)].push_back(v);
  std::vector<int> firsts;
  for (int k = 1; k < st.max_crossings; ++k)
    for (int v : by_crossings[k]) firsts.push_back(v);
  std::vector<std::vector<int>> hits(firsts.size());
  parallel_for(firsts.size(), threads, [&](std::size_t i) {
    const int a = firsts[i];
    const int ka = st.crossings(a);
    for (int kb = 1; ka + kb <= st.max_crossings; ++kb)
      for (int b : by_crossings[kb])
        for (const auto& p : compose(st.nodes[a], st.nodes[b])) hits[i].push_back(detail::require_node(st, p));
  });
  for (const auto& h : hits)
    for (int v : h) st.composite[v] = 1;
  st.composites_done = true;
  st.update_terminated();
}

/// Runs walks and composite marking to the configured budget. `checkpoint` is called after
/// every completed round with the current state.
inline void run_classification(ClassificationState& st, const WalkParams& p,
                               const std::function<void(const ClassificationState&)>& checkpoint = {}) {
  auto save = [&] {
    if (checkpoint) checkpoint(st);
  };
  const int trivial_cell = st.cell_of[0];
  if (st.round == 0 && p.rounds > 0 && !st.all_terminated()) {
    walk_round(st, p, 0);
    st.round = 1;
    save();
  }
  if (!st.composites_done) {
    if (st.surface == Surface::Sphere) {
      while (!st.cells[trivial_cell].terminated && st.trivial_round < p.trivial_rounds) {
        walk_round(st, p, st.trivial_round, 1, trivial_cell);
        ++st.trivial_round;
        save();
      }
    }
    mark_composites(st, resolve_threads(p.threads));
    save();
  }
  while (st.round < p.rounds && !st.all_terminated()) {
    walk_round(st, p, st.round);
    ++st.round;
    save();
  }
}

/// Planar trivial diagrams are detected by the lift invariant, so their
/// cell is merged outright.
inline void merge_trivial_planar(ClassificationState& st) {
  if (st.surface != Surface::Planar) return;
  const auto& cell = st.cells[st.cell_of[0]];
  for (int v : cell.nodes) st.uf.unite(0, v);
  st.update_terminated();
}

enum class DiagramStatus { CandidatePrime, Prime, Composite, NotPrime };

inline const char* to_string(DiagramStatus s) {
  switch (s) {
    case DiagramStatus::CandidatePrime: return "candidate_prime";
    case DiagramStatus::Prime: return "prime";
    case DiagramStatus::Composite: return "composite";
    case DiagramStatus::NotPrime: return "not_prime";
  }
  return "?";
}

/// Per node: components holding a composite diagram are composite;
/// otherwise the component minimum is a (candidate) prime.
inline std::vector<DiagramStatus> mark_statuses(ClassificationState& st) {
  const int n = static_cast<int>(st.nodes.size());
  std::vector<char> comp_composite(n, 0);
  for (int v = 0; v < n; ++v)
    if (st.composite[v]) comp_composite[st.uf.find(v)] = 1;
  std::vector<DiagramStatus> out(n, DiagramStatus::NotPrime);
  for (int v = 0; v < n; ++v) {
    const int r = st.uf.find(v);
    if (comp_composite[r]) {
      out[v] = DiagramStatus::Composite;
    } else if (r == v) {
      out[v] = st.cells[st.cell_of[v]].terminated ? DiagramStatus::Prime : DiagramStatus::CandidatePrime;
    }
  }
  return out;
}

struct PrimeEntry {
  std::string name;
  GaussCode code;
  int crossings = 0;
  EndpointClass cls = EndpointClass::NonProper;
  bool rotatable = false;
  bool achiral = false;
  bool strongly_achiral = false;
  bool unresolved = false;
  int node = -1;
  std::string primary, secondary;
};

struct ClassificationResult {
  Surface surface = Surface::Planar;
  int max_crossings = 0;
  std::vector<PrimeEntry> primes;  // sorted by crossings, then name index
  std::vector<std::vector<GaussCode>> unresolved_cells;  // component minima per multi-component cell
  bool complete = true;
};

namespace detail {

// |V(-1)| of a knot-type knotoid, read from its arrow polynomial at A = e^(i pi/4).
inline long determinant(const GaussCode& c) {
  const auto p = arrow_polynomial(c.sphere());
  std::complex<double> z{0, 0};
  for (const auto& [mono, coef] : p.terms()) z += static_cast<double>(coef) * std::polar(1.0, M_PI / 4 * mono.a_exp);
  return std::lround(std::abs(z));
}

}  // namespace detail

/// Merges isotopy classes related by mirror, symmetry and
/// rotation, keeps one order-minimal representative per nontrivial
/// non-composite class and names them per crossing number, knot-type
/// entries first (ordered by determinant), then proper, then non-proper.
inline ClassificationResult involution_quotient(ClassificationState& st) {
  const int n = static_cast<int>(st.nodes.size());
  ClassificationResult res;
  res.surface = st.surface;
  res.max_crossings = st.max_crossings;
  std::vector<char> comp_composite(n, 0);
  for (int v = 0; v < n; ++v)
    if (st.composite[v]) comp_composite[st.uf.find(v)] = 1;
  UnionFind inv = st.involution_classes();
  std::vector<char> bad(n, 0);
  std::vector<int> best_cls(n, 2);
  for (int v = 0; v < n; ++v) {
    const int r = inv.find(v);
    if (comp_composite[st.uf.find(v)]) bad[r] = 1;
    int cls;
    if (st.surface == Surface::Planar) {
      cls = static_cast<int>(classify_endpoints(st.nodes[v]));
    } else {
      cls = sphere_knot_type(build_map(st.nodes[v])) ? 0 : 1;
    }
    best_cls[r] = std::min(best_cls[r], cls);
  }
  const int trivial = inv.find(0);
  for (int v = 0; v < n; ++v) {
    if (inv.find(v) != v || v == trivial || bad[v]) continue;
    PrimeEntry e;
    e.node = v;
    e.code = st.nodes[v];
    e.crossings = e.code.crossings();
    e.cls = static_cast<EndpointClass>(best_cls[v]);
    e.rotatable = st.uf.same(v, st.images[v][2]);
    e.achiral = st.uf.same(v, st.images[v][0]);
    e.strongly_achiral = e.rotatable && e.achiral;
    e.unresolved = !st.cells[st.cell_of[v]].resolved;
    e.primary = st.cells[st.cell_of[v]].primary;
    e.secondary = st.cells[st.cell_of[v]].secondary;
    res.primes.push_back(std::move(e));
  }
  std::map<int, long> det;
  for (const auto& e : res.primes)
    if (e.cls == EndpointClass::KnotType) det[e.node] = detail::determinant(e.code);
  std::stable_sort(res.primes.begin(), res.primes.end(), [&](const PrimeEntry& a, const PrimeEntry& b) {
    if (a.crossings != b.crossings) return a.crossings < b.crossings;
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.cls == EndpointClass::KnotType && det[a.node] != det[b.node]) return det[a.node] < det[b.node];
    return a.node < b.node;
  });
  int idx = 0, last = -1;
  for (auto& e : res.primes) {
    if (e.crossings != last) idx = 0, last = e.crossings;
    e.name = std::to_string(e.crossings) + "_" + std::to_string(++idx);
  }
  for (std::size_t c = 0; c < st.cells.size(); ++c) {
    if (st.cells[c].resolved) continue;
    res.complete = false;
    // smallest cell member of each class up to involutions
    std::map<int, int> first;
    for (int v : st.cells[c].nodes) first.try_emplace(inv.find(v), v);
    std::vector<GaussCode> reps;
    for (auto [r, v] : first) reps.push_back(st.nodes[v]);
    std::sort(reps.begin(), reps.end(), CodeLess{});
    res.unresolved_cells.push_back(std::move(reps));
  }
  return res;
}

/// Whole pipeline from scratch.
inline ClassificationResult classify(int max_crossings, Surface surface, const WalkParams& p,
                                     const std::function<void(const ClassificationState&)>& checkpoint = {}) {
  auto st = partition(max_crossings, surface, resolve_threads(p.threads));
  seed_edges(st, resolve_threads(p.threads));
  merge_trivial_planar(st);
  run_classification(st, p, checkpoint);
  return involution_quotient(st);
}

/// Per crossing number. The three symmetry columns are disjoint: strongly
/// achiral classes are not counted again as rotatable or achiral.
struct CrossingSummary {
  int crossings = 0;
  int primes = 0, rotatable = 0, achiral = 0, strongly_achiral = 0;
};

inline std::vector<CrossingSummary> summarize(const ClassificationResult& r) {
  std::vector<CrossingSummary> out(r.max_crossings);
  for (int k = 0; k < r.max_crossings; ++k) out[k].crossings = k + 1;
  for (const auto& e : r.primes) {
    auto& s = out[e.crossings - 1];
    ++s.primes;
    s.rotatable += e.rotatable && !e.strongly_achiral;
    s.achiral += e.achiral && !e.strongly_achiral;
    s.strongly_achiral += e.strongly_achiral;
  }
  return out;
}

}  // namespace knotoid
