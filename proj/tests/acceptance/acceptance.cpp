// One line per acceptance criterion. Long runs are opt-in through
// KNOTOID_EXTENDED=1; without it those parts are reported as skipped.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "../unit/oracles.hpp"
#include "knotoid/knotoid.hpp"

using namespace knotoid;

namespace {

bool extended() {
  const char* e = std::getenv("KNOTOID_EXTENDED");
  return e != nullptr && std::string(e) == "1";
}

int threads() { return resolve_threads(0); }

// Collects the failed checks of one criterion.
struct Verdict {
  std::vector<std::string> failures;
  std::vector<std::string> skipped;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class T>
  void equal(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      failures.push_back(os.str());
    }
  }
};

void report(int id, const std::string& title, const Verdict& v, double seconds) {
  const char* tag = !v.failures.empty() ? "FAIL" : "PASS";
  std::cout << "criterion " << id << " [" << tag << "] " << title << " (" << static_cast<int>(seconds) << " s)";
  if (!v.skipped.empty()) {
    std::cout << "; skipped without KNOTOID_EXTENDED=1:";
    for (const auto& s : v.skipped) std::cout << ' ' << s << ';';
  }
  std::cout << '\n';
  for (const auto& f : v.failures) std::cout << "    " << f << '\n';
  std::cout.flush();
}

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + x;
  return out + "}";
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Classifications are shared between criteria and computed on first use.
struct Run {
  ClassificationState st;
  ClassificationResult res;
};

WalkParams walk_params(Surface s, int n) {
  WalkParams p;
  p.steps = 2000;
  p.rounds = s == Surface::Planar ? 3 : 2;
  if (n >= 5 && s == Surface::Planar) p.rounds = 6;
  p.threads = threads();
  return p;
}

Run& classification(Surface s, int n) {
  static std::map<std::pair<int, int>, Run> runs;
  auto key = std::make_pair(static_cast<int>(s), n);
  auto it = runs.find(key);
  if (it != runs.end()) return it->second;
  const auto p = walk_params(s, n);
  Run r;
  r.st = partition(n, s, p.threads);
  seed_edges(r.st, p.threads);
  merge_trivial_planar(r.st);
  run_classification(r.st, p);
  r.res = involution_quotient(r.st);
  return runs.emplace(key, std::move(r)).first->second;
}

const PrimeEntry* named(const ClassificationResult& r, const std::string& name) {
  for (const auto& e : r.primes)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<int> prime_counts(const ClassificationResult& r, int from, int to) {
  std::vector<int> out;
  const auto s = summarize(r);
  for (int k = from; k <= to; ++k) out.push_back(s[k - 1].primes);
  return out;
}

std::ostream& operator<<(std::ostream& os, const std::vector<int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os;
}

template <class Pred>
std::set<std::string> names_where(const ClassificationResult& r, int max_n, Pred pred) {
  std::set<std::string> out;
  for (const auto& e : r.primes)
    if (e.crossings <= max_n && pred(e)) out.insert(e.name);
  return out;
}

// ---------------------------------------------------------------- criteria

Verdict enumeration_counts() {
  Verdict v;
  auto count = [](int n, Surface s) {
    long k = 0;
    realizable_diagrams(n, s, [&](const GaussCode&, const DiagramMap&) { return ++k, true; });
    return k;
  };
  const long sphere[] = {4, 40, 528, 7968};
  const long planar[] = {8, 120, 2112, 39840};
  for (int n = 1; n <= 4; ++n) {
    v.equal(count(n, Surface::Sphere), sphere[n - 1], "sphere n=" + std::to_string(n));
    v.equal(count(n, Surface::Planar), planar[n - 1], "planar n=" + std::to_string(n));
  }
  if (extended()) {
    v.equal(count(5, Surface::Sphere), 130304L, "sphere n=5");
    v.equal(count(5, Surface::Planar), 781824L, "planar n=5");
    v.equal(count(6, Surface::Sphere), 2224922L, "sphere n=6");
  } else {
    v.skipped.push_back("n=5 sphere and planar, n=6 sphere");
  }
  return v;
}

const char* const kLoop2_5 = "-A^2*v + A^6*v + A^8";
const char* const kLoop5_146 =
    "-A^2*w_1 - A^2*v - A^2*m_1 - 2*A^4 - A^4*q_1 - A^4*p_1 - A^6*w_1 - A^6*v - A^6*m_1 - A^8";
const char* const kLoop3_7 = "-A^6*v - A^8 - A^8*p_1 - 2*A^10*m_1";
const char* const kLoop4_37 = "A^4 + A^4*m_2 + A^6*p_2 + 2*A^6*m_1 + A^8*p_1 + A^8*m_2";
const char* const kDbcA = "-A^16*v + A^12*v^3 - 2*A^8*v^3 + 2*A^8*v + A^4*v^3";
const char* const kDbcB = "-A^-12*v^3 + A^-12*v^2 + A^-8*v^3 - A^-8*v";

// First 5-crossing planar diagram whose loop arrow is the reference 5_146 value.
std::optional<GaussCode> find_by_loop_arrow(int n, const MultiPoly& want) {
  std::optional<GaussCode> hit;
  realizable_diagrams(n, Surface::Planar, [&](const GaussCode& c, const DiagramMap& m) {
    if (loop_arrow_polynomial(c, m) != want) return true;
    hit = c;
    return false;
  });
  return hit;
}

Verdict golden_invariants() {
  Verdict v;
  const auto& r = classification(Surface::Planar, 4).res;
  std::map<std::string, GaussCode> code;
  for (const char* name : {"2_5", "3_7", "4_37"}) {
    if (const auto* e = named(r, name)) {
      code[name] = e->code;
    } else {
      v.failures.push_back(std::string("no prime named ") + name);
    }
  }
  if (auto c = find_by_loop_arrow(5, parse_poly(kLoop5_146))) {
    code["5_146"] = *c;
  } else {
    v.failures.push_back("no 5-crossing diagram has the 5_146 loop arrow");
  }
  const std::map<std::string, std::pair<const char*, const char*>> want{
      {"2_5", {kLoop2_5, kDbcA}}, {"5_146", {kLoop5_146, kDbcA}}, {"3_7", {kLoop3_7, kDbcB}}, {"4_37", {kLoop4_37, kDbcB}}};
  std::map<std::string, std::pair<MultiPoly, MultiPoly>> got;
  for (const auto& [name, w] : want) {
    if (!code.count(name)) continue;
    const auto& c = code[name];
    got[name] = {loop_arrow_polynomial(c), dbc_invariant(c)};
    v.equal(render(got[name].first), render(parse_poly(w.first)), name + " loop arrow");
    v.equal(render(got[name].second), render(parse_poly(w.second)), name + " dbc Jones");
  }
  for (auto [a, b] : {std::pair<const char*, const char*>{"2_5", "5_146"}, {"3_7", "4_37"}}) {
    if (!got.count(a) || !got.count(b)) continue;
    v.check(got[a].first != got[b].first, std::string("loop arrow does not separate ") + a + " / " + b);
    v.check(got[a].second == got[b].second, std::string("dbc separates ") + a + " / " + b);
  }
  return v;
}

Verdict invariant_strength() {
  Verdict v;
  if (!extended()) {
    v.skipped.push_back("planar n<=5 classification");
    return v;
  }
  const auto& r = classification(Surface::Planar, 5).res;
  std::map<std::string, int> by_loop, by_dbc;
  for (const auto& e : r.primes) ++by_loop[e.primary], ++by_dbc[e.secondary];
  int loop_unique = 0, dbc_unique = 0, both_unique = 0;
  std::set<std::string> loop_only;
  for (const auto& e : r.primes) {
    const bool lu = by_loop[e.primary] == 1, du = by_dbc[e.secondary] == 1;
    loop_unique += lu;
    dbc_unique += du;
    both_unique += lu && du;
    if (!du) {
      int same = 0;
      for (const auto& f : r.primes) same += f.secondary == e.secondary && f.primary == e.primary;
      if (same == 1) loop_only.insert(e.name);
    }
  }
  const int total = static_cast<int>(r.primes.size());
  v.equal(loop_unique, 916, "classes distinguished by loop arrow");
  v.equal(total - loop_unique, 221, "diagrams not distinguished by loop arrow");
  v.equal(dbc_unique, 1121, "classes distinguished by dbc");
  v.equal(total - dbc_unique, 16, "diagrams not distinguished by dbc");
  v.equal(both_unique, 912, "classes distinguished by both");
  v.equal(join(loop_only), join({"2_5", "3_7", "4_37", "5_146"}), "separated by loop arrow only");
  return v;
}

// Planar n=5 pairs left apart by the walks: same sphere code, two outer regions.
const char* const kUnresolvedPairs[][2] = {
    {"-1 -2 3 4 -3 2 -5 1 5 -4  ---++  0 7 8", "-1 -2 3 4 -3 2 -5 1 5 -4  ---++  3 4 10"},
    {"-1 2 -3 1 -4 5 -2 3 4 -5  ---++  0 3 4 8", "-1 2 -3 1 -4 5 -2 3 4 -5  ---++  2 5 6 8 10"},
    {"-1 2 -3 1 4 -5 -2 3 -4 5  -----  0 3 4 8", "-1 2 -3 1 4 -5 -2 3 -4 5  -----  2 5 6 8 10"},
    {"-1 2 -3 4 -5 1 -2 3 5 -4  ---++  3 4 8 10", "-1 2 -3 4 -5 1 -2 3 5 -4  ---++  0 2 5 6 8"},
    {"-1 2 -3 4 -5 1 5 -2 -4 3  -+--+  0 5 6", "-1 2 -3 4 -5 1 5 -2 -4 3  -+--+  2 3 8 10"},
    {"-1 2 -3 4 5 -4 -2 1 3 -5  ----+  4 5 10", "-1 2 -3 4 5 -4 -2 1 3 -5  ----+  0 2 7 8"},
};

// Both codes (or a common involution image of them) in one unresolved cell,
// in different components.
bool unresolved_pair_present(ClassificationState& st, const GaussCode& a, const GaussCode& b) {
  for (auto g : {+[](const GaussCode& c) { return c; }, +[](const GaussCode& c) { return mirror(c); },
                 +[](const GaussCode& c) { return symmetry(c); }, +[](const GaussCode& c) { return rotate(c); }}) {
    auto ia = st.index.find(g(a)), ib = st.index.find(g(b));
    if (ia == st.index.end() || ib == st.index.end()) continue;
    const int x = ia->second, y = ib->second;
    if (st.cell_of[x] == st.cell_of[y] && !st.cells[st.cell_of[x]].resolved && !st.uf.same(x, y)) return true;
  }
  return false;
}

Verdict classification_counts() {
  Verdict v;
  const auto& planar = classification(Surface::Planar, 4).res;
  v.equal(prime_counts(planar, 1, 3), std::vector<int>{1, 6, 26}, "planar primes n=1..3");
  v.equal(prime_counts(planar, 4, 4), std::vector<int>{154}, "planar primes n=4");
  v.check(planar.complete, "planar n<=4 left unresolved cells");
  const auto& sphere = classification(Surface::Sphere, 5).res;
  v.equal(prime_counts(sphere, 1, 5), std::vector<int>{0, 1, 2, 8, 24}, "sphere primes n=1..5");
  v.check(sphere.complete, "sphere n<=5 left unresolved cells");
  if (extended()) {
    auto& run5 = classification(Surface::Planar, 5);
    v.equal(prime_counts(run5.res, 5, 5), std::vector<int>{950}, "planar primes n=5");
    v.equal(run5.res.unresolved_cells.size(), std::size_t{6}, "planar n=5 unresolved cells");
    for (const auto& pr : kUnresolvedPairs)
      v.check(unresolved_pair_present(run5.st, parse_code(pr[0]), parse_code(pr[1])),
              std::string("unresolved pair missing: ") + pr[0]);
    v.equal(prime_counts(classification(Surface::Sphere, 6).res, 6, 6), std::vector<int>{121}, "sphere primes n=6");
  } else {
    v.skipped.push_back("planar n=5 with its unresolved pairs, sphere n=6");
  }
  return v;
}

Verdict symmetry_flags() {
  Verdict v;
  const auto& planar = classification(Surface::Planar, 4).res;
  v.equal(join(names_where(planar, 4, [](const PrimeEntry& e) { return e.strongly_achiral; })), join({"4_1"}),
          "planar strongly achiral");
  v.equal(join(names_where(planar, 4, [](const PrimeEntry& e) { return e.achiral; })),
          join({"2_2", "4_1", "4_22", "4_84", "4_103", "4_148"}), "planar achiral");
  const int sphere_n = extended() ? 6 : 5;
  const auto& sphere = classification(Surface::Sphere, sphere_n).res;
  // the rotatable list leaves out strongly achiral classes
  v.equal(join(names_where(sphere, 5, [](const PrimeEntry& e) { return e.rotatable && !e.strongly_achiral; })),
          join({"3_1", "5_1", "5_2", "5_15", "5_17", "5_18"}), "sphere rotatable n<=5");
  const auto achiral_only = names_where(sphere, sphere_n, [](const PrimeEntry& e) { return e.achiral && !e.rotatable; });
  const auto strongly = names_where(sphere, sphere_n, [](const PrimeEntry& e) { return e.strongly_achiral; });
  if (extended()) {
    v.equal(join(achiral_only), join({"6_54", "6_86", "6_120"}), "sphere achiral");
    v.equal(join(strongly), join({"4_1", "6_3"}), "sphere strongly achiral");
    const auto& planar5 = classification(Surface::Planar, 5).res;
    v.equal(join(names_where(planar5, 5, [](const PrimeEntry& e) { return e.achiral; })),
            join({"2_2", "4_1", "4_22", "4_84", "4_103", "4_148"}), "planar achiral n<=5");
  } else {
    v.equal(join(achiral_only), join({}), "sphere achiral n<=5");
    v.equal(join(strongly), join({"4_1"}), "sphere strongly achiral n<=5");
    v.skipped.push_back("sphere n=6 achiral and strongly achiral sets");
  }
  return v;
}

std::vector<GaussCode> planar_upto(int n) {
  std::vector<GaussCode> out;
  for (int k = 0; k <= n; ++k)
    for (auto& c : realizable_codes(k, Surface::Planar)) out.push_back(std::move(c));
  return out;
}

std::vector<int> random_dual_path(const DiagramMap& m, int from, int to, std::mt19937_64& rng) {
  std::vector<int> arcs;
  for (int f = from; f != to;) {
    const auto& ds = m.faces[f].darts;
    const int d = ds[rng() % ds.size()];
    arcs.push_back(dart_arc(d));
    f = m.face_of[reverse_dart(d)];
  }
  return arcs;
}

// Node partition equality: same(x, y) agrees for every pair.
bool same_partition(UnionFind& a, UnionFind& b, int n) {
  std::map<int, int> ab, ba;
  for (int v = 0; v < n; ++v) {
    const int ra = a.find(v), rb = b.find(v);
    if (ab.emplace(ra, rb).first->second != rb) return false;
    if (ba.emplace(rb, ra).first->second != ra) return false;
  }
  return true;
}

Verdict property_suites() {
  Verdict v;
  // Move invariance along seeded walks.
  {
    const auto pool = planar_upto(4);
    std::mt19937_64 rng(2024);
    long broken = 0, steps = 0;
    for (int walk = 0; walk < 1000; ++walk) {
      GaussCode c = pool[rng() % pool.size()];
      const auto arrow = arrow_polynomial(c.sphere());
      const auto loop = loop_arrow_polynomial(c);
      const auto dbc = dbc_invariant(c);
      for (int s = 0; s < 12; ++s) {
        const auto m = build_map(c);
        const auto sites = enumerate_moves(c, m, kAllKinds, 4);
        if (sites.empty()) break;
        const auto outs = apply_move(c, m, sites[rng() % sites.size()]);
        c = outs[rng() % outs.size()];
        ++steps;
        if (arrow_polynomial(c.sphere()) != arrow || loop_arrow_polynomial(c) != loop || dbc_invariant(c) != dbc) {
          if (++broken <= 3) v.failures.push_back("invariant changed at " + format_code(c));
        }
      }
    }
    v.check(steps > 5000, "walks too short");
  }
  // Region rule against retraced faces.
  {
    long covered = 0;
    for (const auto& c : planar_upto(3)) {
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
        if (got != want) {
          v.failures.push_back("region rule disagrees at " + format_code(c) + " " + to_string(s.kind));
          break;
        }
      }
    }
    v.check(covered > 100000, "region rule covered too few moves");
  }
  // Involution algebra.
  for (int n = 0; n <= 3; ++n)
    for (Surface s : {Surface::Sphere, Surface::Planar})
      for (const auto& c : realizable_codes(n, s)) {
        const bool ok = mirror(mirror(c)) == c && symmetry(symmetry(c)) == c && rotate(rotate(c)) == c &&
                        reverse(reverse(c)) == c && rotate(c) == mirror(symmetry(c)) &&
                        try_build_map(mirror(c)) && try_build_map(symmetry(c)) && try_build_map(reverse(c)) &&
                        (s == Surface::Sphere || (is_realizable_planar(mirror(c)) && is_realizable_planar(reverse(c))));
        if (!ok) {
          v.failures.push_back("involution algebra fails at " + format_code(c));
          break;
        }
      }
  // Randomized classification against move-graph BFS.
  {
    auto& run = classification(Surface::Planar, 3);
    const int cap = extended() ? 6 : 5;
    auto bfs = oracle::bfs_components(run.st.nodes, cap);
    v.check(same_partition(run.st.uf, bfs, static_cast<int>(run.st.nodes.size())),
            "classification components differ from BFS components (cap " + std::to_string(cap) + ")");
  }
  // Lift: one component, independent of the cut paths.
  {
    std::mt19937_64 rng(11);
    for (const auto& c : planar_upto(3)) {
      const auto m = build_map(c);
      const int outer = m.find_face(*c.outer);
      const auto base = lift(c, m, default_cut_lines(m, outer));
      const auto want = torus_jones(base);
      bool ok = component_count(base) == 1;
      for (int t = 0; t < 2 && ok; ++t) {
        CutLines cuts{random_dual_path(m, m.tail_face(), outer, rng), random_dual_path(m, m.head_face(), outer, rng)};
        ok = torus_jones(lift(c, m, cuts)) == want;
      }
      if (!ok) {
        v.failures.push_back("lift fails at " + format_code(c));
        break;
      }
    }
  }
  return v;
}

}  // namespace

TEST(Acceptance, AllCriteria) {
  struct Item {
    int id;
    const char* title;
    Verdict (*fn)();
  };
  const Item items[] = {
      {1, "realizable diagram counts", enumeration_counts},
      {2, "golden loop arrow and dbc Jones values", golden_invariants},
      {3, "loop arrow vs dbc strength at n<=5", invariant_strength},
      {4, "prime counts", classification_counts},
      {5, "symmetry flags", symmetry_flags},
      {6, "property suites", property_suites},
  };
  int failed = 0;
  for (const auto& it : items) {
    Verdict v;
    const double s = timed([&] { v = it.fn(); });
    if (it.id == 3 && !extended()) {
      std::cout << "criterion 3 [SKIP] " << it.title << "; needs KNOTOID_EXTENDED=1 (planar n<=5 classification)\n";
      continue;
    }
    report(it.id, it.title, v, s);
    failed += !v.failures.empty();
  }
  EXPECT_EQ(failed, 0);
}
