#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotoid {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One passage of the arc through a crossing.
struct CrossingVisit {
  int label = 1;
  bool over = true;

  friend bool operator==(const CrossingVisit&, const CrossingVisit&) = default;
};

/// Oriented Gauss code of a knotoid diagram, optionally extended with the
/// arcs bounding the outer region.
///
/// Arc j is the piece of the diagram between passage j-1 and passage j
/// (arc 0 starts at the tail, arc 2n ends at the head). `signs[c-1]` is the
/// sign (+1/-1) of crossing c. A code with `outer` set encodes a diagram in
/// the plane; without it, a diagram in S^2.
struct GaussCode {
  std::vector<CrossingVisit> word;
  std::vector<int> signs;
  std::optional<std::vector<int>> outer;

  int crossings() const { return static_cast<int>(signs.size()); }
  int arc_count() const { return 2 * crossings() + 1; }
  bool extended() const { return outer.has_value(); }

  /// The same diagram with the outer-region data dropped.
  GaussCode sphere() const { return GaussCode{word, signs, std::nullopt}; }

  friend bool operator==(const GaussCode&, const GaussCode&) = default;
};

enum class Order { Less, Equal, Greater };

namespace detail {

inline int visit_key(const CrossingVisit& v) { return 2 * v.label - (v.over ? 0 : 1); }

inline bool is_sign_token(std::string_view tok) {
  if (tok.empty()) return false;
  return std::all_of(tok.begin(), tok.end(), [](char c) { return c == '+' || c == '-'; });
}

inline std::string normalize_minus(std::string_view text) {
  // U+2212 MINUS SIGN (E2 88 92) shows up in copied tables.
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

inline int parse_int(const std::string& tok) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed token '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError("malformed token '" + tok + "'");
  return value;
}

}  // namespace detail

/// Checks the structural constraints of a code (not realizability).
inline void validate(const GaussCode& code) {
  const int n = code.crossings();
  if (code.word.size() != 2 * code.signs.size())
    throw ParseError("sign-count mismatch: " + std::to_string(code.word.size()) +
                     " passages but " + std::to_string(code.signs.size()) + " signs");
  std::vector<int> over(n + 1, 0), under(n + 1, 0);
  for (const auto& v : code.word) {
    if (v.label < 1 || v.label > n)
      throw ParseError("crossing label " + std::to_string(v.label) + " out of range 1.." +
                       std::to_string(n));
    ++(v.over ? over : under)[v.label];
  }
  for (int c = 1; c <= n; ++c) {
    if (over[c] + under[c] != 2)
      throw ParseError("crossing " + std::to_string(c) + " appears " +
                       std::to_string(over[c] + under[c]) + " times");
    if (over[c] != 1)
      throw ParseError("crossing " + std::to_string(c) + " visited " +
                       (over[c] == 2 ? "Over" : "Under") + " twice");
  }
  for (int s : code.signs)
    if (s != 1 && s != -1) throw ParseError("crossing sign must be +1 or -1");
  if (code.outer) {
    const auto& out = *code.outer;
    if (out.empty()) throw ParseError("outer region list is empty");
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] < 0 || out[i] > 2 * n)
        throw ParseError("arc label " + std::to_string(out[i]) + " out of range 0.." +
                         std::to_string(2 * n));
      if (i > 0 && out[i] <= out[i - 1])
        throw ParseError("outer arc labels must be strictly increasing");
    }
  }
}

/// Parses the textual code format: word tokens, then a run of '+'/'-' sign
/// characters, then optional outer arc labels. Sections are normally
/// separated by two spaces but any whitespace is accepted, and sign
/// characters may be space separated.
inline GaussCode parse_code(std::string_view text) {
  std::istringstream in(detail::normalize_minus(text));
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);

  GaussCode code;
  std::size_t i = 0;
  while (i < tokens.size() && !detail::is_sign_token(tokens[i])) {
    const int v = detail::parse_int(tokens[i]);
    if (v == 0) break;
    code.word.push_back(CrossingVisit{v < 0 ? -v : v, v > 0 || tokens[i][0] == '+'});
    ++i;
  }
  bool saw_signs = false;
  while (i < tokens.size() && detail::is_sign_token(tokens[i])) {
    saw_signs = true;
    for (char c : tokens[i]) code.signs.push_back(c == '+' ? 1 : -1);
    ++i;
  }
  if (!code.word.empty() && !saw_signs) throw ParseError("sign-count mismatch: missing signs");
  if (i < tokens.size()) {
    std::vector<int> outer;
    for (; i < tokens.size(); ++i) {
      if (detail::is_sign_token(tokens[i])) throw ParseError("unexpected sign token '" + tokens[i] + "'");
      outer.push_back(detail::parse_int(tokens[i]));
    }
    std::sort(outer.begin(), outer.end());
    if (std::adjacent_find(outer.begin(), outer.end()) != outer.end())
      throw ParseError("duplicate outer arc label");
    code.outer = std::move(outer);
  }
  validate(code);
  return code;
}

inline std::string format_word(const GaussCode& code) {
  std::string s;
  for (std::size_t i = 0; i < code.word.size(); ++i) {
    if (i) s.push_back(' ');
    if (!code.word[i].over) s.push_back('-');
    s += std::to_string(code.word[i].label);
  }
  return s;
}

/// Canonical text form; parse_code(format_code(c)) == c.
inline std::string format_code(const GaussCode& code) {
  std::string s = format_word(code);
  if (!code.signs.empty() || code.outer) {
    s += "  ";
    for (int sg : code.signs) s.push_back(sg > 0 ? '+' : '-');
  }
  if (code.outer) {
    s += "  ";
    for (std::size_t i = 0; i < code.outer->size(); ++i) {
      if (i) s.push_back(' ');
      s += std::to_string((*code.outer)[i]);
    }
  }
  return s;
}

/// Renumbers crossings by first encounter along the word.
inline GaussCode canonicalize_labels(const GaussCode& code) {
  const int n = code.crossings();
  std::vector<int> relabel(n + 1, 0);
  int next = 1;
  GaussCode out;
  out.word.reserve(code.word.size());
  out.signs.assign(n, 1);
  for (const auto& v : code.word) {
    if (relabel[v.label] == 0) {
      relabel[v.label] = next;
      out.signs[next - 1] = code.signs[v.label - 1];
      ++next;
    }
    out.word.push_back(CrossingVisit{relabel[v.label], v.over});
  }
  out.outer = code.outer;
  return out;
}

inline bool is_canonical(const GaussCode& code) {
  int next = 1;
  for (const auto& v : code.word) {
    if (v.label > next) return false;
    if (v.label == next) ++next;
  }
  return true;
}

/// Total order on codes: word length, passages (-1 < 1 < -2 < 2 < ...),
/// signs (- < +), outer-list length, outer labels. Sphere codes sort before
/// extended codes with the same word and signs.
inline Order compare(const GaussCode& a, const GaussCode& b) {
  auto cmp = [](auto x, auto y) { return x < y ? Order::Less : (y < x ? Order::Greater : Order::Equal); };
  if (a.word.size() != b.word.size()) return cmp(a.word.size(), b.word.size());
  for (std::size_t i = 0; i < a.word.size(); ++i) {
    const int ka = detail::visit_key(a.word[i]), kb = detail::visit_key(b.word[i]);
    if (ka != kb) return cmp(ka, kb);
  }
  for (std::size_t i = 0; i < a.signs.size(); ++i)
    if (a.signs[i] != b.signs[i]) return cmp(a.signs[i], b.signs[i]);
  if (a.outer.has_value() != b.outer.has_value()) return a.outer ? Order::Greater : Order::Less;
  if (!a.outer) return Order::Equal;
  const auto& oa = *a.outer;
  const auto& ob = *b.outer;
  if (oa.size() != ob.size()) return cmp(oa.size(), ob.size());
  for (std::size_t i = 0; i < oa.size(); ++i)
    if (oa[i] != ob[i]) return cmp(oa[i], ob[i]);
  return Order::Equal;
}

struct CodeLess {
  bool operator()(const GaussCode& a, const GaussCode& b) const { return compare(a, b) == Order::Less; }
};

/// Reverses the orientation. Crossing signs are unchanged by a global
/// orientation flip; they only follow the relabeling.
inline GaussCode reverse(const GaussCode& code) {
  GaussCode r;
  r.word.assign(code.word.rbegin(), code.word.rend());
  r.signs = code.signs;
  if (code.outer) {
    const int top = 2 * code.crossings();
    std::vector<int> out;
    out.reserve(code.outer->size());
    for (int a : *code.outer) out.push_back(top - a);
    std::sort(out.begin(), out.end());
    r.outer = std::move(out);
  }
  return canonicalize_labels(r);
}

/// Over/under exchanged; every crossing sign flips.
inline GaussCode mirror(const GaussCode& code) {
  GaussCode m = code;
  for (auto& v : m.word) v.over = !v.over;
  for (auto& s : m.signs) s = -s;
  return m;
}

/// Reflection of the plane: every crossing sign flips.
inline GaussCode symmetry(const GaussCode& code) {
  GaussCode m = code;
  for (auto& s : m.signs) s = -s;
  return m;
}

/// mirror . symmetry: over/under exchanged, signs kept.
inline GaussCode rotate(const GaussCode& code) {
  GaussCode m = code;
  for (auto& v : m.word) v.over = !v.over;
  return m;
}

inline int writhe(const GaussCode& code) {
  int w = 0;
  for (int s : code.signs) w += s;
  return w;
}

struct GaussCodeHash {
  std::size_t operator()(const GaussCode& c) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& v : c.word) mix(static_cast<std::uint64_t>(detail::visit_key(v)));
    mix(0xffu);
    for (int s : c.signs) mix(s > 0 ? 1u : 2u);
    if (c.outer) {
      mix(0xfeu);
      for (int a : *c.outer) mix(static_cast<std::uint64_t>(a) + 7u);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace knotoid
