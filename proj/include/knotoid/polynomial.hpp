#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotoid {

class CoefficientOverflow : public std::overflow_error {
 public:
  CoefficientOverflow() : std::overflow_error("polynomial coefficient overflow") {}
};

/// Indexed variable families. m/w mark the two zigzag types on the long
/// segment, p/q the two zigzag types on a circle enclosing the segment, and
/// k a circle carrying zigzags that does not enclose the segment.
enum class Family : std::uint8_t { m, w, p, q, k };

inline char family_char(Family f) { return "mwpqk"[static_cast<int>(f)]; }

struct IndexedPower {
  Family family;
  int index;
  int exp;
  friend auto operator<=>(const IndexedPower&, const IndexedPower&) = default;
};

/// Monomial A^a v^b * prod (indexed variables). Zero exponents are not stored.
struct Monomial {
  int a_exp = 0;
  int v_exp = 0;
  std::vector<IndexedPower> indexed;  // sorted by (family, index)

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial A(int e) { return Monomial{e, 0, {}}; }
  static Monomial v(int e = 1) { return Monomial{0, e, {}}; }
  static Monomial var(Family f, int index, int e = 1) {
    Monomial m;
    if (e) m.indexed.push_back({f, index, e});
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r{a_exp + o.a_exp, v_exp + o.v_exp, {}};
    r.indexed.reserve(indexed.size() + o.indexed.size());
    auto i = indexed.begin(), j = o.indexed.begin();
    while (i != indexed.end() || j != o.indexed.end()) {
      if (j == o.indexed.end() || (i != indexed.end() && std::pair(i->family, i->index) < std::pair(j->family, j->index))) {
        r.indexed.push_back(*i++);
      } else if (i == indexed.end() || std::pair(j->family, j->index) < std::pair(i->family, i->index)) {
        r.indexed.push_back(*j++);
      } else {
        const int e = i->exp + j->exp;
        if (e) r.indexed.push_back({i->family, i->index, e});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow();
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow();
  return r;
}
}  // namespace detail

/// Sparse Laurent polynomial with 64-bit checked integer coefficients.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, std::int64_t>;

  MultiPoly() = default;
  explicit MultiPoly(std::int64_t c) {
    if (c) terms_[Monomial{}] = c;
  }
  MultiPoly(const Monomial& m, std::int64_t c) {
    if (c) terms_[m] = c;
  }

  static MultiPoly zero() { return {}; }
  static MultiPoly one() { return MultiPoly(1); }
  /// Loop value -A^2 - A^-2.
  static MultiPoly delta() {
    MultiPoly d;
    d.add_term(Monomial::A(2), -1);
    d.add_term(Monomial::A(-2), -1);
    return d;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, std::int64_t c) {
    if (!c) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = detail::checked_add(it->second, c);
      if (!it->second) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a += b.scaled(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, detail::checked_mul(ca, cb));
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  /// c * A^a_shift * p.
  MultiPoly scaled(std::int64_t c, int a_shift = 0) const {
    MultiPoly r;
    if (!c) return r;
    for (const auto& [m, k] : terms_) {
      Monomial s = m;
      s.a_exp += a_shift;
      r.terms_.emplace(std::move(s), detail::checked_mul(k, c));
    }
    return r;
  }

  MultiPoly pow(int e) const {
    MultiPoly r = one();
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  Terms terms_;
};

inline MultiPoly add(const MultiPoly& p, const MultiPoly& q) { return p + q; }
inline MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }
inline MultiPoly scale(const MultiPoly& p, std::int64_t c, int a_shift) { return p.scaled(c, a_shift); }

inline std::string render_monomial(const Monomial& m) {
  std::string s;
  auto append = [&s](const std::string& f) {
    if (!s.empty()) s.push_back('*');
    s += f;
  };
  if (m.a_exp) append(m.a_exp == 1 ? std::string("A") : "A^" + std::to_string(m.a_exp));
  if (m.v_exp) append(m.v_exp == 1 ? std::string("v") : "v^" + std::to_string(m.v_exp));
  for (const auto& ip : m.indexed) {
    std::string f{family_char(ip.family)};
    f += "_" + std::to_string(ip.index);
    if (ip.exp != 1) f += "^" + std::to_string(ip.exp);
    append(f);
  }
  return s;
}

/// Canonical string, terms ascending by (A power, v power, indexed variables),
/// e.g. "-A^2*v + A^6*v + A^8".
inline std::string render(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    const std::string body = render_monomial(m);
    if (body.empty()) {
      s += std::to_string(mag);
    } else {
      if (mag != 1) s += std::to_string(mag) + "*";
      s += body;
    }
    first = false;
  }
  return s;
}

/// Parses the render() format. Also accepts implicit products separated by
/// spaces ("2 A^8 v^3") and unicode minus.
inline MultiPoly parse_poly(std::string_view text) {
  std::string t;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      t.push_back('-');
      i += 2;
    } else {
      t.push_back(text[i]);
    }
  }
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  };
  auto read_int = [&]() -> int {
    skip();
    bool neg = false;
    if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) neg = t[pos++] == '-';
    if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
      throw std::invalid_argument("polynomial: expected integer");
    int v = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) v = v * 10 + (t[pos++] - '0');
    return neg ? -v : v;
  };
  MultiPoly out;
  skip();
  if (t.substr(pos) == "0") return out;
  int sign = 1;
  if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) sign = t[pos++] == '-' ? -1 : 1;
  while (true) {
    std::int64_t coef = 1;
    Monomial mono;
    bool any = false;
    while (true) {
      skip();
      if (pos >= t.size() || t[pos] == '+' || t[pos] == '-') break;
      if (t[pos] == '*') {
        ++pos;
        continue;
      }
      const char ch = t[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coef *= read_int();
      } else if (ch == 'A' || ch == 'v') {
        ++pos;
        int e = 1;
        skip();
        if (pos < t.size() && t[pos] == '^') {
          ++pos;
          e = read_int();
        }
        mono = mono * (ch == 'A' ? Monomial::A(e) : Monomial::v(e));
      } else if (std::string_view("mwpqk").find(ch) != std::string_view::npos) {
        ++pos;
        if (pos < t.size() && t[pos] == '_') ++pos;
        const int idx = read_int();
        int e = 1;
        skip();
        if (pos < t.size() && t[pos] == '^') {
          ++pos;
          e = read_int();
        }
        const auto fam = static_cast<Family>(std::string_view("mwpqk").find(ch));
        mono = mono * Monomial::var(fam, idx, e);
      } else {
        throw std::invalid_argument(std::string("polynomial: unexpected character '") + ch + "'");
      }
      any = true;
    }
    if (!any) throw std::invalid_argument("polynomial: empty term");
    out.add_term(mono, sign * coef);
    skip();
    if (pos >= t.size()) break;
    sign = t[pos++] == '-' ? -1 : 1;
  }
  return out;
}

}  // namespace knotoid
