#pragma once

#include <numeric>
#include <vector>

namespace knotoid {

/// Disjoint sets whose root is always the smallest member, so the root of a
/// class of diagrams indexed in code order is its order-minimal diagram.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int size() const { return static_cast<int>(parent_.size()); }

  int find(int x) {
    int r = x;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[x] != r) {
      const int next = parent_[x];
      parent_[x] = r;
      x = next;
    }
    return r;
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  /// Returns true when two classes were joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  const std::vector<int>& parents() const { return parent_; }
  static UnionFind from_parents(std::vector<int> p) {
    UnionFind u;
    u.parent_ = std::move(p);
    return u;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace knotoid
