#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <string>
#include <utility>
#include <vector>

#include "ua/error.hpp"

namespace ua {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // True iff the call merged two distinct blocks.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Equivalence relation on 0..n-1, stored in normal form: rep_[x] is the least
// element of the block of x. Equal relations have equal representations.
class Partition {
 public:
  Partition() = default;

  static Partition identity(int n) {
    Partition p;
    p.rep_.resize(n);
    std::iota(p.rep_.begin(), p.rep_.end(), 0);
    return p;
  }
  static Partition full(int n) {
    Partition p;
    p.rep_.assign(n, 0);
    return p;
  }
  // Any labelling: x ~ y iff labels[x] == labels[y].
  template <class Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    Partition p;
    const int n = static_cast<int>(labels.size());
    p.rep_.resize(n);
    std::unordered_map<long long, int> first;  // label -> least element
    for (int x = 0; x < n; ++x) p.rep_[x] = first.try_emplace(labels[x], x).first->second;
    return p;
  }
  // Elements not mentioned form singleton blocks.
  static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    UnionFind uf(n);
    std::vector<char> seen(n, 0);
    for (const auto& b : blocks) {
      for (int x : b) {
        require_input(x >= 0 && x < n, "block element out of range: " + std::to_string(x));
        require_input(!seen[x], "element listed twice in blocks: " + std::to_string(x));
        seen[x] = 1;
      }
      for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0], b[i]);
    }
    return from_union_find(uf);
  }
  static Partition from_union_find(UnionFind& uf) {
    const int n = uf.size();
    std::vector<int> least(n, -1);
    Partition p;
    p.rep_.resize(n);
    for (int x = 0; x < n; ++x) {
      int r = uf.find(x);
      if (least[r] < 0) least[r] = x;
      p.rep_[x] = least[r];
    }
    return p;
  }
  static Partition from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    UnionFind uf(n);
    for (auto [a, b] : pairs) uf.unite(a, b);
    return from_union_find(uf);
  }

  int size() const { return static_cast<int>(rep_.size()); }
  int rep(int x) const { return rep_[x]; }
  const std::vector<int>& reps() const { return rep_; }
  bool related(int a, int b) const { return rep_[a] == rep_[b]; }

  int num_blocks() const {
    int c = 0;
    for (int x = 0; x < size(); ++x) c += rep_[x] == x;
    return c;
  }
  // Block number of each element, blocks numbered by least element.
  std::vector<int> block_index() const {
    std::vector<int> idx(size(), -1);
    int next = 0;
    for (int x = 0; x < size(); ++x) {
      if (rep_[x] == x) idx[x] = next++;
      idx[x] = idx[rep_[x]];
    }
    return idx;
  }
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(num_blocks());
    auto idx = block_index();
    for (int x = 0; x < size(); ++x) out[idx[x]].push_back(x);
    return out;
  }
  std::vector<int> block_of(int x) const {
    std::vector<int> out;
    for (int y = 0; y < size(); ++y)
      if (rep_[y] == rep_[x]) out.push_back(y);
    return out;
  }
  // All related ordered pairs, including the diagonal, in lexicographic order.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (rep_[a] == rep_[b]) out.emplace_back(a, b);
    return out;
  }
  std::size_t num_pairs() const {
    std::vector<std::size_t> cnt(size(), 0);
    for (int x = 0; x < size(); ++x) ++cnt[rep_[x]];
    std::size_t s = 0;
    for (auto c : cnt) s += c * c;
    return s;
  }

  bool is_identity() const {
    for (int x = 0; x < size(); ++x)
      if (rep_[x] != x) return false;
    return true;
  }
  bool is_full() const {
    for (int x = 0; x < size(); ++x)
      if (rep_[x] != 0) return false;
    return true;
  }
  // Refinement order: every block of *this lies inside a block of q.
  bool leq(const Partition& q) const {
    for (int x = 0; x < size(); ++x)
      if (q.rep_[x] != q.rep_[rep_[x]]) return false;
    return true;
  }

  bool operator==(const Partition& o) const { return rep_ == o.rep_; }
  bool operator!=(const Partition& o) const { return rep_ != o.rep_; }
  bool operator<(const Partition& o) const { return rep_ < o.rep_; }

  std::string to_string() const {
    std::string s;
    for (const auto& b : blocks()) {
      if (!s.empty()) s += "|";
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(b[i]);
      }
    }
    return s;
  }

 private:
  std::vector<int> rep_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int r : p.reps()) h = (h ^ static_cast<std::size_t>(r)) * 1099511628211ull;
    return h;
  }
};

inline Partition join(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) throw InputError("join: size mismatch");
  UnionFind uf(p.size());
  for (int x = 0; x < p.size(); ++x) {
    uf.unite(x, p.rep(x));
    uf.unite(x, q.rep(x));
  }
  return Partition::from_union_find(uf);
}

inline Partition meet(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) throw InputError("meet: size mismatch");
  const int n = p.size();
  std::vector<long long> labels(n);
  for (int x = 0; x < n; ++x) labels[x] = static_cast<long long>(p.rep(x)) * n + q.rep(x);
  return Partition::from_labels(labels);
}

// Relational product p∘q = {(a,c) : a p b q c for some b}, as an n*n bitmap.
inline std::vector<char> compose_relations(const Partition& p, const Partition& q) {
  const int n = p.size();
  std::vector<char> out(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.related(a, b))
        for (int c = 0; c < n; ++c)
          if (q.related(b, c)) out[static_cast<std::size_t>(a) * n + c] = 1;
  return out;
}

inline bool permute(const Partition& p, const Partition& q) {
  return compose_relations(p, q) == compose_relations(q, p);
}

// Reflexive binary relation used where tolerances are allowed (matrix generation).
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}
  Relation(const Partition& p) : Relation(p.size()) {  // NOLINT: implicit by design
    for (auto [a, b] : p.pairs()) set(a, b);
  }
  int size() const { return n_; }
  bool has(int a, int b) const { return bits_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  void set(int a, int b) { bits_[static_cast<std::size_t>(a) * n_ + b] = 1; }
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (has(a, b)) out.emplace_back(a, b);
    return out;
  }
  bool is_reflexive() const {
    for (int a = 0; a < n_; ++a)
      if (!has(a, a)) return false;
    return true;
  }
  bool is_symmetric() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (has(a, b) != has(b, a)) return false;
    return true;
  }
  bool is_transitive() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (has(a, b))
          for (int c = 0; c < n_; ++c)
            if (has(b, c) && !has(a, c)) return false;
    return true;
  }
  bool operator==(const Relation& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  int n_ = 0;
  std::vector<char> bits_;
};

}  // namespace ua
