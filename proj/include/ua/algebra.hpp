#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ua/error.hpp"
#include "ua/partition.hpp"

namespace ua {

inline std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Table is row-major: the first argument is the most significant digit.
struct Operation {
  std::string name;
  int arity = 0;
  std::vector<int> table;

  bool operator==(const Operation& o) const {
    return name == o.name && arity == o.arity && table == o.table;
  }
};

class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(int n) : n_(n) { require_input(n > 0, "algebra size must be positive"); }
  Algebra(int n, std::vector<Operation> ops) : n_(n) {
    require_input(n > 0, "algebra size must be positive");
    for (auto& op : ops) add_operation(std::move(op));
  }

  // Nullary operations become constant unary operations.
  void add_operation(Operation op) {
    require_input(op.arity >= 0, "negative arity for " + op.name);
    if (op.arity == 0) {
      require_input(op.table.size() == 1, "nullary table must have one entry: " + op.name);
      int c = op.table[0];
      op.arity = 1;
      op.table.assign(n_, c);
    }
    require_input(op.arity <= 8, "arity too large for " + op.name);
    require_input(op.table.size() == ipow(n_, op.arity),
                  "table length mismatch for " + op.name + ": expected " +
                      std::to_string(ipow(n_, op.arity)) + ", got " +
                      std::to_string(op.table.size()));
    for (int v : op.table)
      require_input(v >= 0 && v < n_, "element out of range in " + op.name + ": " + std::to_string(v));
    ops_.push_back(std::move(op));
  }

  int size() const { return n_; }
  int num_ops() const { return static_cast<int>(ops_.size()); }
  const std::vector<Operation>& ops() const { return ops_; }
  const Operation& op(int i) const { return ops_[i]; }

  int op_index(const std::string& name) const {
    for (int i = 0; i < num_ops(); ++i)
      if (ops_[i].name == name) return i;
    return -1;
  }

  // Unchecked fast path.
  int apply(int i, const int* args) const {
    const Operation& o = ops_[i];
    std::size_t idx = 0;
    for (int j = 0; j < o.arity; ++j) idx = idx * n_ + args[j];
    return o.table[idx];
  }
  int apply(int i, std::initializer_list<int> args) const { return apply(i, args.begin()); }

  int evaluate(const std::string& name, const std::vector<int>& args) const {
    int i = op_index(name);
    require_input(i >= 0, "unknown operation: " + name);
    require_input(static_cast<int>(args.size()) == ops_[i].arity,
                  "arity mismatch for " + name + ": expected " + std::to_string(ops_[i].arity));
    for (int a : args) require_input(a >= 0 && a < n_, "element out of range: " + std::to_string(a));
    return apply(i, args.data());
  }

  bool same_signature(const Algebra& o) const {
    if (num_ops() != o.num_ops()) return false;
    for (int i = 0; i < num_ops(); ++i)
      if (ops_[i].name != o.ops_[i].name || ops_[i].arity != o.ops_[i].arity) return false;
    return true;
  }

  int max_arity() const {
    int m = 0;
    for (const auto& o : ops_) m = std::max(m, o.arity);
    return m;
  }

  bool is_idempotent() const {
    std::vector<int> args(max_arity());
    for (int i = 0; i < num_ops(); ++i)
      for (int x = 0; x < n_; ++x) {
        std::fill(args.begin(), args.end(), x);
        if (apply(i, args.data()) != x) return false;
      }
    return true;
  }

  bool operator==(const Algebra& o) const { return n_ == o.n_ && ops_ == o.ops_; }

 private:
  int n_ = 0;
  std::vector<Operation> ops_;
};

// Calls f(args) for every tuple in {0..n-1}^k, in lexicographic order.
template <class F>
void for_each_tuple(int n, int k, F&& f) {
  std::vector<int> t(k, 0);
  if (n == 0 && k > 0) return;
  while (true) {
    f(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == n) t[i--] = 0;
    if (i < 0) return;
  }
}

struct ElementMap {
  int target_size = 0;
  std::vector<int> images;

  ElementMap() = default;
  ElementMap(int target, std::vector<int> img) : target_size(target), images(std::move(img)) {}

  static ElementMap identity(int n) {
    ElementMap m;
    m.target_size = n;
    m.images.resize(n);
    for (int i = 0; i < n; ++i) m.images[i] = i;
    return m;
  }
  int source_size() const { return static_cast<int>(images.size()); }
  int operator()(int x) const { return images[x]; }

  // (g.after(f))(x) = g(f(x))
  ElementMap after(const ElementMap& f) const {
    ElementMap r;
    r.target_size = target_size;
    r.images.resize(f.images.size());
    for (std::size_t i = 0; i < f.images.size(); ++i) r.images[i] = images[f.images[i]];
    return r;
  }
  bool is_injective() const {
    std::vector<char> hit(target_size, 0);
    for (int y : images) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<char> hit(target_size, 0);
    for (int y : images) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }
  bool is_bijective() const { return source_size() == target_size && is_injective(); }
  ElementMap inverse() const {
    require_pre(is_bijective(), "inverse of a non-bijective map");
    ElementMap r;
    r.target_size = source_size();
    r.images.resize(target_size);
    for (int x = 0; x < source_size(); ++x) r.images[images[x]] = x;
    return r;
  }
  bool operator==(const ElementMap& o) const {
    return target_size == o.target_size && images == o.images;
  }
  bool operator<(const ElementMap& o) const { return images < o.images; }
};

inline bool is_homomorphism(const Algebra& A, const Algebra& B, const ElementMap& h) {
  if (!A.same_signature(B) || h.source_size() != A.size() || h.target_size != B.size()) return false;
  for (int i = 0; i < A.num_ops(); ++i) {
    bool ok = true;
    std::vector<int> img(A.op(i).arity);
    for_each_tuple(A.size(), A.op(i).arity, [&](const std::vector<int>& t) {
      if (!ok) return;
      for (std::size_t j = 0; j < t.size(); ++j) img[j] = h(t[j]);
      if (h(A.apply(i, t.data())) != B.apply(i, img.data())) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Kernel of a map as a partition of its source.
inline Partition kernel(const ElementMap& f) { return Partition::from_labels(f.images); }

// Preimage of a partition of the target under f.
inline Partition preimage(const ElementMap& f, const Partition& p) {
  std::vector<int> labels(f.source_size());
  for (int x = 0; x < f.source_size(); ++x) labels[x] = p.rep(f(x));
  return Partition::from_labels(labels);
}

// Image of a partition p >= ker f of the source, under a surjective f.
inline Partition image_partition(const ElementMap& f, const Partition& p) {
  UnionFind uf(f.target_size);
  for (int x = 0; x < f.source_size(); ++x) uf.unite(f(x), f(p.rep(x)));
  return Partition::from_union_find(uf);
}

inline bool is_compatible(const Algebra& A, const Partition& p) {
  const int n = A.size();
  for (int i = 0; i < A.num_ops(); ++i) {
    const int k = A.op(i).arity;
    // Checking one coordinate at a time against representatives suffices.
    bool ok = true;
    for_each_tuple(n, k, [&](const std::vector<int>& t) {
      if (!ok) return;
      std::vector<int> u = t;
      for (int j = 0; j < k && ok; ++j) {
        u[j] = p.rep(t[j]);
        if (!p.related(A.apply(i, t.data()), A.apply(i, u.data()))) ok = false;
        u[j] = t[j];
      }
    });
    if (!ok) return false;
  }
  return true;
}

struct ProductAlgebra {
  Algebra alg;
  int left_size = 0;
  int right_size = 0;
  int encode(int a, int b) const { return a * right_size + b; }
  int first(int x) const { return x / right_size; }
  int second(int x) const { return x % right_size; }
};

inline ProductAlgebra product(const Algebra& A, const Algebra& B) {
  require_input(A.same_signature(B), "product: signature mismatch");
  const int na = A.size(), nb = B.size();
  ProductAlgebra P;
  P.left_size = na;
  P.right_size = nb;
  P.alg = Algebra(na * nb);
  for (int i = 0; i < A.num_ops(); ++i) {
    Operation o{A.op(i).name, A.op(i).arity, {}};
    o.table.resize(ipow(na * nb, o.arity));
    std::vector<int> l(o.arity), r(o.arity);
    std::size_t idx = 0;
    for_each_tuple(na * nb, o.arity, [&](const std::vector<int>& t) {
      for (int j = 0; j < o.arity; ++j) {
        l[j] = t[j] / nb;
        r[j] = t[j] % nb;
      }
      o.table[idx++] = A.apply(i, l.data()) * nb + B.apply(i, r.data());
    });
    P.alg.add_operation(std::move(o));
  }
  return P;
}

// k-th direct power with coordinates in row-major order.
inline Algebra power(const Algebra& A, int k) {
  require_input(k >= 1, "power exponent must be positive");
  Algebra P = A;
  for (int i = 1; i < k; ++i) P = product(P, A).alg;
  return P;
}

struct QuotientAlgebra {
  Algebra alg;
  ElementMap projection;  // A -> A/θ
  std::vector<int> representative;  // least element of each block
};

inline QuotientAlgebra quotient(const Algebra& A, const Partition& theta, bool check = true) {
  require_input(theta.size() == A.size(), "quotient: size mismatch");
  if (check) require_pre(is_compatible(A, theta), "quotient: partition is not a congruence");
  QuotientAlgebra Q;
  auto idx = theta.block_index();
  const int m = theta.num_blocks();
  Q.projection = ElementMap(m, idx);
  Q.representative.resize(m);
  for (int x = A.size() - 1; x >= 0; --x) Q.representative[idx[x]] = x;
  Q.alg = Algebra(m);
  for (int i = 0; i < A.num_ops(); ++i) {
    Operation o{A.op(i).name, A.op(i).arity, {}};
    o.table.resize(ipow(m, o.arity));
    std::vector<int> args(o.arity);
    std::size_t pos = 0;
    for_each_tuple(m, o.arity, [&](const std::vector<int>& t) {
      for (int j = 0; j < o.arity; ++j) args[j] = Q.representative[t[j]];
      o.table[pos++] = idx[A.apply(i, args.data())];
    });
    Q.alg.add_operation(std::move(o));
  }
  return Q;
}

// Induced algebra on a subuniverse S (sorted), elements renumbered by position.
inline Algebra subalgebra(const Algebra& A, const std::vector<int>& S) {
  std::vector<int> pos(A.size(), -1);
  for (std::size_t i = 0; i < S.size(); ++i) pos[S[i]] = static_cast<int>(i);
  const int m = static_cast<int>(S.size());
  Algebra B(m);
  for (int i = 0; i < A.num_ops(); ++i) {
    Operation o{A.op(i).name, A.op(i).arity, {}};
    o.table.resize(ipow(m, o.arity));
    std::vector<int> args(o.arity);
    std::size_t p = 0;
    for_each_tuple(m, o.arity, [&](const std::vector<int>& t) {
      for (int j = 0; j < o.arity; ++j) args[j] = S[t[j]];
      int v = pos[A.apply(i, args.data())];
      require_pre(v >= 0, "subalgebra: set is not closed");
      o.table[p++] = v;
    });
    B.add_operation(std::move(o));
  }
  return B;
}

// Least subuniverse containing the seed, as a sorted element list.
inline std::vector<int> generate_subuniverse(const Algebra& A, const std::vector<int>& seed) {
  const int n = A.size();
  std::vector<char> in(n, 0);
  std::vector<int> elems;
  for (int s : seed) {
    require_input(s >= 0 && s < n, "seed element out of range: " + std::to_string(s));
    if (!in[s]) {
      in[s] = 1;
      elems.push_back(s);
    }
  }
  std::sort(elems.begin(), elems.end());
  // Semi-naive: each round only evaluates tuples touching the previous round's additions.
  std::size_t old_end = 0;
  while (old_end < elems.size()) {
    const std::size_t end = elems.size();
    for (int i = 0; i < A.num_ops(); ++i) {
      const int k = A.op(i).arity;
      std::vector<int> args(k);
      for (int first_new = 0; first_new < k; ++first_new) {
        std::vector<std::size_t> lo(k), hi(k), cur(k);
        for (int j = 0; j < k; ++j) {
          lo[j] = j < first_new ? 0 : (j == first_new ? old_end : 0);
          hi[j] = j < first_new ? old_end : end;
        }
        bool empty = false;
        for (int j = 0; j < k; ++j) empty |= lo[j] >= hi[j];
        if (empty) continue;
        cur = lo;
        while (true) {
          for (int j = 0; j < k; ++j) args[j] = elems[cur[j]];
          int v = A.apply(i, args.data());
          if (!in[v]) {
            in[v] = 1;
            elems.push_back(v);
          }
          int j = k - 1;
          while (j >= 0 && ++cur[j] == hi[j]) cur[j] = lo[j], --j;
          if (j < 0) break;
        }
      }
    }
    old_end = end;
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline bool is_subuniverse(const Algebra& A, const std::vector<int>& S) {
  return generate_subuniverse(A, S).size() == std::set<int>(S.begin(), S.end()).size();
}

}  // namespace ua
