#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ua/algebra.hpp"

namespace ua {

struct HomSearchOptions {
  bool injective = false;
  // Forced images, -1 where free.
  std::vector<int> fixed;
  // Optional per-pair filter for candidate images.
  std::function<bool(int, int)> allowed;
  // Optional check on a partial assignment after propagation (-1 = unassigned).
  std::function<bool(const std::vector<int>&)> partial_ok;
};

// Backtracking over images of A's elements in ascending order; every choice is
// propagated through the operations until a fixpoint, so only generators of A
// are ever branched on. Solutions are reported in lexicographic order of the
// image vector; the callback returns false to stop.
class HomomorphismSearch {
 public:
  HomomorphismSearch(const Algebra& A, const Algebra& B, HomSearchOptions opt)
      : A_(A), B_(B), opt_(std::move(opt)) {
    require_input(A.same_signature(B), "homomorphism search: signature mismatch");
  }

  void run(const std::function<bool(const ElementMap&)>& on_solution) {
    const int n = A_.size();
    h_.assign(n, -1);
    used_.assign(B_.size(), 0);
    dom_.clear();
    processed_ = 0;
    stop_ = false;
    if (opt_.injective && A_.size() > B_.size()) return;
    if (!opt_.fixed.empty()) {
      for (int x = 0; x < n; ++x)
        if (opt_.fixed[x] >= 0 && !assign(x, opt_.fixed[x])) return;
      if (!propagate()) return;
    }
    recurse(on_solution);
  }

 private:
  bool assign(int x, int y) {
    if (h_[x] >= 0) return h_[x] == y;
    if (opt_.allowed && !opt_.allowed(x, y)) return false;
    if (opt_.injective && used_[y]) return false;
    h_[x] = y;
    used_[y] = 1;
    dom_.push_back(x);
    return true;
  }

  void undo_to(std::size_t dom_size, std::size_t processed) {
    while (dom_.size() > dom_size) {
      int x = dom_.back();
      dom_.pop_back();
      used_[h_[x]] = 0;
      h_[x] = -1;
    }
    processed_ = processed;
  }

  bool propagate() {
    std::vector<int> a, b;
    while (processed_ < dom_.size()) {
      const std::size_t old_end = processed_, end = dom_.size();
      for (int i = 0; i < A_.num_ops(); ++i) {
        const int k = A_.op(i).arity;
        a.resize(k);
        b.resize(k);
        for (int first_new = 0; first_new < k; ++first_new) {
          std::vector<std::size_t> lo(k), hi(k);
          bool empty = false;
          for (int j = 0; j < k; ++j) {
            lo[j] = j == first_new ? old_end : 0;
            hi[j] = j < first_new ? old_end : end;
            empty |= lo[j] >= hi[j];
          }
          if (empty) continue;
          std::vector<std::size_t> cur(lo);
          while (true) {
            for (int j = 0; j < k; ++j) {
              a[j] = dom_[cur[j]];
              b[j] = h_[a[j]];
            }
            if (!assign(A_.apply(i, a.data()), B_.apply(i, b.data()))) return false;
            int j = k - 1;
            while (j >= 0 && ++cur[j] == hi[j]) cur[j] = lo[j], --j;
            if (j < 0) break;
          }
        }
      }
      processed_ = end;
    }
    return !opt_.partial_ok || opt_.partial_ok(h_);
  }

  void recurse(const std::function<bool(const ElementMap&)>& on_solution) {
    if (stop_) return;
    int x = 0;
    while (x < A_.size() && h_[x] >= 0) ++x;
    if (x == A_.size()) {
      if (!on_solution(ElementMap(B_.size(), h_))) stop_ = true;
      return;
    }
    const std::size_t dom_size = dom_.size(), processed = processed_;
    for (int y = 0; y < B_.size() && !stop_; ++y) {
      if (assign(x, y) && propagate()) recurse(on_solution);
      undo_to(dom_size, processed);
    }
  }

  const Algebra& A_;
  const Algebra& B_;
  HomSearchOptions opt_;
  std::vector<int> h_;
  std::vector<char> used_;
  std::vector<int> dom_;
  std::size_t processed_ = 0;
  bool stop_ = false;
};

// Per-element isomorphism invariants: idempotence pattern, unary in/out
// degrees and the size of the generated subalgebra.
inline std::vector<std::vector<int>> element_invariants(const Algebra& A) {
  const int n = A.size();
  std::vector<std::vector<int>> inv(n);
  std::vector<int> args(A.max_arity());
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < A.num_ops(); ++i) {
      std::fill(args.begin(), args.begin() + A.op(i).arity, x);
      inv[x].push_back(A.apply(i, args.data()) == x);
    }
    inv[x].push_back(static_cast<int>(generate_subuniverse(A, {x}).size()));
  }
  for (int i = 0; i < A.num_ops(); ++i) {
    if (A.op(i).arity != 1) continue;
    std::vector<int> indeg(n, 0);
    for (int x = 0; x < n; ++x) ++indeg[A.op(i).table[x]];
    for (int x = 0; x < n; ++x) inv[x].push_back(indeg[x]);
  }
  return inv;
}

inline std::optional<ElementMap> find_isomorphism(const Algebra& A, const Algebra& B) {
  if (A.size() != B.size() || !A.same_signature(B)) return std::nullopt;
  auto ia = element_invariants(A), ib = element_invariants(B);
  auto sa = ia, sb = ib;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  HomSearchOptions opt;
  opt.injective = true;
  opt.allowed = [&](int x, int y) { return ia[x] == ib[y]; };
  std::optional<ElementMap> found;
  HomomorphismSearch(A, B, opt).run([&](const ElementMap& h) {
    found = h;
    return false;
  });
  if (found) require_internal(is_homomorphism(A, B, *found) && found->is_bijective(),
                              "isomorphism search returned an invalid map");
  return found;
}

// Relabels A along a bijection pi: the result has pi as an isomorphism from A.
inline Algebra relabel(const Algebra& A, const ElementMap& pi) {
  require_pre(pi.is_bijective() && pi.source_size() == A.size(), "relabel needs a permutation");
  const int n = A.size();
  auto inv = pi.inverse();
  Algebra B(n);
  for (int i = 0; i < A.num_ops(); ++i) {
    Operation o{A.op(i).name, A.op(i).arity, {}};
    o.table.resize(A.op(i).table.size());
    std::vector<int> args(o.arity);
    std::size_t p = 0;
    for_each_tuple(n, o.arity, [&](const std::vector<int>& t) {
      for (int j = 0; j < o.arity; ++j) args[j] = inv(t[j]);
      o.table[p++] = pi(A.apply(i, args.data()));
    });
    B.add_operation(std::move(o));
  }
  return B;
}

}  // namespace ua
