#pragma once

// Deliberately naive reference implementations used as test oracles. None of
// this shares code with the library beyond the Algebra/Partition containers.

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/partition.hpp"

namespace oracle {

using ua::Algebra;
using ua::Partition;

// Every tuple of {0..n-1}^k, as vectors.
inline std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  ua::for_each_tuple(n, k, [&](const std::vector<int>& t) { out.push_back(t); });
  return out;
}

inline int apply(const Algebra& A, int op, const std::vector<int>& args) {
  int idx = 0;
  for (int a : args) idx = idx * A.size() + a;
  return A.op(op).table[idx];
}

// Compatibility checked on all pairs of argument tuples.
inline bool compatible(const Algebra& A, const std::vector<int>& labels) {
  for (int i = 0; i < A.num_ops(); ++i) {
    auto tuples = all_tuples(A.size(), A.op(i).arity);
    for (const auto& s : tuples)
      for (const auto& t : tuples) {
        bool rel = true;
        for (std::size_t j = 0; j < s.size(); ++j) rel &= labels[s[j]] == labels[t[j]];
        if (rel && labels[apply(A, i, s)] != labels[apply(A, i, t)]) return false;
      }
  }
  return true;
}

// All set partitions of {0..n-1} via restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rg(n, 0);
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) {
      out.push_back(rg);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      rg[i] = v;
      rec(i + 1, std::max(mx, v));
    }
  };
  if (n > 0) {
    rg[0] = 0;
    rec(1, 0);
  }
  return out;
}

// Congruences by filtering every partition of the universe.
inline std::vector<Partition> congruences(const Algebra& A) {
  std::vector<Partition> out;
  for (const auto& rg : all_partitions(A.size()))
    if (compatible(A, rg)) out.push_back(Partition::from_labels(rg));
  std::sort(out.begin(), out.end());
  return out;
}

inline Partition smallest_containing(const std::vector<Partition>& cons, int a, int b) {
  const Partition* best = nullptr;
  for (const auto& c : cons)
    if (c.related(a, b) && (!best || c.leq(*best))) best = &c;
  return *best;
}

// Matrix closure by plain fixpoint iteration over all argument tuples.
inline std::set<std::array<int, 4>> matrices(const Algebra& A, const Partition& theta, const Partition& phi) {
  std::set<std::array<int, 4>> M;
  const int n = A.size();
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      if (theta.related(c, d)) M.insert({c, d, c, d});
      if (phi.related(c, d)) M.insert({c, c, d, d});
    }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::array<int, 4>> cur(M.begin(), M.end());
    for (int i = 0; i < A.num_ops(); ++i) {
      const int k = A.op(i).arity;
      for (const auto& idx : all_tuples(static_cast<int>(cur.size()), k)) {
        std::array<int, 4> r;
        for (int c = 0; c < 4; ++c) {
          std::vector<int> args;
          for (int j : idx) args.push_back(cur[j][c]);
          r[c] = apply(A, i, args);
        }
        if (M.insert(r).second) grew = true;
      }
    }
  }
  return M;
}

// Term condition C(φ,θ;δ) read directly off the rows of M(φ,θ).
inline bool centralizes(const Algebra& A, const Partition& phi, const Partition& theta, const Partition& delta) {
  for (const auto& m : matrices(A, phi, theta))
    if (delta.related(m[0], m[2]) != delta.related(m[1], m[3])) return false;
  return true;
}

// Largest congruence centralizing θ modulo δ, searched over all congruences.
inline Partition centralizer(const Algebra& A, const std::vector<Partition>& cons, const Partition& delta,
                             const Partition& theta) {
  const Partition* best = nullptr;
  for (const auto& c : cons)
    if (centralizes(A, c, theta, delta) && (!best || best->leq(c))) best = &c;
  return *best;
}

// Unary polynomials by naive fixpoint: apply each operation pointwise to all
// tuples of known functions until nothing new appears.
inline std::set<std::vector<int>> unary_polynomials(const Algebra& A) {
  const int n = A.size();
  std::set<std::vector<int>> F;
  std::vector<int> id(n);
  for (int x = 0; x < n; ++x) id[x] = x;
  F.insert(id);
  for (int c = 0; c < n; ++c) F.insert(std::vector<int>(n, c));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(F.begin(), F.end());
    for (int i = 0; i < A.num_ops(); ++i)
      for (const auto& idx : all_tuples(static_cast<int>(cur.size()), A.op(i).arity)) {
        std::vector<int> f(n);
        for (int x = 0; x < n; ++x) {
          std::vector<int> args;
          for (int j : idx) args.push_back(cur[j][x]);
          f[x] = apply(A, i, args);
        }
        if (F.insert(f).second) grew = true;
      }
  }
  return F;
}

// Subuniverse generated by a seed, by naive fixpoint.
inline std::set<int> subuniverse(const Algebra& A, const std::set<int>& seed) {
  std::set<int> S = seed;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(S.begin(), S.end());
    for (int i = 0; i < A.num_ops(); ++i)
      for (const auto& idx : all_tuples(static_cast<int>(cur.size()), A.op(i).arity)) {
        std::vector<int> args;
        for (int j : idx) args.push_back(cur[j]);
        if (S.insert(apply(A, i, args)).second) grew = true;
      }
  }
  return S;
}

}  // namespace oracle
