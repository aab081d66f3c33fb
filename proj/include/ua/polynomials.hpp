#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ua/closure.hpp"

namespace ua {

// Unary polynomial functions restricted to a domain D (sorted element list):
// the subuniverse of A^|D| generated by the inclusion map and the constants.
struct UnaryPolynomialSet {
  std::vector<int> domain;
  std::vector<std::vector<int>> functions;  // images of domain[0], domain[1], ...

  std::size_t size() const { return functions.size(); }
  bool contains(const std::vector<int>& f) const {
    return std::binary_search(functions.begin(), functions.end(), f);
  }
};

inline UnaryPolynomialSet restricted_polynomials(const Algebra& A, std::vector<int> domain,
                                                 std::size_t cap = 1000000) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  require_input(!domain.empty(), "polynomial domain is empty");
  const int len = static_cast<int>(domain.size());
  SubpowerClosure cl(A, len, {cap, "unary polynomials", false});
  cl.add_seed(domain);
  for (int c = 0; c < A.size(); ++c) cl.add_seed(std::vector<int>(len, c));
  cl.run();
  UnaryPolynomialSet P;
  P.domain = domain;
  for (int i = 0; i < cl.size(); ++i) P.functions.push_back(cl.tuples().get(i));
  std::sort(P.functions.begin(), P.functions.end());
  return P;
}

inline UnaryPolynomialSet unary_polynomials(const Algebra& A, std::size_t cap = 1000000) {
  std::vector<int> all(A.size());
  for (int i = 0; i < A.size(); ++i) all[i] = i;
  return restricted_polynomials(A, all, cap);
}

// Basic translations: one operation, one free slot, all parameter tuples.
// Duplicates, identities and constants are dropped; none of them can
// separate or join anything new during congruence generation.
inline std::vector<std::vector<int>> basic_translations(const Algebra& A) {
  const int n = A.size();
  TupleStore seen(n);
  std::vector<std::vector<int>> out;
  std::vector<int> args, img(n);
  for (int i = 0; i < A.num_ops(); ++i) {
    const int k = A.op(i).arity;
    args.resize(k);
    for (int slot = 0; slot < k; ++slot) {
      for_each_tuple(n, k - 1, [&](const std::vector<int>& params) {
        for (int j = 0, p = 0; j < k; ++j)
          if (j != slot) args[j] = params[p++];
        bool ident = true, constant = true;
        for (int x = 0; x < n; ++x) {
          args[slot] = x;
          img[x] = A.apply(i, args.data());
          ident &= img[x] == x;
          constant &= img[x] == img[0];
        }
        if (ident || constant) return;
        if (seen.insert(img).second) out.push_back(img);
      });
    }
  }
  return out;
}

}  // namespace ua
