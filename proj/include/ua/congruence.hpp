#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/polynomials.hpp"

namespace ua {

// Congruence generation for one algebra, with its basic translations cached.
class CongruenceGenerator {
 public:
  explicit CongruenceGenerator(const Algebra& A) : n_(A.size()), trans_(basic_translations(A)) {}

  int size() const { return n_; }
  const std::vector<std::vector<int>>& translations() const { return trans_; }

  // Least congruence containing base and the given pairs. Only pairs that
  // actually merge two blocks are pushed through the translations.
  Partition generate(const Partition& base, const std::vector<std::pair<int, int>>& pairs) const {
    UnionFind uf(n_);
    std::vector<std::pair<int, int>> work;
    for (int x = 0; x < n_; ++x)
      if (base.rep(x) != x && uf.unite(x, base.rep(x))) work.emplace_back(x, base.rep(x));
    for (auto [a, b] : pairs) {
      require_input(a >= 0 && a < n_ && b >= 0 && b < n_, "pair out of range");
      if (uf.unite(a, b)) work.emplace_back(a, b);
    }
    run(uf, work);
    return Partition::from_union_find(uf);
  }
  Partition generate(const std::vector<std::pair<int, int>>& pairs) const {
    return generate(Partition::identity(n_), pairs);
  }
  Partition principal(int a, int b) const { return generate({{a, b}}); }

 private:
  void run(UnionFind& uf, std::vector<std::pair<int, int>>& work) const {
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      for (const auto& t : trans_) {
        int x = t[u], y = t[v];
        if (x != y && uf.unite(x, y)) work.emplace_back(x, y);
      }
    }
  }

  int n_;
  std::vector<std::vector<int>> trans_;
};

inline Partition principal_congruence(const Algebra& A, int a, int b) {
  require_input(a >= 0 && a < A.size() && b >= 0 && b < A.size(), "element out of range");
  return CongruenceGenerator(A).principal(a, b);
}

inline Partition congruence_generated(const Algebra& A, const std::vector<std::pair<int, int>>& pairs) {
  return CongruenceGenerator(A).generate(pairs);
}

struct CoverPair {
  Partition lower;
  Partition upper;
};

class CongruenceLattice {
 public:
  CongruenceLattice() = default;

  // Join closure of the principal congruences below `top` (the whole lattice
  // by default). Meets of congruences are block intersections.
  static CongruenceLattice compute(const Algebra& A, std::size_t cap = 100000,
                                   std::optional<Partition> top = std::nullopt) {
    CongruenceGenerator gen(A);
    return compute(gen, cap, std::move(top));
  }
  static CongruenceLattice compute(const CongruenceGenerator& gen, std::size_t cap = 100000,
                                   std::optional<Partition> top = std::nullopt) {
    const int n = gen.size();
    CongruenceLattice L;
    L.n_ = n;
    L.add(Partition::identity(n), cap);
    std::vector<int> principals;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (top && !top->related(a, b)) continue;
        auto p = gen.principal(a, b);
        auto [idx, fresh] = L.add(p, cap);
        if (fresh) principals.push_back(idx);
      }
    for (std::size_t i = 1; i < L.elems_.size(); ++i) {
      for (int p : principals) {
        Partition j = join(L.elems_[i], L.elems_[p]);
        L.add(j, cap);
      }
    }
    if (!top) L.add(Partition::full(n), cap);
    L.finish();
    return L;
  }

  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<Partition>& elements() const { return elems_; }
  const Partition& at(int i) const { return elems_[i]; }
  int universe_size() const { return n_; }

  int index_of(const Partition& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const Partition& p) const { return index_of(p) >= 0; }
  bool leq(int i, int j) const { return i == j || strictly_below(i, j); }
  int join_index(int i, int j) const { return index_of(join(elems_[i], elems_[j])); }
  int meet_index(int i, int j) const { return index_of(meet(elems_[i], elems_[j])); }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  bool covers(int lo, int hi) const {
    return std::find(covers_.begin(), covers_.end(), std::make_pair(lo, hi)) != covers_.end();
  }
  std::vector<int> upper_covers(int i) const {
    std::vector<int> out;
    for (auto [a, b] : covers_)
      if (a == i) out.push_back(b);
    return out;
  }
  std::vector<int> lower_covers(int i) const {
    std::vector<int> out;
    for (auto [a, b] : covers_)
      if (b == i) out.push_back(a);
    return out;
  }
  int bottom() const { return 0; }
  int top() const {
    for (int i = 0; i < size(); ++i) {
      bool all = true;
      for (int j = 0; j < size() && all; ++j) all = leq(j, i);
      if (all) return i;
    }
    return -1;
  }
  // Elements x with lo <= x <= hi.
  std::vector<int> interval(int lo, int hi) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (leq(lo, i) && leq(i, hi)) out.push_back(i);
    return out;
  }
  // Height of the interval; -1 if it has maximal chains of different lengths.
  int interval_height(int lo, int hi) const {
    std::vector<int> lens;
    chain_lengths(lo, hi, 0, lens);
    if (lens.empty()) return -1;
    for (int l : lens)
      if (l != lens[0]) return -1;
    return lens[0];
  }

 private:
  std::pair<int, bool> add(const Partition& p, std::size_t cap) {
    auto [it, fresh] = index_.try_emplace(p, static_cast<int>(elems_.size()));
    if (fresh) {
      elems_.push_back(p);
      if (elems_.size() > cap) throw CapExceeded("congruence lattice", cap);
    }
    return {it->second, fresh};
  }

  void finish() {
    // Sort by number of blocks descending so the bottom comes first.
    std::vector<int> order(elems_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      int na = elems_[a].num_blocks(), nb = elems_[b].num_blocks();
      if (na != nb) return na > nb;
      return elems_[a] < elems_[b];
    });
    std::vector<Partition> sorted;
    for (int i : order) sorted.push_back(elems_[i]);
    elems_ = std::move(sorted);
    index_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = static_cast<int>(i);
    const int m = size();
    words_ = (m + 63) / 64;
    up_.assign(static_cast<std::size_t>(m) * words_, 0);
    down_.assign(static_cast<std::size_t>(m) * words_, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && elems_[i].leq(elems_[j])) {
          up_[static_cast<std::size_t>(i) * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
          down_[static_cast<std::size_t>(j) * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
        }
    // j covers i iff nothing lies strictly between them.
    covers_.clear();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (!strictly_below(i, j)) continue;
        bool between = false;
        for (int w = 0; w < words_ && !between; ++w)
          between = (up_[static_cast<std::size_t>(i) * words_ + w] &
                     down_[static_cast<std::size_t>(j) * words_ + w]) != 0;
        if (!between) covers_.emplace_back(i, j);
      }
  }

  bool strictly_below(int i, int j) const {
    return (up_[static_cast<std::size_t>(i) * words_ + j / 64] >> (j % 64)) & 1;
  }

  void chain_lengths(int cur, int hi, int depth, std::vector<int>& out) const {
    if (cur == hi) {
      out.push_back(depth);
      return;
    }
    for (int c : upper_covers(cur))
      if (leq(c, hi)) chain_lengths(c, hi, depth + 1, out);
  }

  int n_ = 0;
  std::vector<Partition> elems_;
  std::unordered_map<Partition, int, PartitionHash> index_;
  int words_ = 0;
  std::vector<std::uint64_t> up_, down_;
  std::vector<std::pair<int, int>> covers_;
};

inline CongruenceLattice congruence_lattice(const Algebra& A, std::size_t cap = 100000) {
  return CongruenceLattice::compute(A, cap);
}

struct StructureReport {
  std::vector<CoverPair> covers;
  std::vector<Partition> meet_irreducibles;
  // Each completely meet-irreducible congruence with its unique upper cover.
  std::vector<CoverPair> completely_meet_irreducibles;
  std::optional<Partition> monolith;
  bool is_si = false;
};

inline StructureReport structure_report(const CongruenceLattice& L) {
  StructureReport r;
  for (auto [a, b] : L.covers()) r.covers.push_back({L.at(a), L.at(b)});
  const int top = L.top();
  // In a finite lattice meet-irreducible and completely meet-irreducible agree.
  for (int i = 0; i < L.size(); ++i) {
    if (i == top) continue;
    auto up = L.upper_covers(i);
    if (up.size() == 1) {
      r.meet_irreducibles.push_back(L.at(i));
      r.completely_meet_irreducibles.push_back({L.at(i), L.at(up[0])});
    }
  }
  auto atoms = L.upper_covers(L.bottom());
  if (atoms.size() == 1) {
    r.monolith = L.at(atoms[0]);
    r.is_si = true;
  }
  return r;
}

inline std::optional<Partition> monolith(const Algebra& A) { return structure_report(congruence_lattice(A)).monolith; }

// (alpha, beta) is perspective up to (gamma, delta): beta ∧ gamma = alpha and beta ∨ gamma = delta.
inline bool check_perspectivity(const Partition& alpha, const Partition& beta, const Partition& gamma,
                                const Partition& delta) {
  return meet(beta, gamma) == alpha && join(beta, gamma) == delta;
}

inline bool check_perspectivity(const CongruenceLattice& L, const Partition& alpha, const Partition& beta,
                                const Partition& gamma, const Partition& delta) {
  for (const auto* p : {&alpha, &beta, &gamma, &delta})
    require_input(L.contains(*p), "perspectivity: argument not in the lattice");
  return check_perspectivity(alpha, beta, gamma, delta);
}

// Lower covers checked without the whole lattice: every congruence generated
// by lower plus one pair of upper \ lower must be upper itself.
inline bool is_cover(const CongruenceGenerator& gen, const Partition& lower, const Partition& upper) {
  if (lower == upper || !lower.leq(upper)) return false;
  for (auto [a, b] : upper.pairs()) {
    if (a >= b || lower.related(a, b)) continue;
    if (gen.generate(lower, {{a, b}}) != upper) return false;
  }
  return true;
}

struct IntervalReport {
  bool modular = true;
  bool permuting = true;
  bool precondition_verified = true;
  std::string witness;
  bool ok() const { return modular && permuting; }
};

// Checks permutability and the modular law on I[alpha, beta]. The caller
// states whether beta/alpha was verified abelian.
inline IntervalReport check_interval_modular_permuting(const CongruenceLattice& L, const Partition& alpha,
                                                       const Partition& beta, bool abelian_verified) {
  IntervalReport r;
  r.precondition_verified = abelian_verified;
  int lo = L.index_of(alpha), hi = L.index_of(beta);
  require_input(lo >= 0 && hi >= 0, "interval endpoints not in the lattice");
  auto I = L.interval(lo, hi);
  for (int x : I)
    for (int y : I) {
      if (r.permuting && !permute(L.at(x), L.at(y))) {
        r.permuting = false;
        r.witness = "non-permuting: " + L.at(x).to_string() + " ; " + L.at(y).to_string();
      }
      if (!L.leq(x, y)) continue;
      // x <= y: x ∨ (z ∧ y) = (x ∨ z) ∧ y for all z.
      for (int z : I) {
        if (!r.modular) break;
        Partition lhs = join(L.at(x), meet(L.at(z), L.at(y)));
        Partition rhs = meet(join(L.at(x), L.at(z)), L.at(y));
        if (lhs != rhs) {
          r.modular = false;
          r.witness = "non-modular: " + L.at(x).to_string() + " ; " + L.at(y).to_string() + " ; " +
                      L.at(z).to_string();
        }
      }
    }
  return r;
}

}  // namespace ua
