#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ua/closure.hpp"
#include "ua/congruence.hpp"
#include "ua/report.hpp"

namespace ua {

using Matrix = std::array<int, 4>;  // (a1,a2,a3,a4): columns (a1,a2),(a3,a4); rows (a1,a3),(a2,a4)

inline std::string matrix_string(const Matrix& m) { return tuple_string(m); }

struct MatrixSet {
  enum class Role { X, M, DeltaH };
  int n = 0;
  Role role = Role::M;
  std::vector<std::uint64_t> codes;  // sorted; code = ((a1*n+a2)*n+a3)*n+a4

  std::uint64_t encode(const Matrix& m) const {
    return ((static_cast<std::uint64_t>(m[0]) * n + m[1]) * n + m[2]) * n + m[3];
  }
  Matrix decode(std::uint64_t c) const {
    Matrix m;
    for (int i = 3; i >= 0; --i) {
      m[i] = static_cast<int>(c % n);
      c /= n;
    }
    return m;
  }
  std::size_t size() const { return codes.size(); }
  bool contains(const Matrix& m) const { return std::binary_search(codes.begin(), codes.end(), encode(m)); }
  std::vector<Matrix> matrices() const {
    std::vector<Matrix> out;
    out.reserve(codes.size());
    for (auto c : codes) out.push_back(decode(c));
    return out;
  }
};

// X(θ,φ): (c,d,c,d) for (c,d) ∈ θ and (a,a,b,b) for (a,b) ∈ φ.
inline std::vector<Matrix> generator_matrices(const Relation& theta, const Relation& phi) {
  std::vector<Matrix> out;
  for (auto [c, d] : theta.pairs()) out.push_back({c, d, c, d});
  for (auto [a, b] : phi.pairs()) out.push_back({a, a, b, b});
  return out;
}

inline MatrixSet generate_matrices(const Algebra& A, const Relation& theta, const Relation& phi,
                                   std::size_t cap = 1000000) {
  require_input(theta.size() == A.size() && phi.size() == A.size(), "matrix generation: size mismatch");
  SubpowerClosure cl(A, 4, {cap, "matrices", false});
  for (const auto& m : generator_matrices(theta, phi)) cl.add_seed({m[0], m[1], m[2], m[3]});
  cl.run();
  MatrixSet M;
  M.n = A.size();
  M.role = MatrixSet::Role::M;
  for (int i = 0; i < cl.size(); ++i) {
    const int* t = cl.tuples().at(i);
    M.codes.push_back(M.encode({t[0], t[1], t[2], t[3]}));
  }
  std::sort(M.codes.begin(), M.codes.end());
  return M;
}

struct CentralityResult {
  bool holds = true;
  std::optional<Matrix> witness;
};

namespace detail {

// Closes X(θ,φ) and stops at the first matrix violating `good`.
template <class Pred>
CentralityResult scan_matrices(const Algebra& A, const Relation& theta, const Relation& phi, Pred good,
                               std::size_t cap) {
  SubpowerClosure cl(A, 4, {cap, "matrices", false});
  for (const auto& m : generator_matrices(theta, phi)) cl.add_seed({m[0], m[1], m[2], m[3]});
  CentralityResult r;
  cl.run([&](int i) {
    const int* t = cl.tuples().at(i);
    Matrix m{t[0], t[1], t[2], t[3]};
    if (!good(m)) {
      r.holds = false;
      r.witness = m;
      return false;
    }
    return true;
  });
  return r;
}

}  // namespace detail

// C(φ,θ;δ). Condition (1) on M(φ,θ) (rows) and condition (2) on M(θ,φ)
// (columns) are computed separately and must agree.
inline CentralityResult centralizes(const Algebra& A, const Partition& phi, const Partition& theta,
                                    const Partition& delta, std::size_t cap = 1000000) {
  auto rows = detail::scan_matrices(
      A, phi, theta,
      [&](const Matrix& m) { return delta.related(m[0], m[2]) == delta.related(m[1], m[3]); }, cap);
  auto cols = detail::scan_matrices(
      A, theta, phi,
      [&](const Matrix& m) { return delta.related(m[0], m[1]) == delta.related(m[2], m[3]); }, cap);
  require_internal(rows.holds == cols.holds, "centrality: row and column conditions disagree");
  return rows;
}

inline bool is_abelian(const Algebra& A, const Partition& theta) {
  return centralizes(A, theta, theta, Partition::identity(A.size())).holds;
}

// θ/δ abelian, evaluated in A/δ.
inline bool is_abelian_mod(const Algebra& A, const Partition& theta, const Partition& delta) {
  require_pre(delta.leq(theta), "abelian modulo: δ must lie below θ");
  if (delta == theta) return true;
  if (delta.is_identity()) return is_abelian(A, theta);
  auto Q = quotient(A, delta, false);
  return is_abelian(Q.alg, image_partition(Q.projection, theta));
}

inline CentralityResult is_abelian_witness(const Algebra& A, const Partition& theta,
                                           const std::optional<Partition>& delta = std::nullopt) {
  Partition d = delta ? *delta : Partition::identity(A.size());
  require_pre(d.leq(theta), "abelian modulo: δ must lie below θ");
  return centralizes(A, theta, theta, d);
}

// (δ:θ) as the join of the principal congruences that centralize θ mod δ.
inline Partition centralizer(const Algebra& A, const Partition& delta, const Partition& theta,
                             const CongruenceGenerator* gen = nullptr) {
  std::optional<CongruenceGenerator> own;
  if (!gen) gen = &own.emplace(A);
  const int n = A.size();
  Partition result = delta;
  if (!centralizes(A, delta, theta, delta).holds)
    throw InternalError("centralizer: δ does not centralize θ modulo itself");
  std::unordered_map<Partition, bool, PartitionHash> seen;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (result.related(a, b)) continue;
      Partition p = gen->principal(a, b);
      auto [it, fresh] = seen.try_emplace(p, false);
      if (fresh) it->second = centralizes(A, p, theta, delta).holds;
      if (it->second) result = join(result, p);
    }
  require_internal(centralizes(A, result, theta, delta).holds, "centralizer: join does not centralize");
  return result;
}

struct TwoTermResult {
  bool holds = true;
  std::optional<std::pair<Matrix, Matrix>> witness;
};

inline TwoTermResult two_term_condition(const Algebra& A, const Partition& theta) {
  auto M = generate_matrices(A, theta, theta);
  std::map<std::array<int, 3>, int> first;
  TwoTermResult r;
  for (const auto& m : M.matrices()) {
    auto [it, fresh] = first.try_emplace({m[0], m[1], m[2]}, m[3]);
    if (!fresh && it->second != m[3]) {
      r.holds = false;
      r.witness = std::make_pair(Matrix{m[0], m[1], m[2], it->second}, m);
      return r;
    }
  }
  return r;
}

// Relational product of three partitions, as an n*n bitmap.
inline std::vector<char> compose3(const Partition& p, const Partition& q, const Partition& r) {
  const int n = p.size();
  auto pq = compose_relations(p, q);
  std::vector<char> out(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (pq[static_cast<std::size_t>(a) * n + b])
        for (int c = 0; c < n; ++c)
          if (r.related(b, c)) out[static_cast<std::size_t>(a) * n + c] = 1;
  return out;
}

inline std::vector<char> relation_bitmap(const Partition& p) {
  const int n = p.size();
  std::vector<char> out(static_cast<std::size_t>(n) * n, 0);
  for (auto [a, b] : p.pairs()) out[static_cast<std::size_t>(a) * n + b] = 1;
  return out;
}

// Memoizes centrality verdicts and centralizers for one algebra.
class CentralityCache {
 public:
  explicit CentralityCache(const Algebra& A) : A_(A), gen_(A) {}

  const Algebra& algebra() const { return A_; }
  const CongruenceGenerator& generator() const { return gen_; }

  bool centralizes(const Partition& phi, const Partition& theta, const Partition& delta) {
    auto key = std::make_tuple(phi, theta, delta);
    auto it = c_.find(key);
    if (it != c_.end()) return it->second;
    bool v = ua::centralizes(A_, phi, theta, delta).holds;
    c_.emplace(key, v);
    return v;
  }
  bool abelian_mod(const Partition& theta, const Partition& delta) {
    if (delta == theta) return true;
    return centralizes(theta, theta, delta);
  }
  const Partition& centralizer(const Partition& delta, const Partition& theta) {
    auto key = std::make_pair(delta, theta);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    return z_.emplace(key, ua::centralizer(A_, delta, theta, &gen_)).first->second;
  }

 private:
  const Algebra& A_;
  CongruenceGenerator gen_;
  std::map<std::tuple<Partition, Partition, Partition>, bool> c_;
  std::map<std::pair<Partition, Partition>, Partition> z_;
};

struct CentralityLawOptions {
  // The items that rest on a weak difference term are skipped without one.
  bool has_wdt = true;
  // Above this many instances a law is checked on an evenly spaced sample.
  std::size_t max_instances = 400;
};

namespace detail {

template <class T>
std::vector<T> thin(const std::vector<T>& v, std::size_t max) {
  if (v.size() <= max) return v;
  std::vector<T> out;
  for (std::size_t i = 0; i < max; ++i) out.push_back(v[i * v.size() / max]);
  return out;
}

}  // namespace detail

inline Report check_centrality_laws(const Algebra& A, const CongruenceLattice& L,
                                    CentralityLawOptions opt = {}) {
  Report rep;
  CentralityCache cc(A);
  const int m = L.size();

  // Centralizers commute with passing to a quotient.
  {
    std::vector<std::array<int, 3>> triples;
    for (int dp = 0; dp < m; ++dp)
      for (int d = 0; d < m; ++d)
        for (int t = 0; t < m; ++t)
          if (L.leq(dp, d) && L.leq(d, t)) triples.push_back({dp, d, t});
    bool ok = true;
    std::string w;
    for (auto [dp, d, t] : detail::thin(triples, opt.max_instances)) {
      auto Q = quotient(A, L.at(dp), false);
      Partition lhs = centralizer(Q.alg, image_partition(Q.projection, L.at(d)),
                                  image_partition(Q.projection, L.at(t)));
      Partition rhs = image_partition(Q.projection, cc.centralizer(L.at(d), L.at(t)));
      if (lhs != rhs && ok) {
        ok = false;
        w = "δ'=" + L.at(dp).to_string() + " δ=" + L.at(d).to_string() + " θ=" + L.at(t).to_string();
      }
    }
    rep.add("centralizer-quotient", "(δ/δ':θ/δ') = (δ:θ)/δ' for δ' ≤ δ ≤ θ", "centralizer-quotient", ok, w);
  }

  // Preimages of centralizers along quotient maps.
  {
    bool ok = true;
    std::string w;
    std::size_t count = 0;
    for (int dp = 0; dp < m && count < opt.max_instances; ++dp) {
      auto Q = quotient(A, L.at(dp), false);
      auto LQ = congruence_lattice(Q.alg);
      for (int l = 0; l < LQ.size(); ++l)
        for (int u = 0; u < LQ.size(); ++u) {
          if (!LQ.leq(l, u) || count >= opt.max_instances) continue;
          ++count;
          Partition lhs = preimage(Q.projection, centralizer(Q.alg, LQ.at(l), LQ.at(u)));
          Partition rhs = cc.centralizer(preimage(Q.projection, LQ.at(l)), preimage(Q.projection, LQ.at(u)));
          if (lhs != rhs && ok) {
            ok = false;
            w = "kernel=" + L.at(dp).to_string() + " λ=" + LQ.at(l).to_string() + " μ=" + LQ.at(u).to_string();
          }
        }
    }
    rep.add("centralizer-preimage", "f⁻¹((λ:μ)) = (f⁻¹λ:f⁻¹μ) for quotient maps f", "centralizer-preimage", ok, w);
  }

  if (!opt.has_wdt) {
    for (const char* id : {"abelian-join", "abelian-below", "abelian-interval", "perspective-abelian",
                           "perspective-interval-map", "perspective-centralizer"})
      rep.skip(id, "requires a weak difference term", id, "no weak difference term supplied");
    return rep;
  }

  // C(θ,θ;δ) gives θ∨δ = δ∘θ∘δ and (θ∨δ)/δ abelian; abelian θ centralizes itself modulo anything.
  {
    bool ok1 = true, ok2 = true;
    std::string w1, w2;
    for (int t = 0; t < m; ++t) {
      const bool ab = cc.centralizes(L.at(t), L.at(t), L.at(0));
      for (int d = 0; d < m; ++d) {
        const Partition& th = L.at(t);
        const Partition& de = L.at(d);
        bool c = cc.centralizes(th, th, de);
        if (c) {
          Partition j = join(th, de);
          bool good = relation_bitmap(j) == compose3(de, th, de) && cc.centralizes(j, j, de);
          if (!good && ok1) {
            ok1 = false;
            w1 = "θ=" + th.to_string() + " δ=" + de.to_string();
          }
        }
        if (ab && !c && ok2) {
          ok2 = false;
          w2 = "θ=" + th.to_string() + " δ=" + de.to_string();
        }
      }
    }
    rep.add("abelian-join", "C(θ,θ;δ) ⇒ θ∨δ = δ∘θ∘δ and (θ∨δ)/δ abelian", "abelian-join", ok1, w1);
    rep.add("abelian-below", "θ abelian ⇒ C(θ,θ;δ) for every δ", "abelian-below", ok2, w2);
  }

  // Abelian intervals are modular and permuting.
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (!L.leq(a, b) || !cc.abelian_mod(L.at(b), L.at(a))) continue;
        auto r = check_interval_modular_permuting(L, L.at(a), L.at(b), true);
        if (!r.ok() && ok) {
          ok = false;
          w = r.witness;
        }
      }
    rep.add("abelian-interval", "β/α abelian ⇒ I[α,β] modular with permuting members", "abelian-interval", ok, w);
  }

  // Perspective pairs (σ,τ) ↗ (δ,ε).
  {
    std::vector<std::array<int, 4>> quads;
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) {
        if (!L.leq(s, t)) continue;
        for (int d = 0; d < m; ++d) {
          if (L.meet_index(t, d) != s) continue;
          int e = L.join_index(t, d);
          quads.push_back({s, t, d, e});
        }
      }
    bool ok_ab = true, ok_j = true, ok_c = true;
    std::string w_ab, w_j, w_c;
    for (auto [s, t, d, e] : detail::thin(quads, opt.max_instances)) {
      const Partition &S = L.at(s), &T = L.at(t), &D = L.at(d), &E = L.at(e);
      std::string tag = "σ=" + S.to_string() + " τ=" + T.to_string() + " δ=" + D.to_string() + " ε=" + E.to_string();
      bool ab_low = cc.abelian_mod(T, S), ab_high = cc.abelian_mod(E, D);
      if (ab_low != ab_high && ok_ab) {
        ok_ab = false;
        w_ab = tag;
      }
      if (ab_low) {
        std::vector<char> hit(m, 0);
        for (int x : L.interval(s, t)) hit[L.join_index(x, d)] = 1;
        bool onto = true;
        for (int y : L.interval(d, e)) onto &= hit[y] != 0;
        if (!onto && ok_j) {
          ok_j = false;
          w_j = tag;
        }
      }
      bool need = ab_high || L.covers(d, e);
      if (need) {
        bool good = cc.centralizer(D, E) == cc.centralizer(S, T);
        if (ab_high) good = good && relation_bitmap(E) == compose3(D, T, D);
        if (!good && ok_c) {
          ok_c = false;
          w_c = tag;
        }
      }
    }
    rep.add("perspective-abelian", "(σ,τ)↗(δ,ε): τ/σ abelian ⟺ ε/δ abelian", "perspective-abelian", ok_ab, w_ab);
    rep.add("perspective-interval-map", "τ/σ abelian ⇒ x ↦ x∨δ maps I[σ,τ] onto I[δ,ε]",
            "perspective-interval-map", ok_j, w_j);
    rep.add("perspective-centralizer",
            "ε/δ abelian ⇒ ε = δ∘τ∘δ and (δ:ε) = (σ:τ); δ ≺ ε ⇒ (δ:ε) = (σ:τ)", "perspective-centralizer",
            ok_c, w_c);
  }
  return rep;
}

}  // namespace ua
