#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ua/simdiv.hpp"

namespace ua {

// GF(p^k) with elements e = Σ c_i p^i read as polynomials c_0 + c_1 x + ...
struct FiniteField {
  int p = 2, k = 1, q = 2;
  std::vector<int> modulus;  // monic, low to high, length k+1; empty when k = 1
  std::vector<int> add_t, mul_t, neg_t, inv_t;

  int add(int a, int b) const { return add_t[static_cast<std::size_t>(a) * q + b]; }
  int mul(int a, int b) const { return mul_t[static_cast<std::size_t>(a) * q + b]; }
  int neg(int a) const { return neg_t[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const { return inv_t[a]; }
  RingTables ring() const { return RingTables{q, 0, 1, add_t, neg_t, mul_t}; }
};

inline std::vector<int> default_modulus(int p, int k) {
  if (k == 1) return {};
  if (p == 2 && k == 2) return {1, 1, 1};     // x²+x+1
  if (p == 2 && k == 3) return {1, 1, 0, 1};  // x³+x+1
  if (p == 3 && k == 2) return {1, 0, 1};     // x²+1
  throw InputError("no default modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
}

inline FiniteField build_field(int p, int k = 1, std::vector<int> modulus = {}) {
  require_input(detail::is_prime(p), "field characteristic must be prime: " + std::to_string(p));
  require_input(k >= 1 && ipow(p, k) <= 256, "field degree out of range");
  if (k > 1 && modulus.empty()) modulus = default_modulus(p, k);
  FiniteField F;
  F.p = p;
  F.k = k;
  F.q = static_cast<int>(ipow(p, k));
  F.modulus = modulus;
  if (k > 1) {
    require_input(static_cast<int>(modulus.size()) == k + 1 && modulus[k] == 1, "modulus must be monic of degree k");
    for (int c : modulus) require_input(c >= 0 && c < p, "modulus coefficient out of range");
    if (k <= 3)
      for (int r = 0; r < p; ++r) {
        int v = 0;
        for (int i = k; i >= 0; --i) v = (v * r + modulus[i]) % p;
        require_input(v != 0, "modulus is reducible: root " + std::to_string(r));
      }
  } else {
    require_input(modulus.empty() || modulus.size() == 2, "degree-1 field takes no modulus");
  }
  const int q = F.q;
  auto digits = [&](int e) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i, e /= p) c[i] = e % p;
    return c;
  };
  auto number = [&](const std::vector<int>& c) {
    int e = 0;
    for (int i = k - 1; i >= 0; --i) e = e * p + c[i];
    return e;
  };
  F.add_t.resize(static_cast<std::size_t>(q) * q);
  F.mul_t.resize(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto x = digits(a), y = digits(b);
      std::vector<int> s(k), prod(2 * k, 0);
      for (int i = 0; i < k; ++i) s[i] = (x[i] + y[i]) % p;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
      for (int i = 2 * k - 1; i >= k; --i) {
        int c = prod[i];
        if (!c) continue;
        for (int j = 0; j <= k; ++j) prod[i - k + j] = ((prod[i - k + j] - c * modulus[j]) % p + p) % p;
      }
      if (k == 1) prod[0] = x[0] * y[0] % p;
      F.add_t[static_cast<std::size_t>(a) * q + b] = number(s);
      F.mul_t[static_cast<std::size_t>(a) * q + b] = number(std::vector<int>(prod.begin(), prod.begin() + k));
    }
  F.neg_t.assign(q, -1);
  F.inv_t.assign(q, -1);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (F.add(a, b) == 0) F.neg_t[a] = b;
      if (F.mul(a, b) == 1) F.inv_t[a] = b;
    }
  for (int a = 1; a < q; ++a) require_input(F.inv_t[a] >= 0, "modulus is reducible: no inverse of " + std::to_string(a));
  auto fail = ring_axiom_failure(F.ring());
  require_internal(fail.empty(), "field axioms: " + fail);
  return F;
}

// Data of a semilattice-over-Maltsev operation on A = ⋃ V_s.
struct SomData {
  int num_sorts = 0;
  std::vector<int> meet;     // num_sorts², s ∧ t
  std::vector<int> sort_of;  // ν: A -> S
  // f_(s,t) for t ≤ s, as a map on A (only V_s entries are read)
  std::map<std::pair<int, int>, std::vector<int>> maps;
  std::vector<std::function<int(int, int, int)>> maltsev;  // m_s on V_s
};

struct SemilatticeOverMaltsev {
  SomData data;
  Ternary d;
  int s_meet(int s, int t) const { return data.meet[static_cast<std::size_t>(s) * data.num_sorts + t]; }
};

// The identities on d used to show it is a weak difference term, checked on all x, y.
inline std::string som_identity_failure(const Ternary& d) {
  const int n = d.n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto w = [&](const char* id) { return std::string(id) + " at " + tuple_string(std::vector<int>{x, y}); };
      const int xyy = d(x, y, y), xxy = d(x, x, y);
      if (d(xyy, x, x) != xyy || d(xyy, y, y) != xyy) return w("d(d(x,y,y),x,x) = d(x,y,y) = d(d(x,y,y),y,y)");
      if (d(x, x, xxy) != xxy || d(y, y, xxy) != xxy) return w("d(x,x,d(x,x,y)) = d(x,x,y) = d(y,y,d(x,x,y))");
      // f_i, g_i as ternary terms
      auto f = [&](int i, int a, int b, int c) {
        switch (i) {
          case 0: return a;
          case 1: return d(a, b, b);
          case 2: return c;
          default: return d(b, b, c);
        }
      };
      auto g = [&](int i, int a, int b, int c) {
        switch (i) {
          case 0: return d(a, c, c);
          case 1: return d(d(a, b, b), c, c);
          case 2: return d(a, a, c);
          default: return d(a, a, d(b, b, c));
        }
      };
      for (int i = 0; i < 4; ++i)
        if (f(i, x, y, x) != g(i, x, y, x)) return w("f_i(x,y,x) = g_i(x,y,x)");
      const bool chain = x == f(0, x, y, y) && f(2, x, x, y) == y && f(1, x, x, y) == f(0, x, x, y) &&
                         f(2, x, y, y) == f(3, x, y, y) && f(1, x, y, y) == g(1, x, y, y) &&
                         g(3, x, x, y) == f(3, x, x, y) && g(0, x, x, y) == g(1, x, x, y) &&
                         g(3, x, y, y) == g(2, x, y, y) && g(0, x, y, y) == xyy && xxy == g(2, x, x, y);
      if (!chain) return w("f/g chain identities");
    }
  return {};
}

inline SemilatticeOverMaltsev build_som(SomData data) {
  const int S = data.num_sorts;
  const int n = static_cast<int>(data.sort_of.size());
  require_input(S > 0 && n > 0, "semilattice-over-Maltsev: empty data");
  require_input(static_cast<int>(data.meet.size()) == S * S, "semilattice table has the wrong size");
  require_input(static_cast<int>(data.maltsev.size()) == S, "one Maltsev operation per sort is required");
  auto mt = [&](int s, int t) { return data.meet[static_cast<std::size_t>(s) * S + t]; };
  for (int s = 0; s < S; ++s) {
    require_input(mt(s, s) == s, "semilattice is not idempotent");
    for (int t = 0; t < S; ++t) {
      require_input(mt(s, t) >= 0 && mt(s, t) < S, "semilattice entry out of range");
      require_input(mt(s, t) == mt(t, s), "semilattice is not commutative");
      for (int u = 0; u < S; ++u) require_input(mt(mt(s, t), u) == mt(s, mt(t, u)), "semilattice is not associative");
    }
  }
  std::vector<std::vector<int>> V(S);
  for (int a = 0; a < n; ++a) {
    require_input(data.sort_of[a] >= 0 && data.sort_of[a] < S, "sort out of range");
    V[data.sort_of[a]].push_back(a);
  }
  for (int s = 0; s < S; ++s) require_input(!V[s].empty(), "sort " + std::to_string(s) + " is empty");
  for (int s = 0; s < S; ++s)
    for (int t = 0; t < S; ++t) {
      if (mt(s, t) != t) continue;
      auto it = data.maps.find({s, t});
      require_input(it != data.maps.end(), "missing connecting map");
      require_input(static_cast<int>(it->second.size()) == n, "connecting map has the wrong length");
      for (int a : V[s]) {
        int b = it->second[a];
        require_input(b >= 0 && b < n && data.sort_of[b] == t, "connecting map leaves its target sort");
        if (s == t) require_input(b == a, "f_(s,s) is not the identity");
      }
    }
  for (int s = 0; s < S; ++s)
    for (int x : V[s])
      for (int y : V[s]) {
        require_input(data.maltsev[s](x, y, y) == x && data.maltsev[s](y, y, x) == x, "m_s is not Maltsev");
        for (int z : V[s]) require_input(data.sort_of[data.maltsev[s](x, y, z)] == s, "m_s leaves its sort");
      }
  std::vector<int> t(ipow(n, 3));
  std::size_t pos = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int sa = data.sort_of[a], sb = data.sort_of[b], sc = data.sort_of[c];
        int u = mt(mt(sa, sb), sc);
        t[pos++] = data.maltsev[u](data.maps.at({sa, u})[a], data.maps.at({sb, u})[b], data.maps.at({sc, u})[c]);
      }
  SemilatticeOverMaltsev out{std::move(data), Ternary(n, std::move(t))};
  require_internal(out.d.idempotent(), "semilattice-over-Maltsev operation is not idempotent");
  auto fail = som_identity_failure(out.d);
  require_internal(fail.empty(), "semilattice-over-Maltsev identity fails: " + fail);
  return out;
}

using FMatrix = std::vector<std::vector<int>>;  // rows of field elements

struct GenConfig {
  int p = 2, k = 1;
  std::vector<int> modulus;  // empty = default
  std::vector<int> dims;     // dim V⁰_ℓ for ℓ = 0..m
  // extra[ℓ][i-1]: basis rows of W^ℓ_i ⊆ V⁰_ℓ for i ≥ 1 (W^ℓ_0 is the whole space)
  std::vector<std::vector<FMatrix>> extra;
  // g_ℓ : V⁰_0 -> V⁰_ℓ and h_ℓ : V⁰_ℓ -> V⁰_0 for ℓ ≥ 1 (index ℓ); empty = default
  std::vector<FMatrix> g, h;
  std::vector<int> one;  // 1 ∈ V⁰_0; empty = first basis vector
  std::size_t op_cap = 256;

  int m() const { return static_cast<int>(dims.size()) - 1; }
};

struct GenSort {
  int l = 0, i = 0;
  int dim = 0;    // dim V^ℓ_i = dim W^ℓ_i
  int first = 0;  // index of the zero vector in A
  int size = 1;
  FMatrix basis;  // rows spanning W^ℓ_i in V⁰_ℓ; σ^ℓ_i(c) = Σ c_r basis[r]
};

struct Generated {
  GenConfig config;
  FiniteField field;
  Algebra alg;
  Partition mu, alpha;
  std::vector<GenSort> sorts;
  std::vector<int> sort_of;
  SemilatticeOverMaltsev som;

  int sort_index(int l, int i) const {
    for (std::size_t s = 0; s < sorts.size(); ++s)
      if (sorts[s].l == l && sorts[s].i == i) return static_cast<int>(s);
    return -1;
  }
  // Coordinates of an element in its own space.
  std::vector<int> coords(int a) const {
    const auto& s = sorts[sort_of[a]];
    std::vector<int> c(s.dim);
    int v = a - s.first;
    for (int r = s.dim - 1; r >= 0; --r, v /= field.q) c[r] = v % field.q;
    return c;
  }
  int element(int sort, const std::vector<int>& c) const {
    int v = 0;
    for (int x : c) v = v * field.q + x;
    return sorts[sort].first + v;
  }
  // σ_ℓ(a) as an element of V⁰_ℓ.
  int sigma(int a) const {
    const auto& s = sorts[sort_of[a]];
    const int d0 = config.dims[s.l];
    auto c = coords(a);
    std::vector<int> out(d0, 0);
    for (int r = 0; r < s.dim; ++r)
      for (int j = 0; j < d0; ++j) out[j] = field.add(out[j], field.mul(c[r], s.basis[r][j]));
    return element(sort_index(s.l, 0), out);
  }
  int zero_of_class(int l) const { return sorts[sort_index(l, 0)].first; }
};

namespace detail {

inline int field_rank(const FiniteField& F, FMatrix M) {
  int rank = 0;
  const int cols = M.empty() ? 0 : static_cast<int>(M[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(M.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(M.size()); ++r)
      if (M[r][c]) piv = r;
    if (piv < 0) continue;
    std::swap(M[piv], M[rank]);
    int iv = F.inv(M[rank][c]);
    for (auto& x : M[rank]) x = F.mul(x, iv);
    for (int r = 0; r < static_cast<int>(M.size()); ++r) {
      if (r == rank || !M[r][c]) continue;
      int f = M[r][c];
      for (int j = 0; j < cols; ++j) M[r][j] = F.sub(M[r][j], F.mul(f, M[rank][j]));
    }
    ++rank;
  }
  return rank;
}

inline std::vector<int> apply_matrix(const FiniteField& F, const FMatrix& M, const std::vector<int>& v) {
  std::vector<int> out(M.size(), 0);
  for (std::size_t r = 0; r < M.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] = F.add(out[r], F.mul(M[r][c], v[c]));
  return out;
}

inline bool is_zero_matrix(const FMatrix& M) {
  for (const auto& r : M)
    for (int x : r)
      if (x) return false;
  return true;
}

inline FMatrix unit_matrix(int rows, int cols) {
  FMatrix M(rows, std::vector<int>(cols, 0));
  if (rows && cols) M[0][0] = 1;
  return M;
}

}  // namespace detail

// Number of basic operations the generator will produce.
inline std::size_t generated_op_count(const GenConfig& c) {
  const std::size_t q = ipow(c.p, c.k);
  std::size_t count = 1, sorts = 0;
  for (int l = 0; l <= c.m(); ++l) {
    std::vector<int> dims{c.dims[l]};
    if (l < static_cast<int>(c.extra.size()))
      for (const auto& W : c.extra[l]) dims.push_back(static_cast<int>(W.size()));
    for (int d : dims) {
      ++sorts;
      std::size_t e = static_cast<std::size_t>(c.dims[l]) * d;
      if (e > 0) count += e >= 64 || ipow(q, static_cast<int>(e)) > (1u << 30) ? (1u << 30) : ipow(q, static_cast<int>(e)) - 1;
    }
    if (l >= 1) {
      count += 1;  // K_ℓ
      if (c.dims[l] > 0) count += 2;
    }
  }
  return count + sorts;
}

inline Generated generate_example(const GenConfig& cfg) {
  require_input(!cfg.dims.empty(), "config needs at least one class");
  require_input(cfg.dims[0] > 0, "dim V⁰_0 must be positive");
  for (int d : cfg.dims) require_input(d >= 0, "negative dimension");
  require_input(cfg.extra.size() <= cfg.dims.size(), "subspace lists for nonexistent classes");
  const std::size_t ops = generated_op_count(cfg);
  if (ops > cfg.op_cap) throw CapExceeded("generated operations (" + std::to_string(ops) + ")", cfg.op_cap);

  Generated G;
  G.config = cfg;
  G.field = build_field(cfg.p, cfg.k, cfg.modulus);
  const auto& F = G.field;
  const int q = F.q, m = cfg.m();
  G.config.extra.resize(m + 1);
  G.config.g.resize(m + 1);
  G.config.h.resize(m + 1);

  int next = 0;
  for (int l = 0; l <= m; ++l) {
    const int d0 = cfg.dims[l];
    FMatrix id(d0, std::vector<int>(d0, 0));
    for (int r = 0; r < d0; ++r) id[r][r] = 1;
    std::vector<FMatrix> bases{id};
    for (const auto& W : G.config.extra[l]) {
      for (const auto& row : W) {
        require_input(static_cast<int>(row.size()) == d0, "subspace basis row has the wrong length");
        for (int x : row) require_input(x >= 0 && x < q, "field element out of range");
      }
      require_input(detail::field_rank(F, W) == static_cast<int>(W.size()), "subspace basis rows are dependent");
      bases.push_back(W);
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
      GenSort s;
      s.l = l;
      s.i = static_cast<int>(i);
      s.dim = static_cast<int>(bases[i].size());
      s.first = next;
      s.size = static_cast<int>(ipow(q, s.dim));
      s.basis = bases[i];
      next += s.size;
      G.sorts.push_back(s);
    }
  }
  const int n = next;
  const int S = static_cast<int>(G.sorts.size());
  G.sort_of.resize(n);
  for (int s = 0; s < S; ++s)
    for (int a = 0; a < G.sorts[s].size; ++a) G.sort_of[G.sorts[s].first + a] = s;

  for (int l = 1; l <= m; ++l) {
    if (cfg.dims[l] == 0) continue;
    auto& g = G.config.g[l];
    auto& h = G.config.h[l];
    if (g.empty()) g = detail::unit_matrix(cfg.dims[l], cfg.dims[0]);
    if (h.empty()) h = detail::unit_matrix(cfg.dims[0], cfg.dims[l]);
    require_input(static_cast<int>(g.size()) == cfg.dims[l] && static_cast<int>(g[0].size()) == cfg.dims[0],
                  "g_ℓ has the wrong shape");
    require_input(static_cast<int>(h.size()) == cfg.dims[0] && static_cast<int>(h[0].size()) == cfg.dims[l],
                  "h_ℓ has the wrong shape");
    require_input(!detail::is_zero_matrix(g) && !detail::is_zero_matrix(h), "g_ℓ and h_ℓ must be nonconstant");
  }
  auto& one = G.config.one;
  if (one.empty()) {
    one.assign(cfg.dims[0], 0);
    one[0] = 1;
  }
  require_input(static_cast<int>(one.size()) == cfg.dims[0], "1 has the wrong length");
  require_input(std::any_of(one.begin(), one.end(), [](int x) { return x != 0; }), "1 must be nonzero");

  // Semilattice-over-Maltsev data.
  SomData sd;
  sd.num_sorts = S;
  sd.sort_of = G.sort_of;
  sd.meet.resize(static_cast<std::size_t>(S) * S);
  const int bottom = G.sort_index(0, 0);
  for (int s = 0; s < S; ++s)
    for (int t = 0; t < S; ++t) {
      int v = s == t ? s : (G.sorts[s].l == G.sorts[t].l ? G.sort_index(G.sorts[s].l, 0) : bottom);
      sd.meet[static_cast<std::size_t>(s) * S + t] = v;
    }
  for (int s = 0; s < S; ++s)
    for (int t = 0; t < S; ++t) {
      if (sd.meet[static_cast<std::size_t>(s) * S + t] != t) continue;
      std::vector<int> f(n, -1);
      for (int a = G.sorts[s].first; a < G.sorts[s].first + G.sorts[s].size; ++a) {
        if (s == t) f[a] = a;
        else if (G.sorts[t].l == G.sorts[s].l) f[a] = G.sigma(a);
        else f[a] = G.sorts[t].first;  // into (0,0) from another class: zero
      }
      sd.maps[{s, t}] = f;
    }
  for (int s = 0; s < S; ++s) {
    sd.maltsev.push_back([&G, &F, s](int x, int y, int z) {
      auto a = G.coords(x), b = G.coords(y), c = G.coords(z);
      for (std::size_t r = 0; r < a.size(); ++r) a[r] = F.add(F.sub(a[r], b[r]), c[r]);
      return G.element(s, a);
    });
  }
  G.som = build_som(std::move(sd));
  G.som.data.maltsev.clear();  // the closures point into G

  Algebra A(n);
  A.add_operation(Operation{"d", 3, G.som.d.table});
  auto class_zero = [&](int a) { return G.zero_of_class(G.sorts[G.sort_of[a]].l); };
  // F^ℓ_{i,g} for every nonzero g : V⁰_ℓ -> V^ℓ_i
  for (int s = 0; s < S; ++s) {
    const auto& srt = G.sorts[s];
    const int in = cfg.dims[srt.l], out = srt.dim;
    if (in == 0 || out == 0) continue;
    const std::size_t total = ipow(q, in * out);
    for (std::size_t code = 1; code < total; ++code) {
      FMatrix M(out, std::vector<int>(in));
      std::size_t c = code;
      for (int r = out - 1; r >= 0; --r)
        for (int j = in - 1; j >= 0; --j, c /= q) M[r][j] = static_cast<int>(c % q);
      Operation o{"F[" + std::to_string(srt.l) + "," + std::to_string(srt.i) + ",#" + std::to_string(code) + "]", 1, {}};
      for (int a = 0; a < n; ++a) {
        if (G.sorts[G.sort_of[a]].l != srt.l) {
          o.table.push_back(class_zero(a));
          continue;
        }
        o.table.push_back(G.element(s, detail::apply_matrix(F, M, G.coords(G.sigma(a)))));
      }
      A.add_operation(std::move(o));
    }
  }
  for (int l = 1; l <= m; ++l) {
    if (cfg.dims[l] == 0) continue;
    Operation Gl{"G" + std::to_string(l), 1, {}}, Gp{"G'" + std::to_string(l), 1, {}};
    for (int a = 0; a < n; ++a) {
      const int la = G.sorts[G.sort_of[a]].l;
      Gl.table.push_back(la == 0 ? G.element(G.sort_index(l, 0), detail::apply_matrix(F, G.config.g[l], G.coords(G.sigma(a))))
                                 : class_zero(a));
      Gp.table.push_back(la == l ? G.element(bottom, detail::apply_matrix(F, G.config.h[l], G.coords(G.sigma(a))))
                                 : class_zero(a));
    }
    A.add_operation(std::move(Gl));
    A.add_operation(std::move(Gp));
  }
  const int one_el = G.element(bottom, one), zero00 = G.sorts[bottom].first;
  for (int s = 0; s < S; ++s) {
    Operation H{"H[" + std::to_string(G.sorts[s].l) + "," + std::to_string(G.sorts[s].i) + "]", 2, {}};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) H.table.push_back(G.sort_of[a] == s && G.sort_of[b] == s ? one_el : zero00);
    A.add_operation(std::move(H));
  }
  for (int l = 1; l <= m; ++l) {
    Operation K{"K" + std::to_string(l), 2, {}};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) K.table.push_back(G.sorts[G.sort_of[a]].l == l ? b : class_zero(b));
    A.add_operation(std::move(K));
  }
  require_internal(static_cast<std::size_t>(A.num_ops()) == ops, "operation count differs from the estimate");
  G.alg = std::move(A);

  std::vector<int> lm(n), la(n);
  for (int a = 0; a < n; ++a) {
    lm[a] = G.sort_of[a];
    la[a] = G.sorts[G.sort_of[a]].l;
  }
  G.mu = Partition::from_labels(lm);
  G.alpha = Partition::from_labels(la);
  return G;
}

inline WdtCertificate generated_certificate(const Generated& G) { return verify_wdt(G.alg, G.som.d); }

// Checks the structural claims about a generated algebra.
inline Report verify_claims(const Generated& G) {
  Report r;
  const Algebra& A = G.alg;
  const int n = A.size();
  auto cert = generated_certificate(G);
  r.add("wdt", "d is a weak difference term of A", "gen-wdt", cert.verdict, cert.witness);
  r.add("som-identities", "the semilattice-over-Maltsev identities hold", "gen-som", som_identity_failure(G.som.d).empty());

  auto mon = monolith(A);
  const bool si = mon && *mon == G.mu;
  r.add("monolith", "A is subdirectly irreducible with monolith μ", "gen-monolith", si,
        mon ? "monolith " + mon->to_string() : "not subdirectly irreducible");
  r.add("monolith-abelian", "μ is abelian", "gen-monolith", is_abelian(A, G.mu));

  // Reflexive subuniverses of A² generated by 0_A and one pair.
  {
    Algebra A2 = power(A, 2);
    std::vector<int> diag;
    for (int a = 0; a < n; ++a) diag.push_back(a * n + a);
    std::vector<std::vector<int>> gens;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        auto seed = diag;
        seed.push_back(a * n + b);
        gens.push_back(generate_subuniverse(A2, seed));
      }
    std::vector<int> mu_set;
    for (auto [a, b] : G.mu.pairs()) mu_set.push_back(a * n + b);
    std::sort(mu_set.begin(), mu_set.end());
    std::set<std::vector<int>> minimal;
    for (const auto& R : gens) {
      bool min = true;
      for (const auto& R2 : gens)
        if (R2.size() < R.size() && std::includes(R.begin(), R.end(), R2.begin(), R2.end())) min = false;
      if (min) minimal.insert(R);
    }
    bool ok = minimal.size() == 1 && *minimal.begin() == mu_set;
    r.add("unique-minimal-reflexive", "μ is the unique minimal reflexive subuniverse of A² properly containing 0",
          "gen-minimal-reflexive", ok, "minimal ones: " + std::to_string(minimal.size()));
  }

  auto cent = centralizer(A, Partition::identity(n), G.mu);
  r.add("centralizer", "(0:μ) = α", "gen-centralizer", cent == G.alpha, "(0:μ)=" + cent.to_string());
  if (!cert.verdict || !si) {
    for (const char* id : {"delta-closed-form", "bijection-h", "ranges", "field"})
      r.skip(id, "difference algebra items", "gen-delta", "needs a weak difference term and monolith μ");
    return r;
  }

  auto DA = difference_algebra(A, G.mu, cert);
  {
    // ((a,b),(a',b')) ∈ Δ iff same ℓ and σ(a) − σ(b) = σ(a') − σ(b') in V⁰_ℓ.
    std::vector<int> label(DA.P.size());
    for (int p = 0; p < DA.P.size(); ++p) {
      int a = DA.P.first(p), b = DA.P.second(p);
      auto ca = G.coords(G.sigma(a)), cb = G.coords(G.sigma(b));
      for (std::size_t j = 0; j < ca.size(); ++j) ca[j] = G.field.sub(ca[j], cb[j]);
      label[p] = G.element(G.sort_index(G.sorts[G.sort_of[a]].l, 0), ca);
    }
    auto closed = Partition::from_labels(label);
    r.add("delta-closed-form", "Δ_{μ,α} matches the σ-difference description", "gen-delta", closed == DA.delta);

    // h: D -> B, ν(a,b) ↦ σ(a) − σ(b)
    std::vector<int> h(DA.size(), -1);
    bool wd = true;
    for (int p = 0; p < DA.P.size(); ++p) {
      int x = DA.Q.projection(p);
      if (h[x] >= 0 && h[x] != label[p]) wd = false;
      h[x] = label[p];
    }
    std::vector<int> B;
    for (int l = 0; l <= G.config.m(); ++l) {
      const auto& s = G.sorts[G.sort_index(l, 0)];
      for (int a = s.first; a < s.first + s.size; ++a) B.push_back(a);
    }
    auto img = h;
    std::sort(img.begin(), img.end());
    bool bij = wd && img == B;
    bool sends_phi = bij;
    for (int x = 0; x < DA.size() && bij; ++x)
      for (int y = 0; y < DA.size(); ++y)
        sends_phi &= DA.phi.related(x, y) == G.alpha.related(h[x], h[y]);
    r.add("bijection-h", "h: D(A,μ) -> B is a bijection sending φ to ψ", "gen-bijection", bij && sends_phi);

    bool ranges = bij;
    std::string wit;
    for (std::size_t s = 0; s < G.sorts.size() && ranges; ++s) {
      const auto& srt = G.sorts[s];
      auto R = range_of_class(DA, srt.first);
      std::vector<int> got, want;
      for (int x : R.members) got.push_back(h[x]);
      for (int c = 0; c < srt.size; ++c) want.push_back(G.sigma(srt.first + c));
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      if (got != want) {
        ranges = false;
        wit = "class (" + std::to_string(srt.l) + "," + std::to_string(srt.i) + ")";
      }
    }
    r.add("ranges", "h(ran(V^ℓ_i)) = W^ℓ_i for every class", "gen-ranges", ranges, wit);
  }
  auto Fmu = division_ring(DA);
  bool iso = find_ring_isomorphism(Fmu.ring, G.field.ring()).has_value();
  r.add("field", "𝔽_μ is isomorphic to the configured field", "gen-field", iso,
        "|𝔽_μ|=" + std::to_string(Fmu.size()) + " q=" + std::to_string(G.field.q));
  return r;
}

namespace fixtures {

// GF(2), one class with an extra full copy: |A| = 4.
inline GenConfig gen1_config() {
  GenConfig c;
  c.dims = {1};
  c.extra = {{FMatrix{{1}}}};
  return c;
}

// GF(2), V⁰_0 of dim 2 with an extra class onto span{e1}, V⁰_1 of dim 1: |A| = 8.
inline GenConfig gen2_config() {
  GenConfig c;
  c.dims = {2, 1};
  c.extra = {{FMatrix{{1, 0}}}, {}};
  return c;
}

// GF(3), one class with an extra full copy: |A| = 6.
inline GenConfig gen3_config() {
  GenConfig c;
  c.p = 3;
  c.dims = {1};
  c.extra = {{FMatrix{{1}}}};
  return c;
}

inline Generated gen1() { return generate_example(gen1_config()); }
inline Generated gen2() { return generate_example(gen2_config()); }
inline Generated gen3() { return generate_example(gen3_config()); }

}  // namespace fixtures

}  // namespace ua
