#include <catch_amalgamated.hpp>

#include <map>

#include "oracles.hpp"
#include "ua/fixtures.hpp"
#include "ua/genlab.hpp"

using namespace ua;
namespace fx = ua::fixtures;

namespace {

// Brute-force check that every nonzero element has a multiplicative inverse
// and the multiplicative group has order q − 1 (by counting units).
bool oracle_is_field(const FiniteField& F) {
  int units = 0;
  for (int a = 1; a < F.q; ++a)
    for (int b = 1; b < F.q; ++b)
      if (F.mul(a, b) == 1) {
        ++units;
        break;
      }
  return units == F.q - 1;
}

std::map<char, int> op_families(const Algebra& A) {
  std::map<char, int> out;
  for (int i = 0; i < A.num_ops(); ++i) {
    const auto& name = A.op(i).name;
    out[name == "d" ? 'd' : (name.rfind("G'", 0) == 0 ? 'g' : name[0])]++;
  }
  return out;
}

}  // namespace

TEST_CASE("finite fields") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    int p = q % 2 == 0 ? 2 : (q % 3 == 0 ? 3 : q);
    int k = 1;
    while (static_cast<int>(ipow(p, k)) < q) ++k;
    auto F = build_field(p, k);
    CHECK(F.q == q);
    CHECK(oracle_is_field(F));
    // characteristic p
    for (int a = 0; a < q; ++a) {
      int s = 0;
      for (int i = 0; i < p; ++i) s = F.add(s, a);
      CHECK(s == 0);
    }
  }
  auto F4 = build_field(2, 2);
  CHECK(F4.mul(2, 3) == 1);  // x·(x+1) = 1
  CHECK(F4.mul(2, 2) == 3);  // x² = x+1
  auto F9 = build_field(3, 2);
  CHECK(F9.add(1, F9.add(1, 1)) == 0);
  CHECK(F9.mul(3, 3) == 2);  // x² = −1

  CHECK_THROWS_AS(build_field(4, 1), InputError);
  CHECK_THROWS_AS(build_field(2, 2, {1, 0, 1}), InputError);  // x²+1 = (x+1)²
  CHECK_THROWS_AS(build_field(3, 2, {2, 0, 1}), InputError);  // x²−1
  CHECK_THROWS_AS(build_field(5, 2), InputError);
  CHECK(build_field(5, 2, {2, 0, 1}).q == 25);
}

TEST_CASE("semilattice over Maltsev operations") {
  // single sort Z4: d is x − y + z
  SomData one;
  one.num_sorts = 1;
  one.meet = {0};
  one.sort_of = {0, 0, 0, 0};
  one.maps[{0, 0}] = {0, 1, 2, 3};
  one.maltsev = {[](int x, int y, int z) { return ((x - y + z) % 4 + 4) % 4; }};
  auto S1 = build_som(one);
  CHECK(S1.d(1, 3, 2) == 0);
  CHECK(som_identity_failure(S1.d).empty());

  // two sorts 1 > 0 with Z2 each and the identity between them
  SomData two;
  two.num_sorts = 2;
  two.meet = {0, 0, 0, 1};
  two.sort_of = {0, 0, 1, 1};
  two.maps[{0, 0}] = {0, 1, -1, -1};
  two.maps[{1, 1}] = {-1, -1, 2, 3};
  two.maps[{1, 0}] = {-1, -1, 0, 1};
  auto x2 = [](int base) { return [base](int x, int y, int z) { return base + ((x - y + z - base) % 2 + 2) % 2; }; };
  two.maltsev = {x2(0), x2(2)};
  auto S2 = build_som(two);
  CHECK(S2.d(2, 3, 0) == 1);  // f(2) − f(3) + 0 = 0 − 1 + 0 in Z2
  CHECK(S2.d(3, 3, 3) == 3);
  CHECK(S2.s_meet(1, 0) == 0);

  auto bad = two;
  bad.meet = {0, 1, 0, 1};
  CHECK_THROWS_AS(build_som(bad), InputError);
  bad = two;
  bad.maps.erase({1, 0});
  CHECK_THROWS_AS(build_som(bad), InputError);
  bad = two;
  bad.maltsev[0] = [](int x, int, int) { return x; };
  CHECK_THROWS_AS(build_som(bad), InputError);
}

TEST_CASE("generated fixtures have the expected shape") {
  auto g1 = fx::gen1();
  CHECK(g1.alg.size() == 4);
  CHECK(g1.alg.num_ops() == 5);
  CHECK(g1.sorts.size() == 2);

  auto g2 = fx::gen2();
  CHECK(g2.alg.size() == 8);
  CHECK(g2.alg.num_ops() == 26);
  CHECK(generated_op_count(fx::gen2_config()) == 26);
  auto fam = op_families(g2.alg);
  CHECK(fam['d'] == 1);
  CHECK(fam['F'] == 19);
  CHECK(fam['G'] == 1);
  CHECK(fam['g'] == 1);
  CHECK(fam['H'] == 3);
  CHECK(fam['K'] == 1);
  std::vector<int> sizes;
  for (const auto& b : g2.mu.blocks()) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{2, 2, 4});
  CHECK(g2.alpha.num_blocks() == 2);
  CHECK(g2.alg.op_index("G'1") >= 0);
  CHECK(g2.alg.op_index("H[0,1]") >= 0);

  auto g3 = fx::gen3();
  CHECK(g3.alg.size() == 6);
  CHECK(g3.alg.num_ops() == 7);

  GenConfig plain;
  plain.p = 3;
  plain.dims = {1};
  auto g0 = generate_example(plain);
  CHECK(g0.alg.size() == 3);
  CHECK(g0.alg.num_ops() == 4);
}

TEST_CASE("generated operations follow their definitions") {
  auto G = fx::gen2();
  const auto& A = G.alg;
  const int n = A.size();
  // d restricted to each μ-class is x − y + z
  for (const auto& s : G.sorts)
    for (int a = s.first; a < s.first + s.size; ++a)
      for (int b = s.first; b < s.first + s.size; ++b)
        for (int c = s.first; c < s.first + s.size; ++c) {
          auto ca = G.coords(a), cb = G.coords(b), cc = G.coords(c);
          for (std::size_t r = 0; r < ca.size(); ++r) ca[r] = G.field.add(G.field.sub(ca[r], cb[r]), cc[r]);
          CHECK(G.som.d(a, b, c) == G.element(G.sort_of[a], ca));
        }
  // H_s is 1 exactly on V_s × V_s
  int one = G.element(G.sort_index(0, 0), {1, 0});
  int h = A.op_index("H[1,0]");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool in = G.sorts[G.sort_of[a]].l == 1 && G.sorts[G.sort_of[b]].l == 1;
      CHECK(A.op(h).table[a * n + b] == (in ? one : 0));
    }
  // K1(a,b) = b on C_1
  int k = A.op_index("K1");
  for (int a = 0; a < n; ++a)
    if (G.sorts[G.sort_of[a]].l == 1)
      for (int b = 0; b < n; ++b) CHECK(A.op(k).table[a * n + b] == b);
  // the F operations for (0,0) are all nonzero endomorphisms of V⁰_0 on C_0
  std::set<std::vector<int>> maps;
  for (int i = 0; i < A.num_ops(); ++i)
    if (A.op(i).name.rfind("F[0,0,", 0) == 0) maps.insert(std::vector<int>(A.op(i).table.begin(), A.op(i).table.begin() + 4));
  CHECK(maps.size() == 15);
}

TEST_CASE("class sizes are powers of the characteristic") {
  for (const auto& G : {fx::gen1(), fx::gen2(), fx::gen3()})
    for (const auto& b : G.mu.blocks()) {
      std::size_t s = b.size();
      while (s % G.field.p == 0) s /= G.field.p;
      CHECK(s == 1);
    }
}

TEST_CASE("claims hold for the generated fixtures") {
  for (const auto& G : {fx::gen1(), fx::gen2(), fx::gen3()}) {
    auto r = verify_claims(G);
    for (const auto& it : r.items) {
      INFO(G.alg.size() << " " << it.id << " " << it.witness);
      CHECK(it.verdict == Verdict::pass);
    }
  }
  GenConfig plain;
  plain.p = 3;
  plain.dims = {1};
  CHECK(verify_claims(generate_example(plain)).all_pass());
}

TEST_CASE("generated algebras against the other modules") {
  auto G = fx::gen2();
  auto cert = generated_certificate(G);
  REQUIRE(cert.verdict);
  auto DA = difference_algebra(G.alg, G.mu, cert);
  CHECK(DA.size() == 6);
  auto F = division_ring(DA);
  CHECK(F.size() == 2);
  auto act = canonical_action(DA, F, G.sorts[G.sort_index(0, 0)].first);
  CHECK(act.dimension == 2);
  std::vector<int> T;
  for (const auto& s : G.sorts) T.push_back(s.first);
  auto FR = freese_ring(G.alg, G.mu, T, cert);
  CHECK(FR.field_size == 2);
  auto D = diff_of(G.alg, cert);
  REQUIRE(D.da);
  CHECK(D.alg.size() == 6);
  CHECK(bridge_verify(G.alg, D.alg, canonical_bridge(G.alg, cert).T).valid);

  // relabelling gives an isomorphic algebra
  std::vector<int> perm(G.alg.size());
  for (int i = 0; i < G.alg.size(); ++i) perm[i] = G.alg.size() - 1 - i;
  CHECK(find_isomorphism(G.alg, relabel(G.alg, ElementMap(G.alg.size(), perm))).has_value());
}

TEST_CASE("generator inputs are validated") {
  auto c = fx::gen2_config();
  c.extra[0][0] = FMatrix{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(generate_example(c), InputError);
  c = fx::gen2_config();
  c.g = {{}, FMatrix{{0, 0}}};
  CHECK_THROWS_AS(generate_example(c), InputError);
  c = fx::gen2_config();
  c.one = {0, 0};
  CHECK_THROWS_AS(generate_example(c), InputError);
  c = fx::gen2_config();
  c.dims = {3, 1};
  c.extra = {{FMatrix{{1, 0, 0}}}, {}};
  CHECK_THROWS_AS(generate_example(c), CapExceeded);
  c.op_cap = 1000;
  CHECK(generate_example(c).alg.num_ops() == static_cast<int>(generated_op_count(c)));
}
