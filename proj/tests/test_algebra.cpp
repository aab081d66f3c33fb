#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "ua/fixtures.hpp"
#include "ua/homomorphism.hpp"
#include "ua/polynomials.hpp"

using namespace ua;
namespace fx = ua::fixtures;

TEST_CASE("evaluate reads the table and validates its arguments") {
  auto Z4 = fx::z4();
  CHECK(Z4.evaluate("p", {1, 2, 3}) == 2);
  CHECK(fx::s2().evaluate("meet", {0, 1}) == 0);
  CHECK(fx::z2().evaluate("d", {1, 1, 0}) == 0);
  CHECK_THROWS_AS(Z4.evaluate("q", {0, 0, 0}), InputError);
  CHECK_THROWS_AS(Z4.evaluate("p", {0, 0}), InputError);
  CHECK_THROWS_AS(Z4.evaluate("p", {0, 0, 4}), InputError);
}

TEST_CASE("tables are validated and nullary operations become constants") {
  CHECK_THROWS_AS(Algebra(2, {Operation{"f", 1, {0, 2}}}), InputError);
  CHECK_THROWS_AS(Algebra(2, {Operation{"f", 2, {0, 1}}}), InputError);
  Algebra A(3, {Operation{"c", 0, {2}}});
  REQUIRE(A.op(0).arity == 1);
  CHECK(A.op(0).table == std::vector<int>{2, 2, 2});
}

TEST_CASE("subuniverse generation") {
  CHECK(generate_subuniverse(fx::z4(), {0, 1}) == std::vector<int>{0, 1, 2, 3});
  CHECK(generate_subuniverse(fx::z4(), {0}) == std::vector<int>{0});
  CHECK(generate_subuniverse(fx::s2(), {0, 1}) == std::vector<int>{0, 1});
  CHECK(generate_subuniverse(fx::z4(), {0, 2}) == std::vector<int>{0, 2});
}

TEST_CASE("subuniverse generation is extensive, monotone and idempotent, and matches the naive fixpoint") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Algebra A(n);
    Operation f{"f", 2, {}};
    for (int i = 0; i < n * n; ++i) f.table.push_back(static_cast<int>(rng() % n));
    Operation g{"g", 1, {}};
    for (int i = 0; i < n; ++i) g.table.push_back(static_cast<int>(rng() % n));
    A.add_operation(f);
    A.add_operation(g);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> seed;
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1) seed.push_back(x);
      auto S = generate_subuniverse(A, seed);
      auto ref = oracle::subuniverse(A, std::set<int>(seed.begin(), seed.end()));
      CHECK(std::vector<int>(ref.begin(), ref.end()) == S);
      for (int x : seed) CHECK(std::binary_search(S.begin(), S.end(), x));
      CHECK(generate_subuniverse(A, S) == S);
      auto bigger = seed;
      bigger.push_back(static_cast<int>(rng() % n));
      auto T = generate_subuniverse(A, bigger);
      CHECK(std::includes(T.begin(), T.end(), S.begin(), S.end()));
    }
  }
}

TEST_CASE("products act coordinatewise with the fixed pair encoding") {
  auto P = product(fx::z2(), fx::z2());
  CHECK(P.alg.size() == 4);
  CHECK(P.alg.apply(0, {P.encode(1, 0), P.encode(0, 0), P.encode(0, 1)}) == P.encode(1, 1));
  CHECK(product(fx::z4(), fx::z4()).alg.size() == 16);
  auto S = product(fx::s2(), fx::s2());
  CHECK(S.alg.apply(0, {S.encode(1, 0), S.encode(0, 1)}) == S.encode(0, 0));
  CHECK(P.first(P.encode(1, 0)) == 1);
  CHECK(P.second(P.encode(1, 0)) == 0);
  CHECK_THROWS_AS(product(fx::z2(), fx::s2()), InputError);
}

TEST_CASE("quotients") {
  auto Z4 = fx::z4();
  auto Q = quotient(Z4, Partition::from_blocks(4, {{0, 2}, {1, 3}}));
  CHECK(Q.alg.size() == 2);
  Algebra z2p(2, {Operation{"p", 3, fx::z2().op(0).table}});
  CHECK(find_isomorphism(Q.alg, z2p).has_value());
  CHECK(quotient(Z4, Partition::identity(4)).alg == Z4);
  CHECK(quotient(Z4, Partition::full(4)).alg.size() == 1);
  CHECK_THROWS_AS(quotient(Z4, Partition::from_blocks(4, {{0, 1}})), PreconditionError);
}

TEST_CASE("second quotient matches the direct quotient") {
  auto Z4 = fx::z4();
  auto theta = Partition::from_blocks(4, {{0, 2}, {1, 3}});
  auto beta = Partition::full(4);
  auto Q1 = quotient(Z4, theta);
  auto Q2 = quotient(Q1.alg, image_partition(Q1.projection, beta));
  CHECK(find_isomorphism(Q2.alg, quotient(Z4, beta).alg).has_value());
  auto sq = fx::sq2();
  auto eta1 = Partition::from_labels(std::vector<int>{0, 0, 1, 1});
  auto R1 = quotient(sq, eta1);
  auto R2 = quotient(R1.alg, image_partition(R1.projection, Partition::full(4)));
  CHECK(R2.alg.size() == 1);
}

TEST_CASE("unary polynomials agree with the naive closure") {
  CHECK(unary_polynomials(fx::z2()).size() == 4);
  CHECK(unary_polynomials(fx::s2()).size() == 3);
  // Every affine map x ↦ ax + c of Z4 is a polynomial, constants included.
  auto P = unary_polynomials(fx::z4());
  CHECK(P.size() == 16);
  for (const Algebra& A : {fx::z2(), fx::z4(), fx::s2(), fx::sq2()}) {
    auto mine = unary_polynomials(A);
    auto ref = oracle::unary_polynomials(A);
    CHECK(std::set<std::vector<int>>(mine.functions.begin(), mine.functions.end()) == ref);
    // closed under composition
    for (const auto& f : mine.functions)
      for (const auto& g : mine.functions) {
        std::vector<int> fg(A.size());
        for (int x = 0; x < A.size(); ++x) fg[x] = f[g[x]];
        CHECK(mine.contains(fg));
      }
  }
  CHECK_THROWS_AS(unary_polynomials(fx::z4(), 5), CapExceeded);
}

TEST_CASE("isomorphism search") {
  auto Z2 = fx::z2();
  auto h = find_isomorphism(Z2, Z2);
  REQUIRE(h);
  CHECK(*h == ElementMap::identity(2));

  auto Z4 = fx::z4();
  ElementMap shift(4, {1, 2, 3, 0});
  auto B = relabel(Z4, shift);
  auto g = find_isomorphism(Z4, B);
  REQUIRE(g);
  CHECK(is_homomorphism(Z4, B, *g));
  CHECK(g->is_bijective());

  CHECK_FALSE(find_isomorphism(Z2, fx::s2()));
  CHECK_FALSE(find_isomorphism(Z2, fx::s2_ternary()));
}

TEST_CASE("isomorphism search finds relabelings of random algebras") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    Operation f{"f", 2, {}};
    for (int i = 0; i < n * n; ++i) f.table.push_back(static_cast<int>(rng() % n));
    Algebra A(n, {f});
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Algebra B = relabel(A, ElementMap(n, perm));
    auto h = find_isomorphism(A, B);
    REQUIRE(h);
    CHECK(is_homomorphism(A, B, *h));
  }
}
