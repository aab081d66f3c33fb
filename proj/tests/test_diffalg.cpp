#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ua/diffalg.hpp"
#include "ua/fixtures.hpp"
#include "ua/homomorphism.hpp"

using namespace ua;
namespace fx = ua::fixtures;

namespace {

const Partition z4_theta = Partition::from_blocks(4, {{0, 2}, {1, 3}});

WdtCertificate cert_of(const Algebra& A, const std::string& op) { return verify_wdt(A, Ternary::from_op(A, op)); }

// Δ as the least congruence of A(θ) (found by filtering all partitions)
// containing the diagonal pairs over φ.
Partition oracle_delta(const PairAlgebra& P, const Partition& phi) {
  auto cons = oracle::congruences(P.alg);
  const Partition* best = nullptr;
  for (const auto& c : cons) {
    bool ok = true;
    for (auto [a, b] : phi.pairs()) ok &= c.related(P.encode(a, a), P.encode(b, b));
    if (ok && (!best || c.leq(*best))) best = &c;
  }
  return *best;
}

}  // namespace

TEST_CASE("pair algebras") {
  auto P = pair_algebra(fx::z4(), z4_theta);
  CHECK(P.size() == 8);
  CHECK(P.pairs.front() == std::pair{0, 0});
  CHECK(P.pairs[1] == std::pair{0, 2});
  CHECK(P.lift(Partition::full(4)).is_full());
  CHECK(P.lift(z4_theta) == join(P.eta1, P.eta2));

  auto P0 = pair_algebra(fx::z4(), Partition::identity(4));
  CHECK(P0.size() == 4);
  CHECK(find_isomorphism(P0.alg, fx::z4()).has_value());
  CHECK(pair_algebra(fx::z2(), Partition::full(2)).size() == 4);
  CHECK_THROWS_AS(pair_algebra(fx::z4(), Partition::from_blocks(4, {{0, 1}})), PreconditionError);
}

TEST_CASE("delta congruences") {
  auto P = pair_algebra(fx::z2(), Partition::full(2));
  auto D = delta_congruence(P, Partition::full(2), true);
  CHECK(D.delta == Partition::from_blocks(4, {{0, 3}, {1, 2}}));
  REQUIRE(D.equals_matrices);
  CHECK(*D.equals_matrices);

  auto P4 = pair_algebra(fx::z4(), z4_theta);
  auto D4 = delta_congruence(P4, Partition::full(4), true);
  CHECK(D4.delta.num_blocks() == 2);
  for (const auto& b : D4.delta.blocks()) CHECK(b.size() == 4);
  CHECK(delta_congruence(P4, Partition::identity(4)).delta.is_identity());
  CHECK(delta_congruence(P4, z4_theta, true).equals_matrices.value_or(false));
}

TEST_CASE("delta matches the brute-force least congruence") {
  std::vector<std::pair<Algebra, Partition>> cases{
      {fx::z2(), Partition::full(2)},
      {fx::z4(), z4_theta},
      {fx::s2(), Partition::full(2)},
      {fx::s2_ternary(), Partition::full(2)},
      {fx::sq2(), Partition::from_labels(std::vector<int>{0, 0, 1, 1})},
  };
  for (const auto& [A, th] : cases) {
    auto P = pair_algebra(A, th);
    for (const auto& phi : oracle::congruences(A)) CHECK(delta_congruence(P, phi).delta == oracle_delta(P, phi));
  }
}

TEST_CASE("difference algebras of the fixtures") {
  auto Z4 = fx::z4();
  auto DA = difference_algebra(Z4, z4_theta, cert_of(Z4, "p"));
  CHECK(DA.alpha.is_full());
  CHECK(DA.size() == 2);
  CHECK(DA.phi.is_full());
  CHECK(DA.canonical.size() == 1);
  CHECK(DA.minimal);
  Algebra z2p(2, {Operation{"p", 3, fx::z2().op(0).table}});
  CHECK(find_isomorphism(DA.D(), z2p).has_value());

  auto sq = fx::sq2();
  auto eta1 = Partition::from_labels(std::vector<int>{0, 0, 1, 1});
  auto Dsq = difference_algebra(sq, eta1, cert_of(sq, "d"));
  CHECK(Dsq.size() == 2);
  CHECK(Dsq.canonical.size() == 1);

  auto D0 = difference_algebra(Z4, Partition::identity(4), cert_of(Z4, "p"));
  CHECK(D0.size() == 1);

  auto S = fx::s2_ternary();
  CHECK_THROWS_AS(difference_algebra(S, Partition::full(2), cert_of(S, "d")), PreconditionError);
}

TEST_CASE("lambda embeddings and ranges") {
  auto Z4 = fx::z4();
  auto DA = difference_algebra(Z4, z4_theta, cert_of(Z4, "p"));
  auto lam = lambda_embed(DA, 0);
  CHECK(lam[1] == -1);
  CHECK(lam[0] != lam[2]);
  CHECK(lam[0] == DA.zero_of[0]);
  auto R = range_of_class(DA, 1);
  CHECK(R.full());
  CHECK(R.members.size() == 2);

  // λ_e(d(x,y,z)) = λ_e(x) − λ_e(y) + λ_e(z) on e/θ
  auto sq = fx::sq2();
  auto Dsq = difference_algebra(sq, Partition::full(4), cert_of(sq, "d"));
  for (int e = 0; e < 4; ++e) {
    auto l = lambda_embed(Dsq, e);
    auto H = derived_group(Dsq, e);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z) CHECK(l[Dsq.d(x, y, z)] == H.add(H.sub(l[x], l[y]), l[z]));
  }

  // singleton classes map to 0_E and have trivial range
  auto Di = difference_algebra(Z4, Partition::identity(4), cert_of(Z4, "p"));
  auto li = lambda_embed(Di, 3);
  CHECK(li[3] == Di.zero_of[3]);
  CHECK(range_of_class(Di, 3).members.size() == 1);
}

TEST_CASE("arrow graphs") {
  auto Z4 = fx::z4();
  auto DA = difference_algebra(Z4, z4_theta, cert_of(Z4, "p"));
  auto G = arrow_graph(DA, 0);
  REQUIRE(G.nodes.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(G.reach[i][j]);
  CHECK(G.witness[0][0].empty());
  CHECK(check_arrow_graph(DA, G).all_pass());

  auto Di = difference_algebra(Z4, Partition::identity(4), cert_of(Z4, "p"));
  auto Gi = arrow_graph(Di, 0);
  CHECK(Gi.nodes.size() == 4);
}

TEST_CASE("difference algebra theorem checks on the fixtures") {
  auto Z4 = fx::z4();
  auto DA = difference_algebra(Z4, z4_theta, cert_of(Z4, "p"));
  auto r = verify_diffalg_theorems(DA);
  for (const auto& it : r.items) {
    INFO(it.id << " " << it.witness);
    CHECK(it.verdict != Verdict::fail);
  }
  CHECK(r.find("m3-sublattice")->verdict == Verdict::pass);
  CHECK(r.find("minimal-height-two")->verdict == Verdict::pass);
  // Z4 is idempotent, θ minimal and (0:θ)=1
  CHECK(r.find("class-size-one-or-q")->verdict == Verdict::pass);

  // The M₃ in I[0,θ̄] for Z4: five distinct congruences.
  Partition tb = DA.P.lift(z4_theta);
  Partition eps = meet(tb, DA.delta);
  std::set<Partition> five{Partition::identity(8), DA.P.eta1, DA.P.eta2, eps, tb};
  CHECK(five.size() == 5);

  auto sq = fx::sq2();
  auto Lsq = congruence_lattice(sq);
  for (const auto& th : Lsq.elements()) {
    auto D = difference_algebra(sq, th, cert_of(sq, "d"));
    auto rs = verify_diffalg_theorems(D);
    for (const auto& it : rs.items) {
      INFO(th.to_string() << " " << it.id << " " << it.witness);
      CHECK(it.verdict != Verdict::fail);
    }
  }
  auto Z2 = fx::z2();
  CHECK_FALSE(verify_diffalg_theorems(difference_algebra(Z2, Partition::full(2), cert_of(Z2, "d"))).failures().size());
}
