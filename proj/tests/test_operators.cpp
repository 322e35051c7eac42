#include <gtest/gtest.h>

#include "confalg/fixtures.hpp"
#include "confalg/operators.hpp"
#include "oracle.hpp"
#include "samples.hpp"

using namespace confalg;

namespace {

const Poly D = Poly::d();

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::PreconditionFailed;
}

ModuleMap projection(std::size_t r1, std::size_t r2, bool first) {
  std::vector<ModElem> cols;
  for (std::size_t s = 0; s < r1 + r2; ++s)
    cols.push_back((s < r1) == first ? ModElem::basis(r1 + r2, s) : ModElem(r1 + r2));
  return ModuleMap(r1 + r2, std::move(cols));
}

}  // namespace

TEST(Operators, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto f6 = fixtures::nilpotent_pair();
  auto adj1 = adjoint(f1);
  EXPECT_TRUE(verify_operator(op::O{}, fixtures::dual_shift(), f1, &adj1));
  EXPECT_TRUE(verify_operator(op::Nijenhuis{}, ModuleMap::identity(2), f1));
  EXPECT_TRUE(verify_operator(op::Nijenhuis{}, ModuleMap::identity(2), f6));
  EXPECT_TRUE(verify_operator(op::TwistedRB{fixtures::negated_product(f1)}, ModuleMap::identity(2), f1));
  EXPECT_TRUE(verify_operator(op::Reynolds{}, fixtures::nilpotent_reynolds(), f6));
  EXPECT_TRUE(verify_operator(op::Derivation{}, fixtures::nilpotent_derivation(), f6));
  EXPECT_TRUE(verify_operator(op::Reynolds{}, ModuleMap::identity(2), f6));
  EXPECT_FALSE(verify_operator(op::Reynolds{}, Scalar(2) * ModuleMap::identity(2), f6));
}

TEST(Operators, Errors) {
  auto f1 = fixtures::dual_numbers();
  EXPECT_EQ(code_of([&] { verify_operator(op::O{}, ModuleMap(3, 2), f1); }), ErrorCode::ShapeMismatch);
  Cochain open(2, 2, 2);
  open.set({0, 0}, ModElem::basis(2, 0));
  EXPECT_EQ(code_of([&] { verify_operator(op::TwistedRB{open}, ModuleMap::identity(2), f1); }), ErrorCode::NotCocycle);
  EXPECT_EQ(code_of([&] { verify_operator(op::NijenhuisLie{}, ModuleMap::identity(2), f1); }), ErrorCode::ShapeMismatch);
}

TEST(Operators, WitnessCap) {
  auto f1 = fixtures::dual_numbers();
  auto v = verify_operator(op::O{}, ModuleMap::identity(2), f1, nullptr, CheckOptions{1});
  EXPECT_FALSE(v);
  EXPECT_EQ(v.witnesses.size(), 1u);
  EXPECT_GT(v.failures, 1u);
}

// Exhaustive comparison with the plain-algebra oracle on both rank-2 fixtures.
TEST(Operators, SmallMapsAgreeWithOracle) {
  for (const auto& alg : {fixtures::dual_numbers(), fixtures::nilpotent_pair()}) {
    auto plain = oracle::from_algebra(alg);
    auto adj = adjoint(alg);
    int hits = 0;
    for (const auto& t : samples::small_maps()) {
      auto m = oracle::from_map(t);
      EXPECT_EQ(bool(verify_O(t, alg, adj)), oracle::o_adjoint(plain, m));
      EXPECT_EQ(bool(verify_nijenhuis(t, alg)), oracle::nijenhuis(plain, m));
      EXPECT_EQ(bool(verify_operator(op::Reynolds{}, t, alg)), oracle::reynolds(plain, m));
      EXPECT_EQ(bool(verify_operator(op::Derivation{}, t, alg)), oracle::derivation(plain, m));
      for (long q : {-1L, 2L})
        EXPECT_EQ(bool(verify_operator(op::RotaBaxter{Poly(q)}, t, alg)), oracle::rota_baxter(plain, m, q));
      hits += oracle::nijenhuis(plain, m);
    }
    EXPECT_GT(hits, 0);
  }
}

TEST(Operators, RandomMapsOnUpperTriangularAgreeWithOracle) {
  auto ut = fixtures::upper_triangular();
  auto plain = oracle::from_algebra(ut);
  Random rng(9, RandomSpec{0, 1, 0.5});
  for (int k = 0; k < 60; ++k) {
    auto t = rng.constant_map(3, 3);
    auto m = oracle::from_map(t);
    EXPECT_EQ(bool(verify_O(t, ut, adjoint(ut))), oracle::o_adjoint(plain, m));
    EXPECT_EQ(bool(verify_nijenhuis(t, ut)), oracle::nijenhuis(plain, m));
    EXPECT_EQ(bool(verify_operator(op::Reynolds{}, t, ut)), oracle::reynolds(plain, m));
  }
}

TEST(Operators, DLinearMapsAreOOperators) {
  // u -> p(D)v kills every product with v, so it is an O-operator for any p.
  auto f1 = fixtures::dual_numbers();
  Random rng(2);
  for (int k = 0; k < 10; k += 2) EXPECT_TRUE(verify_O(samples::dual_map(rng, k), f1, adjoint(f1)));
}

TEST(CompatibleO, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto t = fixtures::dual_shift();
  EXPECT_TRUE(compatible_O(t, t, f1, adj));
  EXPECT_TRUE(compatible_O(t, ModuleMap(2, 2), f1, adj));
  EXPECT_EQ(code_of([&] { compatible_O(t, ModuleMap::identity(2), f1, adj); }), ErrorCode::NotOOperator);
}

TEST(CompatibleO, EquivalentToSumBeingO) {
  auto ut = fixtures::upper_triangular();
  auto adj = adjoint(ut);
  // diag(s)^-1 is an O-operator exactly when s3 = s1 + s2.
  std::vector<ModuleMap> ops;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {-1, 2}, {1, 2}, {2, 4}, {3, -1}, {-2, -2}})
    ops.push_back(inverse(fixtures::diagonal({a, b, a + b})));
  int yes = 0, no = 0;
  for (const auto& t1 : ops)
    for (const auto& t2 : ops) {
      bool sum = bool(verify_O(t1 + t2, ut, adj));
      EXPECT_EQ(bool(compatible_O(t1, t2, ut, adj)), sum);
      (sum ? yes : no)++;
    }
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(CompatibleNijenhuis, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto n = fixtures::dual_shift();
  EXPECT_TRUE(compatible_nijenhuis(n, ModuleMap::identity(2), f1));
  EXPECT_TRUE(compatible_nijenhuis(n, compose(n, n), f1));
  EXPECT_TRUE(compatible_nijenhuis(n, n, f1));
  EXPECT_EQ(code_of([&] { compatible_nijenhuis(n, fixtures::swap_mutant(), f1); }), ErrorCode::NotNijenhuis);
}

TEST(CompatibleNijenhuis, EquivalentToSumBeingNijenhuis) {
  for (const auto& alg : {fixtures::dual_numbers(), fixtures::nilpotent_pair()}) {
    std::vector<ModuleMap> nij;
    for (const auto& t : samples::small_maps())
      if (verify_nijenhuis(t, alg)) nij.push_back(t);
    for (std::size_t i = 0; i < nij.size(); i += 3)
      for (std::size_t j = 0; j < nij.size(); j += 5)
        EXPECT_EQ(bool(compatible_nijenhuis(nij[i], nij[j], alg)), bool(verify_nijenhuis(nij[i] + nij[j], alg)));
  }
}

TEST(Lift, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto s = semidirect(f1, adj);
  auto lt = lift(fixtures::dual_shift(), f1, adj);
  EXPECT_TRUE(compose(lt, lt).is_zero());
  EXPECT_TRUE(verify_operator(op::RotaBaxter{Poly(0)}, lt, s));
  EXPECT_TRUE(lift(ModuleMap(2, 2), f1, adj).is_zero());
  EXPECT_FALSE(verify_operator(op::RotaBaxter{Poly(0)}, lift(ModuleMap::identity(2), f1, adj), s));
}

TEST(Lift, GraphAndLiftCharacterizeOOperators) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto s = semidirect(f1, adj);
  Random rng(17);
  int o = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    auto t = samples::dual_map(rng, k);
    bool is_o = bool(verify_O(t, f1, adj));
    o += is_o;
    EXPECT_EQ(bool(graph_check(t, f1, adj)), is_o);
    EXPECT_EQ(bool(verify_operator(op::RotaBaxter{Poly(0)}, lift(t, f1, adj), s)), is_o);
  }
  EXPECT_GE(o, 10);
  EXPECT_LT(o, 20);
}

TEST(Graph, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  EXPECT_TRUE(graph_check(fixtures::dual_shift(), f1, adj));
  auto phi = fixtures::negated_product(f1);
  EXPECT_TRUE(graph_check(ModuleMap::identity(2), f1, adj, &phi));
  auto bad = fixtures::swap_mutant();
  auto g = graph_check(bad, f1, adj);
  auto o = verify_O(bad, f1, adj);
  ASSERT_FALSE(g);
  ASSERT_EQ(g.witnesses.size(), o.witnesses.size());
  for (std::size_t i = 0; i < g.witnesses.size(); ++i) EXPECT_EQ(g.witnesses[i].tuple, o.witnesses[i].tuple);
}

TEST(ReynoldsFromDerivation, Examples) {
  auto f6 = fixtures::nilpotent_pair();
  auto r = reynolds_from_derivation(fixtures::nilpotent_derivation(), f6, 4);
  EXPECT_EQ(r, fixtures::nilpotent_reynolds());
  EXPECT_TRUE(verify_operator(op::Reynolds{}, r, f6));

  auto flat = ConfAlgebra::zero(FreeModule({"a", "b"}));
  auto id = reynolds_from_derivation(ModuleMap(2, 2), flat, 1);
  EXPECT_EQ(id, ModuleMap::identity(2));
  EXPECT_TRUE(verify_operator(op::Reynolds{}, id, flat));

  // a -> a, b -> 2b is a derivation of a·a = b that is not nilpotent.
  auto grading = fixtures::diagonal({1, 2});
  ASSERT_TRUE(verify_operator(op::Derivation{}, grading, f6));
  EXPECT_EQ(code_of([&] { reynolds_from_derivation(grading, f6, 6); }), ErrorCode::NotNilpotentWithinBound);
  EXPECT_EQ(code_of([&] { reynolds_from_derivation(ModuleMap::from_rows({{0, 0}, {1, 1}}, 2), f6, 6); }),
            ErrorCode::NotDerivation);
}

TEST(NijenhuisFromOPair, Examples) {
  auto ut = fixtures::upper_triangular();
  auto adj = adjoint(ut);
  auto t = inverse(fixtures::diagonal({1, 1, 2}));
  EXPECT_EQ(nijenhuis_from_O_pair(t, t, ut, adj), ModuleMap::identity(3));
  EXPECT_EQ(nijenhuis_from_O_pair(Scalar(2) * t, t, ut, adj), Scalar(2) * ModuleMap::identity(3));
  auto f1 = fixtures::dual_numbers();
  auto shift = fixtures::dual_shift();
  EXPECT_EQ(code_of([&] { nijenhuis_from_O_pair(shift, shift, f1, adjoint(f1)); }), ErrorCode::NotInvertible);
  EXPECT_EQ(code_of([&] { nijenhuis_from_O_pair(ModuleMap::identity(3), t, ut, adj); }), ErrorCode::NotOOperator);
}

TEST(NijenhuisFromOPair, NijenhuisIffCompatible) {
  auto ut = fixtures::upper_triangular();
  auto adj = adjoint(ut);
  std::vector<ModuleMap> ops;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {-1, 2}, {1, 2}, {2, 4}, {3, -1}})
    ops.push_back(inverse(fixtures::diagonal({a, b, a + b})));
  int yes = 0, no = 0;
  for (const auto& t1 : ops)
    for (const auto& t2 : ops) {
      bool nij = bool(verify_nijenhuis(nijenhuis_from_O_pair(t1, t2, ut, adj), ut));
      EXPECT_EQ(nij, bool(compatible_O(t1, t2, ut, adj)));
      (nij ? yes : no)++;
    }
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(DerivationComposites, ZeroDerivation) {
  auto f1 = fixtures::dual_numbers();
  auto c = derivation_composites(fixtures::dual_shift(), ModuleMap(2, 2), f1, adjoint(f1));
  EXPECT_TRUE(c.nijenhuis);
  EXPECT_TRUE(c.o_operator);
}

TEST(DerivationComposites, Preconditions) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto t = fixtures::dual_shift();
  // The shift itself is not a derivation of the dual numbers.
  EXPECT_EQ(code_of([&] { derivation_composites(t, t, f1, adj); }), ErrorCode::PreconditionFailed);
  EXPECT_EQ(code_of([&] { derivation_composites(ModuleMap::identity(2), ModuleMap(2, 2), f1, adj); }),
            ErrorCode::PreconditionFailed);
  // v -> v is a derivation; whenever the induced-product condition holds both composites must pass.
  auto omega = fixtures::diagonal({0, 1});
  ASSERT_TRUE(verify_operator(op::Derivation{}, omega, f1, &adj));
  for (long k : {1L, -2L, 3L}) {
    try {
      auto c = derivation_composites(Scalar(k) * t, omega, f1, adj);
      EXPECT_TRUE(c.nijenhuis);
      EXPECT_TRUE(c.o_operator);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
    }
  }
}

TEST(DerivationComposites, NilpotentCase) {
  // On a·a = b with T = id - d (not O) nothing holds; with T = d and Ω = d the composites are d² = 0.
  auto f6 = fixtures::nilpotent_pair();
  auto adj = adjoint(f6);
  auto d = fixtures::nilpotent_derivation();
  ASSERT_TRUE(verify_O(d, f6, adj));
  auto c = derivation_composites(d, d, f6, adj);
  EXPECT_TRUE(c.nijenhuis);
  EXPECT_TRUE(c.o_operator);
}

// Idempotency classes tie Nijenhuis operators to Rota-Baxter weights.
TEST(Operators, IdempotencyClasses) {
  int seen[3] = {0, 0, 0};
  for (const auto& alg : {fixtures::dual_numbers(), fixtures::nilpotent_pair()}) {
    const auto id = ModuleMap::identity(2);
    for (const auto& n : samples::small_maps()) {
      auto sq = compose(n, n);
      bool nij = bool(verify_nijenhuis(n, alg));
      if (sq.is_zero()) {
        ++seen[0];
        EXPECT_EQ(nij, bool(verify_operator(op::RotaBaxter{Poly(0)}, n, alg)));
      }
      if (sq == n) {
        ++seen[1];
        EXPECT_EQ(nij, bool(verify_operator(op::RotaBaxter{Poly(-1)}, n, alg)));
      }
      if (sq == id) {
        ++seen[2];
        EXPECT_EQ(nij, bool(verify_operator(op::RotaBaxter{Poly(-2)}, n + id, alg)));
        EXPECT_EQ(nij, bool(verify_operator(op::RotaBaxter{Poly(2)}, n - id, alg)));
      }
    }
  }
  for (int s : seen) EXPECT_GT(s, 0);
}

TEST(OLie, OOperatorsPassOnTheCommutator) {
  auto check = [](const ConfAlgebra& alg, const ModuleMap& t) {
    auto adj = adjoint(alg);
    ASSERT_TRUE(verify_O(t, alg, adj));
    auto rho = rep_from_bimodule(alg, adj);
    EXPECT_TRUE(verify_operator(op::OLie{rho}, t, commutator_lie(alg)));
  };
  auto f1 = fixtures::dual_numbers();
  check(f1, fixtures::dual_shift());
  Random rng(8);
  for (int k = 0; k < 6; k += 2) check(f1, samples::dual_map(rng, k));
  auto ut = fixtures::upper_triangular();
  check(ut, inverse(fixtures::diagonal({1, 1, 2})));
  check(ut, inverse(fixtures::diagonal({-1, 2, 1})));
  auto s = semidirect(f1, adjoint(f1));
  check(s, lift(fixtures::dual_shift(), f1, adjoint(f1)));
}

TEST(OLie, CommutativeTwist) {
  // id is twisted Rota-Baxter for φ = -mult; with φ commutative its Lie-side twist vanishes.
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto phi = fixtures::negated_product(f1);
  ASSERT_TRUE(is_commutative_cocycle(phi, f1, adj));
  EXPECT_TRUE(verify_operator(op::OLie{rep_from_bimodule(f1, adj)}, ModuleMap::identity(2), commutator_lie(f1)));
}

TEST(Projections, LinearCombinationsAreNijenhuis) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto t = fixtures::dual_shift();
  auto zero2 = ConfAlgebra::zero(FreeModule({"u'", "v'"}));
  MatchingActions semi{adj.left(), adj.right(), Table({2, 2}, 2), Table({2, 2}, 2)};
  MatchingActions induced_pair{adj.left(), adj.right(), induced::left_on_algebra(t, f1.product(), adj.right()),
                               induced::right_on_algebra(t, f1.product(), adj.left())};
  ConfAlgebra mstar(FreeModule({"u'", "v'"}), induced::star(t, adj.left(), adj.right()));
  for (const auto& mp : {matching_pair(f1, zero2, semi), matching_pair(f1, mstar, induced_pair)}) {
    ASSERT_TRUE(check_associative(mp));
    auto p1 = projection(2, 2, true), p2 = projection(2, 2, false);
    for (long k1 : {0L, 1L, -2L})
      for (long k2 : {0L, 1L, 3L}) EXPECT_TRUE(verify_nijenhuis(Scalar(k1) * p1 + Scalar(k2) * p2, mp));
  }
}
