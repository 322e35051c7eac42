#include <gtest/gtest.h>

#include "confalg/cohomology.hpp"
#include "confalg/fixtures.hpp"
#include "oracle.hpp"
#include "samples.hpp"

using namespace confalg;

namespace {

const Poly D = Poly::d();
const Poly L1 = Poly::lambda(1);

bool odd(std::size_t k) { return k % 2 != 0; }
Cochain signed_(bool negative, Cochain c) { return negative ? Poly(-1) * std::move(c) : c; }

RandomSpec small() { return RandomSpec{1, 2, 0.5}; }

std::vector<ConfAlgebra> bases() {
  return {fixtures::dual_numbers(), fixtures::nilpotent_pair(), fixtures::upper_triangular()};
}

}  // namespace

TEST(Cochains, LambdaCocycleEvaluation) {
  auto phi = fixtures::lambda_cocycle();
  auto a = ModElem::basis(2, 0), b = ModElem::basis(2, 1);
  EXPECT_EQ(eval_cochain(phi, {a, a}, {L1}), L1 * b);
  // D in the first slot becomes -λ.
  EXPECT_EQ(eval_cochain(phi, {D * a, a}, {L1}), Poly(-1) * L1.pow(2) * b);
  EXPECT_EQ(eval_cochain(phi, {a, D * a}, {L1}), (D + L1) * L1 * b);
  EXPECT_TRUE(eval_cochain(phi, {a, b}, {L1}).is_zero());
}

TEST(Cochains, DifferentialExamples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  EXPECT_TRUE(hochschild_d(Cochain(2, 2, 2), f1, adj).is_zero());
  EXPECT_TRUE(is_cocycle(fixtures::negated_product(f1), f1, adj));
  EXPECT_TRUE(is_commutative_cocycle(fixtures::negated_product(f1), f1, adj));
  auto f6 = fixtures::nilpotent_pair();
  auto phi = fixtures::lambda_cocycle();
  EXPECT_TRUE(is_cocycle(phi, f6, adjoint(f6)));
  EXPECT_FALSE(is_commutative_cocycle(phi, f6, adjoint(f6)));
  // d of the identity on A is the product.
  EXPECT_EQ(hochschild_d(Cochain::from_map(ModuleMap::identity(2)), f1, adj).table(), f1.product());
  EXPECT_THROW(hochschild_d(Cochain(1, 3, 2), f1, adj), Error);
}

TEST(Cochains, DifferentialSquaresToZero) {
  Random rng(5, small());
  for (const auto& alg : samples::associative_bases()) {
    auto adj = adjoint(alg);
    for (std::size_t n : {1u, 2u}) {
      auto f = rng.cochain(n, alg.rank(), alg.rank());
      EXPECT_TRUE(hochschild_d(hochschild_d(f, alg, adj), alg, adj).is_zero()) << "arity " << n;
    }
  }
}

TEST(Cochains, DifferentialSquaresToZeroOnTransportedAlgebras) {
  Random rng(6, small());
  for (std::size_t k = 0; k < 8; k += 2) {
    auto bases = samples::associative_bases();
    const auto& base = bases[(k / 2) % bases.size()];
    ConfAlgebra alg(base.module(), samples::transport(base.product(), samples::random_unimodular(rng, base.rank())));
    ASSERT_TRUE(check_associative(alg));
    auto f = rng.cochain(2, alg.rank(), alg.rank());
    EXPECT_TRUE(hochschild_d(hochschild_d(f, alg, adjoint(alg)), alg, adjoint(alg)).is_zero());
  }
}

TEST(Gerstenhaber, ProductSquaresToZeroExactlyWhenAssociative) {
  for (const auto& alg : samples::associative_bases()) {
    auto theta = Cochain(alg.product());
    EXPECT_TRUE(g_bracket(theta, theta).is_zero());
  }
  auto f1 = fixtures::dual_numbers();
  auto bad = f1.product();
  bad.at({0, 1})[0] += Poly(1);  // uv = u + v, so (uv)v != u(vv)
  ASSERT_FALSE(check_associative_table(bad));
  EXPECT_FALSE(g_bracket(Cochain(bad), Cochain(bad)).is_zero());
}

TEST(Gerstenhaber, BracketWithProductIsTheDifferential) {
  Random rng(7, small());
  for (const auto& alg : samples::associative_bases()) {
    auto theta = Cochain(alg.product());
    for (std::size_t n : {1u, 2u}) {
      auto f = rng.cochain(n, alg.rank(), alg.rank());
      EXPECT_EQ(g_bracket(theta, f), signed_(odd(n - 1), hochschild_d(f, alg, adjoint(alg)))) << "arity " << n;
    }
  }
}

TEST(Gerstenhaber, GradedSymmetry) {
  Random rng(8, small());
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
    auto f = rng.cochain(m, 2, 2), g = rng.cochain(n, 2, 2);
    EXPECT_EQ(g_bracket(f, g), signed_(!odd((m - 1) * (n - 1)), g_bracket(g, f))) << m << "," << n;
  }
}

// [f,[g,h]] = [[f,g],h] + (-1)^{|f||g|}[g,[f,h]] with |f| = arity - 1.
TEST(Gerstenhaber, GradedJacobi) {
  Random rng(9, small());
  for (int k = 0; k < 12; ++k) {
    static constexpr std::array<std::array<std::size_t, 3>, 4> shapes{{{1, 1, 2}, {1, 2, 2}, {2, 1, 1}, {2, 2, 1}}};
    auto [a, b, c] = shapes[k < 10 ? k % 2 : k - 8];
    auto f = rng.cochain(a, 2, 2), g = rng.cochain(b, 2, 2), h = rng.cochain(c, 2, 2);
    auto lhs = g_bracket(f, g_bracket(g, h));
    auto rhs = g_bracket(g_bracket(f, g), h) + signed_(odd((a - 1) * (b - 1)), g_bracket(g, g_bracket(f, h)));
    EXPECT_EQ(lhs, rhs) << a << b << c;
  }
}

TEST(Lifts, RoundTripAndAbelian) {
  Random rng(10, small());
  for (std::size_t m : {1u, 2u}) {
    auto f = rng.cochain(m, 2, 2);
    auto fh = lift_cochain(f, 2);
    EXPECT_TRUE(is_lift(fh, 2));
    EXPECT_EQ(unlift(fh, 2), f);
    for (std::size_t n : {1u, 2u}) {
      auto gh = lift_cochain(rng.cochain(n, 2, 2), 2);
      EXPECT_TRUE(g_bracket(fh, gh).is_zero());
    }
  }
  EXPECT_FALSE(is_lift(Cochain::from_map(ModuleMap::identity(4)), 2));
  EXPECT_EQ(Cochain::from_map(lift(fixtures::dual_shift(), fixtures::dual_numbers(), adjoint(fixtures::dual_numbers()))),
            lift_cochain(Cochain::from_map(fixtures::dual_shift()), 2));
}

TEST(DerivedBracket, LiftedAndDirectFormsAgree) {
  Random rng(11, small());
  for (const auto& alg : bases()) {
    auto adj = adjoint(alg);
    auto theta = theta_hat(alg, adj);
    const auto r = alg.rank();
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
      if (r == 3 && m + n > 3) continue;
      auto f = rng.cochain(m, r, r), g = rng.cochain(n, r, r);
      auto hat = derived_bracket_hat(theta, lift_cochain(f, r), lift_cochain(g, r));
      EXPECT_TRUE(is_lift(hat, r)) << m << "," << n;
      EXPECT_EQ(unlift(hat, r), derived_bracket_direct(f, g, alg, adj)) << m << "," << n;
    }
  }
}

// u -> v on the dual numbers: [[T,T']](u,u) = -(T(u)T'(u) + T'(u)T(u)) + T(T'(u)u + uT'(u)) + T'(T(u)u + uT(u)).
TEST(DerivedBracket, BinaryFormulaOnShift) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto t = Cochain::from_map(fixtures::dual_shift());
  auto tt = derived_bracket_direct(t, t, f1, adj);
  EXPECT_TRUE(tt.is_zero());
  auto id = Cochain::from_map(ModuleMap::identity(2));
  auto b = derived_bracket_direct(id, id, f1, adj);
  // -(uu + uu) + (uu + uu) + (uu + uu) = 2uu = 2u.
  EXPECT_EQ(b.at({0, 0}), ModElem::basis(2, 0, Poly(2)));
  EXPECT_EQ(b, Poly(2) * Cochain(f1.product()));
}

TEST(DerivedBracket, GradedSymmetryAndLeibniz) {
  Random rng(12, small());
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto br = [&](const Cochain& x, const Cochain& y) { return derived_bracket_direct(x, y, f1, adj); };
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 2}}) {
    auto f = rng.cochain(m, 2, 2), g = rng.cochain(n, 2, 2);
    EXPECT_EQ(br(f, g), signed_(!odd(m * n), br(g, f))) << m << "," << n;
  }
  for (auto [a, b, c] : std::vector<std::array<std::size_t, 3>>{{1, 1, 1}, {1, 2, 1}, {2, 1, 1}}) {
    auto f = rng.cochain(a, 2, 2), g = rng.cochain(b, 2, 2), h = rng.cochain(c, 2, 2);
    EXPECT_EQ(br(f, br(g, h)), br(br(f, g), h) + signed_(odd(a * b), br(g, br(f, h)))) << a << b << c;
  }
}

TEST(MaurerCartan, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto good = maurer_cartan_check(fixtures::dual_shift(), f1, adj);
  EXPECT_TRUE(good.is_o);
  EXPECT_TRUE(good.consistent());
  EXPECT_TRUE(good.bracket_associative);
  EXPECT_TRUE(good.bracket_components);
  auto zero = maurer_cartan_check(ModuleMap(2, 2), f1, adj);
  EXPECT_TRUE(zero.is_o && zero.consistent());
  auto bad = maurer_cartan_check(fixtures::swap_mutant(), f1, adj);
  EXPECT_FALSE(bad.is_o);
  EXPECT_TRUE(bad.consistent());
  EXPECT_FALSE(bad.operator_verdict.witnesses.empty());
}

TEST(MaurerCartan, ConsistentOnSamples) {
  Random rng(13);
  auto f1 = fixtures::dual_numbers();
  int o = 0;
  for (std::size_t k = 0; k < 12; ++k) {
    auto t = samples::dual_map(rng, k);
    auto r = maurer_cartan_check(t, f1, adjoint(f1));
    EXPECT_TRUE(r.consistent()) << k;
    o += r.is_o;
    if (r.is_o) {
      EXPECT_TRUE(r.bracket_associative && r.bracket_components);
    }
  }
  EXPECT_GT(o, 0);
  EXPECT_LT(o, 12);
  auto ut = fixtures::upper_triangular();
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}}) {
    auto t = inverse(fixtures::diagonal({a, b, a + b}));
    auto r = maurer_cartan_check(t, ut, adjoint(ut));
    EXPECT_TRUE(r.is_o && r.consistent());
    EXPECT_TRUE(r.bracket_associative && r.bracket_components);
    auto skew = maurer_cartan_check(t + ModuleMap::identity(3), ut, adjoint(ut));
    EXPECT_TRUE(skew.consistent());
  }
}

TEST(MaurerCartan, Perturbations) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  Random rng(14);
  for (std::size_t k = 0; k < 10; ++k) {
    auto tp = samples::dual_map(rng, k);
    for (const auto& t : {fixtures::dual_shift(), ModuleMap(2, 2)}) {
      auto r = mc_perturbation_check(t, tp, f1, adj);
      EXPECT_TRUE(r.consistent()) << k;
      EXPECT_TRUE(r.differential) << k;
    }
  }
  auto ut = fixtures::upper_triangular();
  auto t1 = inverse(fixtures::diagonal({1, 1, 2})), t2 = inverse(fixtures::diagonal({-1, 2, 1}));
  auto r = mc_perturbation_check(t1, t2 - t1, ut, adjoint(ut));
  EXPECT_TRUE(r.sum_is_o && r.consistent());
  auto s = mc_perturbation_check(t1, t2, ut, adjoint(ut));
  EXPECT_FALSE(s.sum_is_o);
  EXPECT_TRUE(s.consistent());
  EXPECT_THROW(mc_perturbation_check(ModuleMap::identity(2), ModuleMap(2, 2), f1, adj), Error);
}

TEST(MaurerCartan, BracketWithOperatorIsDifferential) {
  Random rng(15, small());
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  for (std::size_t n : {1u, 2u}) {
    auto f = rng.cochain(n, 2, 2);
    EXPECT_TRUE(bracket_is_differential(fixtures::dual_shift(), f, f1, adj)) << n;
    auto t = fixtures::dual_shift();
    EXPECT_TRUE(o_complex_d(o_complex_d(f, t, f1, adj), t, f1, adj).is_zero());
  }
}

TEST(ModifiedMaurerCartan, Examples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto phi = fixtures::negated_product(f1);
  auto r = modified_mc_check(ModuleMap::identity(2), phi, f1, adj);
  EXPECT_TRUE(r.twisted_rb);
  EXPECT_TRUE(r.modified_mc);
  EXPECT_TRUE(r.consistent());
  EXPECT_TRUE(r.cubic_identity);
  EXPECT_FALSE(r.opposite_sign_form);
  Cochain open(2, 2, 2);
  open.set({0, 0}, ModElem::basis(2, 0));
  EXPECT_THROW(modified_mc_check(ModuleMap::identity(2), open, f1, adj), Error);
}

TEST(ModifiedMaurerCartan, ConsistentOnSamples) {
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto phi = fixtures::negated_product(f1);
  int holds = 0;
  for (const auto& t : samples::small_maps()) {
    auto r = modified_mc_check(t, phi, f1, adj);
    EXPECT_TRUE(r.consistent());
    EXPECT_TRUE(r.cubic_identity);
    holds += r.twisted_rb;
  }
  EXPECT_GT(holds, 0);
  auto f6 = fixtures::nilpotent_pair();
  auto lc = fixtures::lambda_cocycle();
  for (const auto& t : samples::small_maps()) EXPECT_TRUE(modified_mc_check(t, lc, f6, adjoint(f6)).consistent());
}
