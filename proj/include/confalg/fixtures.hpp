#pragma once

// Small reference algebras, maps and cocycles used by tests, the CLI and
// the documentation.

#include "confalg/confcore.hpp"

namespace confalg::fixtures {

// Current algebra of the dual numbers: u u = u, u v = v u = v, v v = 0.
inline ConfAlgebra dual_numbers() {
  return cur(FreeModule({"u", "v"}), {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}});
}

// T(u) = v, T(v) = 0 on the dual numbers; an O-operator for the adjoint
// bimodule and a square-zero Nijenhuis operator.
inline ModuleMap dual_shift() { return ModuleMap::from_rows({{0, 0}, {1, 0}}, 2); }

// N(u) = v, N(v) = u: not Nijenhuis on the dual numbers and its deformed
// product is not associative.
inline ModuleMap swap_mutant() { return ModuleMap::from_rows({{0, 1}, {1, 0}}, 2); }

// N(u) = N(v) = v: not Nijenhuis, yet its deformed product is associative;
// only the second-order term of the trivial deformation fails.
inline ModuleMap shift_mutant() { return ModuleMap::from_rows({{0, 0}, {1, 1}}, 2); }

// Current algebra with a a = b and every other product zero.
inline ConfAlgebra nilpotent_pair() {
  return cur(FreeModule({"a", "b"}), {{{0, 1}, {0, 0}}, {{0, 0}, {0, 0}}});
}

// d(a) = b, d(b) = 0: a square-zero derivation of nilpotent_pair.
inline ModuleMap nilpotent_derivation() { return ModuleMap::from_rows({{0, 0}, {1, 0}}, 2); }

// R = id - d.
inline ModuleMap nilpotent_reynolds() { return ModuleMap::identity(2) - nilpotent_derivation(); }

// φ_λ(a,a) = λ b on nilpotent_pair with adjoint coefficients.
inline Cochain lambda_cocycle() {
  Cochain phi(2, 2, 2);
  phi.set({0, 0}, ModElem::basis(2, 1, Poly::lambda(1)));
  return phi;
}

// φ_λ(a,b) = -a_λ b.
inline Cochain negated_product(const ConfAlgebra& alg) {
  return Cochain(Poly(-1) * alg.product());
}

// Strictly upper triangular 3x3 matrices: x y = z, all else zero. Carries
// invertible O-operators whose sums need not be O-operators.
inline ConfAlgebra upper_triangular() {
  return cur(FreeModule({"x", "y", "z"}),
             {{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
}

inline ModuleMap diagonal(const std::vector<Scalar>& d) {
  std::vector<std::vector<Poly>> rows(d.size(), std::vector<Poly>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) rows[i][i] = Poly(d[i]);
  return ModuleMap::from_rows(rows, d.size());
}

}  // namespace confalg::fixtures
