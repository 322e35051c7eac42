#pragma once

#include "confalg/algebra.hpp"
#include "confalg/cochain.hpp"
#include "confalg/modmap.hpp"
#include "confalg/table.hpp"

namespace confalg {

// (a,m)∘(b,n) = (a_λ b, a_λ n + m_λ b + φ_λ(a,b))
inline ConfAlgebra twisted_extension(const ConfAlgebra& alg, const ConfBimodule& bim, const Cochain& phi,
                                     Validation v = Validation::checked) {
  if (phi.arity() != 2 || phi.in_rank() != alg.rank() || phi.out_rank() != bim.rank())
    throw Error(ErrorCode::ShapeMismatch, "twist must be a 2-cochain from the algebra into the module");
  if (v == Validation::checked && !is_cocycle(phi, alg, bim)) throw Error(ErrorCode::NotCocycle, "twist is not closed");
  auto base = semidirect(alg, bim, v);
  const auto ra = alg.rank(), rm = bim.rank();
  Table t = base.product();
  for_each_tuple({ra, ra}, [&](const Tuple& idx) { t.at(idx) += phi.at(idx).embed(ra + rm, ra); });
  return ConfAlgebra(base.module(), std::move(t));
}

struct ExtensionIso {
  ModuleMap forward;   // (a, m) -> (a, m - h(a))
  ModuleMap backward;  // (a, m) -> (a, m + h(a))
  Verdict verdict;
};

// Checks that (a,m) -> (a, m - h(a)) carries the φ-twisted product to the
// (φ + dh)-twisted one.
inline ExtensionIso extension_iso(const ConfAlgebra& alg, const ConfBimodule& bim, const Cochain& phi,
                                  const ModuleMap& h, const CheckOptions& opt = {}) {
  if (h.source_rank() != alg.rank() || h.target_rank() != bim.rank())
    throw Error(ErrorCode::ShapeMismatch, "h must map the algebra into the module");
  const auto ra = alg.rank(), rm = bim.rank(), r = ra + rm;
  auto from = twisted_extension(alg, bim, phi);
  auto to = twisted_extension(alg, bim, phi + hochschild_d(Cochain::from_map(h), alg, bim));

  auto shift = [&](int sign) {
    std::vector<ModElem> cols;
    for (std::size_t s = 0; s < r; ++s) {
      auto c = basis_of(r, s);
      if (s < ra) c += Poly(static_cast<long>(sign)) * h.column(s).embed(r, ra);
      cols.push_back(c);
    }
    return ModuleMap(r, std::move(cols));
  };
  ExtensionIso out{shift(-1), shift(1), Verdict("extension isomorphism")};
  for_each_tuple({r, r}, [&](const Tuple& t) {
    auto x = basis_of(r, t[0]), y = basis_of(r, t[1]);
    auto lhs = out.forward(from.mul(x, y, lam(1)));
    auto rhs = to.mul(out.forward(x), out.forward(y), lam(1));
    out.verdict.record(t, lhs - rhs, opt);
  });
  return out;
}

}  // namespace confalg
