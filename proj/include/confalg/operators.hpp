#pragma once

// Operator identities on conformal algebras: O-operators, Rota-Baxter,
// twisted Rota-Baxter, Nijenhuis, Reynolds, derivations and the Lie-side
// O-operator, plus compatibility checks and constructions built from them.

#include <optional>
#include <string>
#include <variant>

#include "confalg/confcore.hpp"

namespace confalg {

namespace op {
struct O {};
struct RotaBaxter {
  Poly weight;
};
struct TwistedRB {
  Cochain phi;
};
struct Nijenhuis {};
struct NijenhuisLie {};
struct Reynolds {};
struct Derivation {};
struct OLie {
  LieRep rep;
};
}  // namespace op

using OperatorKind =
    std::variant<op::O, op::RotaBaxter, op::TwistedRB, op::Nijenhuis, op::NijenhuisLie, op::Reynolds, op::Derivation, op::OLie>;

namespace detail {

inline ModElem at_l1(const Table& t, const ModElem& a, const ModElem& b) { return eval2(t, a, b, lam(1)); }

inline void require_map(const ModuleMap& f, std::size_t src, std::size_t tgt, const char* what) {
  if (f.source_rank() != src || f.target_rank() != tgt)
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": map is " + std::to_string(f.source_rank()) + " -> " +
                                              std::to_string(f.target_rank()) + ", expected " + std::to_string(src) +
                                              " -> " + std::to_string(tgt));
}

// N(a)b + aN(b) - N(ab) on arbitrary elements.
inline ModElem deformed(const Table& p, const ModuleMap& n, const ModElem& a, const ModElem& b) {
  return at_l1(p, n(a), b) + at_l1(p, a, n(b)) - n(at_l1(p, a, b));
}

template <class F>
Verdict over_pairs(std::string name, std::size_t r, const CheckOptions& opt, F&& residual) {
  Verdict v(std::move(name));
  for_each_tuple({r, r}, [&](const Tuple& t) { v.record(t, residual(basis_of(r, t[0]), basis_of(r, t[1])), opt); });
  return v;
}

}  // namespace detail

// T(m)T(n) - T(T(m)n + mT(n) + φ(Tm,Tn)) with the φ-term optional.
inline Verdict verify_o_tables(const ModuleMap& t, const Table& product, const Table& left, const Table& right,
                               const Cochain* phi, const CheckOptions& opt, std::string name) {
  using detail::at_l1;
  return detail::over_pairs(std::move(name), t.source_rank(), opt, [&](const ModElem& m, const ModElem& n) {
    auto tm = t(m), tn = t(n);
    auto inner = at_l1(left, tm, n) + at_l1(right, m, tn);
    if (phi) inner += at_l1(phi->table(), tm, tn);
    return at_l1(product, tm, tn) - t(inner);
  });
}

inline Verdict verify_operator(const OperatorKind& kind, const ModuleMap& t, const ConfAlgebra& alg,
                               const ConfBimodule* bim = nullptr, const CheckOptions& opt = {}) {
  using detail::at_l1;
  const auto ra = alg.rank();
  const auto& p = alg.product();
  const ConfBimodule adj = bim ? ConfBimodule() : adjoint(alg);
  const ConfBimodule& b = bim ? *bim : adj;
  if (b.algebra_rank() != ra) throw Error(ErrorCode::RankMismatch, "bimodule is over a different algebra");

  return std::visit(
      [&](const auto& k) -> Verdict {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, op::O>) {
          detail::require_map(t, b.rank(), ra, "O-operator");
          return verify_o_tables(t, p, b.left(), b.right(), nullptr, opt, "O-operator");
        } else if constexpr (std::is_same_v<K, op::TwistedRB>) {
          detail::require_map(t, b.rank(), ra, "twisted Rota-Baxter operator");
          if (k.phi.arity() != 2 || k.phi.in_rank() != ra || k.phi.out_rank() != b.rank())
            throw Error(ErrorCode::ShapeMismatch, "twist must be a 2-cochain from the algebra into the module");
          if (!is_cocycle(k.phi, alg, b)) throw Error(ErrorCode::NotCocycle, "twist is not closed");
          return verify_o_tables(t, p, b.left(), b.right(), &k.phi, opt, "twisted Rota-Baxter");
        } else if constexpr (std::is_same_v<K, op::RotaBaxter>) {
          detail::require_map(t, ra, ra, "Rota-Baxter operator");
          return detail::over_pairs("Rota-Baxter(" + k.weight.to_string() + ")", ra, opt,
                                    [&](const ModElem& x, const ModElem& y) {
                                      auto tx = t(x), ty = t(y);
                                      return at_l1(p, tx, ty) -
                                             t(at_l1(p, tx, y) + at_l1(p, x, ty) + k.weight * at_l1(p, x, y));
                                    });
        } else if constexpr (std::is_same_v<K, op::Nijenhuis> || std::is_same_v<K, op::NijenhuisLie>) {
          detail::require_map(t, ra, ra, "Nijenhuis operator");
          if (std::is_same_v<K, op::NijenhuisLie> != (alg.flavor() == Flavor::lie))
            throw Error(ErrorCode::ShapeMismatch, "Nijenhuis kind does not match the algebra flavor");
          return detail::over_pairs(std::is_same_v<K, op::Nijenhuis> ? "Nijenhuis" : "Nijenhuis (Lie)", ra, opt,
                                    [&](const ModElem& x, const ModElem& y) {
                                      return at_l1(p, t(x), t(y)) - t(detail::deformed(p, t, x, y));
                                    });
        } else if constexpr (std::is_same_v<K, op::Reynolds>) {
          detail::require_map(t, ra, ra, "Reynolds operator");
          return detail::over_pairs("Reynolds", ra, opt, [&](const ModElem& x, const ModElem& y) {
            auto tx = t(x), ty = t(y);
            auto both = at_l1(p, tx, ty);
            return both - t(at_l1(p, tx, y) + at_l1(p, x, ty) - both);
          });
        } else if constexpr (std::is_same_v<K, op::Derivation>) {
          detail::require_map(t, ra, b.rank(), "derivation");
          return detail::over_pairs("derivation", ra, opt, [&](const ModElem& x, const ModElem& y) {
            return t(at_l1(p, x, y)) - at_l1(b.right(), t(x), y) - at_l1(b.left(), x, t(y));
          });
        } else {
          static_assert(std::is_same_v<K, op::OLie>);
          const auto& rho = k.rep.action();
          detail::require_map(t, k.rep.rank(), ra, "Lie O-operator");
          if (k.rep.lie_rank() != ra) throw Error(ErrorCode::RankMismatch, "representation is of another algebra");
          return detail::over_pairs("O-operator (Lie)", t.source_rank(), opt, [&](const ModElem& u, const ModElem& v) {
            auto tu = t(u), tv = t(v);
            return at_l1(p, tu, tv) - t(at_l1(rho, tu, v) - eval2(rho, tv, u, flipped()));
          });
        }
      },
      kind);
}

inline Verdict verify_O(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim, const CheckOptions& opt = {}) {
  return verify_operator(op::O{}, t, alg, &bim, opt);
}
inline Verdict verify_nijenhuis(const ModuleMap& n, const ConfAlgebra& alg, const CheckOptions& opt = {}) {
  if (alg.flavor() == Flavor::lie) return verify_operator(op::NijenhuisLie{}, n, alg, nullptr, opt);
  return verify_operator(op::Nijenhuis{}, n, alg, nullptr, opt);
}

// T1(m)T2(n) + T2(m)T1(n) = T1(T2(m)n + mT2(n)) + T2(T1(m)n + mT1(n))
inline Verdict compatible_O(const ModuleMap& t1, const ModuleMap& t2, const ConfAlgebra& alg, const ConfBimodule& bim,
                            const CheckOptions& opt = {}) {
  using detail::at_l1;
  if (!verify_O(t1, alg, bim)) throw Error(ErrorCode::NotOOperator, "first map is not an O-operator");
  if (!verify_O(t2, alg, bim)) throw Error(ErrorCode::NotOOperator, "second map is not an O-operator");
  const auto& p = alg.product();
  auto inner = [&](const ModuleMap& t, const ModElem& m, const ModElem& n) {
    return at_l1(bim.left(), t(m), n) + at_l1(bim.right(), m, t(n));
  };
  return detail::over_pairs("compatible O-operators", bim.rank(), opt, [&](const ModElem& m, const ModElem& n) {
    return at_l1(p, t1(m), t2(n)) + at_l1(p, t2(m), t1(n)) - t1(inner(t2, m, n)) - t2(inner(t1, m, n));
  });
}

// N1(a)N2(b) + N2(a)N1(b) = N1(a ∘^{N2} b) + N2(a ∘^{N1} b)
inline Verdict compatible_nijenhuis(const ModuleMap& n1, const ModuleMap& n2, const ConfAlgebra& alg,
                                    const CheckOptions& opt = {}) {
  using detail::at_l1;
  if (!verify_nijenhuis(n1, alg)) throw Error(ErrorCode::NotNijenhuis, "first map is not Nijenhuis");
  if (!verify_nijenhuis(n2, alg)) throw Error(ErrorCode::NotNijenhuis, "second map is not Nijenhuis");
  const auto& p = alg.product();
  return detail::over_pairs("compatible Nijenhuis operators", alg.rank(), opt, [&](const ModElem& a, const ModElem& b) {
    return at_l1(p, n1(a), n2(b)) + at_l1(p, n2(a), n1(b)) - n1(detail::deformed(p, n2, a, b)) -
           n2(detail::deformed(p, n1, a, b));
  });
}

// T̂(a, m) = (T(m), 0) on A ⊕ M.
inline ModuleMap lift(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim) {
  detail::require_map(t, bim.rank(), alg.rank(), "lift");
  const auto ra = alg.rank(), r = ra + bim.rank();
  std::vector<ModElem> cols;
  for (std::size_t s = 0; s < r; ++s) cols.push_back(s < ra ? ModElem(r) : t.column(s - ra).embed(r, 0));
  return ModuleMap(r, std::move(cols));
}

// Closure of {(T(m), m)} under the (twisted) semidirect product.
inline Verdict graph_check(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim, const Cochain* phi = nullptr,
                           const CheckOptions& opt = {}) {
  detail::require_map(t, bim.rank(), alg.rank(), "graph");
  auto ext = phi ? twisted_extension(alg, bim, *phi) : semidirect(alg, bim);
  const auto ra = alg.rank(), rm = bim.rank(), r = ra + rm;
  auto graph = [&](const ModElem& m) { return t(m).embed(r, 0) + m.embed(r, ra); };
  return detail::over_pairs("graph subalgebra", rm, opt, [&](const ModElem& m, const ModElem& n) {
    auto z = ext.mul(graph(m), graph(n), lam(1));
    return z.slice(0, ra) - t(z.slice(ra, rm));
  });
}

// R = Σ_{n<k} (-1)^n d^n for a derivation d with d^k = 0, k <= bound.
inline ModuleMap reynolds_from_derivation(const ModuleMap& d, const ConfAlgebra& alg, unsigned bound) {
  if (!verify_operator(op::Derivation{}, d, alg)) throw Error(ErrorCode::NotDerivation, "map is not a derivation");
  const auto n = alg.rank();
  auto r = ModuleMap(n, n);
  auto dk = ModuleMap::identity(n);
  for (unsigned k = 0; k <= bound; ++k) {
    if (dk.is_zero()) return r;
    r = k % 2 ? r - dk : r + dk;
    dk = compose(d, dk);
  }
  throw Error(ErrorCode::NotNilpotentWithinBound, "d^k is nonzero for k <= " + std::to_string(bound));
}

// N = T1 ∘ T2⁻¹ for O-operators T1, T2 with T2 invertible over C[D].
inline ModuleMap nijenhuis_from_O_pair(const ModuleMap& t1, const ModuleMap& t2, const ConfAlgebra& alg,
                                       const ConfBimodule& bim) {
  if (!verify_O(t1, alg, bim)) throw Error(ErrorCode::NotOOperator, "first map is not an O-operator");
  if (!verify_O(t2, alg, bim)) throw Error(ErrorCode::NotOOperator, "second map is not an O-operator");
  return compose(t1, inverse(t2));
}

// Raw tables of the products an O-operator (optionally twisted) induces.
namespace induced {

// m ⋆ n = T(m)n + mT(n) + φ(Tm, Tn)
inline Table star(const ModuleMap& t, const Table& left, const Table& right, const Cochain* phi = nullptr) {
  using detail::at_l1;
  const auto rm = t.source_rank();
  return Table::build({rm, rm}, rm, [&](const Tuple& idx) {
    auto m = basis_of(rm, idx[0]), n = basis_of(rm, idx[1]);
    auto v = at_l1(left, t(m), n) + at_l1(right, m, t(n));
    if (phi) v += at_l1(phi->table(), t(m), t(n));
    return v;
  });
}

// m · a = T(m)a - T(ma + φ(Tm, a)) : M x A -> A
inline Table left_on_algebra(const ModuleMap& t, const Table& product, const Table& right, const Cochain* phi = nullptr) {
  using detail::at_l1;
  const auto rm = t.source_rank(), ra = t.target_rank();
  return Table::build({rm, ra}, ra, [&](const Tuple& idx) {
    auto m = basis_of(rm, idx[0]), a = basis_of(ra, idx[1]);
    auto inner = at_l1(right, m, a);
    if (phi) inner += at_l1(phi->table(), t(m), a);
    return at_l1(product, t(m), a) - t(inner);
  });
}

// a · m = aT(m) - T(am + φ(a, Tm)) : A x M -> A
inline Table right_on_algebra(const ModuleMap& t, const Table& product, const Table& left, const Cochain* phi = nullptr) {
  using detail::at_l1;
  const auto rm = t.source_rank(), ra = t.target_rank();
  return Table::build({ra, rm}, ra, [&](const Tuple& idx) {
    auto a = basis_of(ra, idx[0]), m = basis_of(rm, idx[1]);
    auto inner = at_l1(left, a, m);
    if (phi) inner += at_l1(phi->table(), a, t(m));
    return at_l1(product, a, t(m)) - t(inner);
  });
}

}  // namespace induced

struct CompositeVerdicts {
  Verdict nijenhuis;  // TΩ on the algebra
  Verdict o_operator; // TΩT for the bimodule
};

// For an O-operator T: M -> A and a derivation Ω: A -> M with
// Ω(a)⋆Ω(b) = Ω(Ω(a)·b + a·Ω(b)), TΩ is Nijenhuis and TΩT is an O-operator.
inline CompositeVerdicts derivation_composites(const ModuleMap& t, const ModuleMap& omega, const ConfAlgebra& alg,
                                               const ConfBimodule& bim, const CheckOptions& opt = {}) {
  using detail::at_l1;
  detail::require_map(omega, alg.rank(), bim.rank(), "derivation into the bimodule");
  if (!verify_O(t, alg, bim)) throw Error(ErrorCode::PreconditionFailed, "O-operator identity fails for T");
  if (!verify_operator(op::Derivation{}, omega, alg, &bim))
    throw Error(ErrorCode::PreconditionFailed, "derivation identity fails for the second map");
  auto star = induced::star(t, bim.left(), bim.right());
  auto m_on_a = induced::left_on_algebra(t, alg.product(), bim.right());
  auto a_by_m = induced::right_on_algebra(t, alg.product(), bim.left());
  auto pre = detail::over_pairs("O-operator into the induced product", alg.rank(), opt,
                                [&](const ModElem& a, const ModElem& b) {
                                  return at_l1(star, omega(a), omega(b)) -
                                         omega(at_l1(m_on_a, omega(a), b) + at_l1(a_by_m, a, omega(b)));
                                });
  if (!pre) throw Error(ErrorCode::PreconditionFailed, "Ω(a)⋆Ω(b) = Ω(Ω(a)·b + a·Ω(b)) fails");
  auto t_omega = compose(t, omega);
  return {verify_operator(op::Nijenhuis{}, t_omega, alg, nullptr, opt), verify_O(compose(t_omega, t), alg, bim, opt)};
}

}  // namespace confalg
