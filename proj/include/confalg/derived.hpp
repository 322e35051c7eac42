#pragma once

// Structures induced by operators: dendriform, NS and left-symmetric
// products, the induced associative products and bimodules, deformed
// products and brackets, Nijenhuis hierarchies and trivial deformations.

#include <string>
#include <vector>

#include "confalg/operators.hpp"

namespace confalg {

enum class OpTag { succ, prec, vee, star, circ, bracket, leftsym };

inline std::string_view to_string(OpTag t) {
  switch (t) {
    case OpTag::succ: return "succ";
    case OpTag::prec: return "prec";
    case OpTag::vee: return "vee";
    case OpTag::star: return "star";
    case OpTag::circ: return "circ";
    case OpTag::bracket: return "bracket";
    case OpTag::leftsym: return "leftsym";
  }
  return "?";
}

struct BinaryOpTable {
  FreeModule module;
  Table table;
  OpTag tag = OpTag::star;
};

enum class BundleKind { dendriform, ns, leftsym, assoc };

inline std::string_view to_string(BundleKind k) {
  switch (k) {
    case BundleKind::dendriform: return "dendriform";
    case BundleKind::ns: return "ns";
    case BundleKind::leftsym: return "leftsym";
    case BundleKind::assoc: return "assoc";
  }
  return "?";
}

struct StructureBundle {
  BundleKind kind = BundleKind::assoc;
  FreeModule module;
  std::vector<BinaryOpTable> tables;

  const Table& get(OpTag tag) const {
    for (const auto& t : tables)
      if (t.tag == tag) return t.table;
    throw Error(ErrorCode::ShapeMismatch, "bundle has no " + std::string(to_string(tag)) + " table");
  }
  // ≻ + ≺ (+ ∨)
  Table sum() const {
    Table s = get(OpTag::succ) + get(OpTag::prec);
    if (kind == BundleKind::ns) s += get(OpTag::vee);
    return s;
  }
};

inline StructureBundle make_dendriform(FreeModule m, Table succ, Table prec) {
  return {BundleKind::dendriform, m, {{m, std::move(succ), OpTag::succ}, {m, std::move(prec), OpTag::prec}}};
}
inline StructureBundle make_ns(FreeModule m, Table succ, Table prec, Table vee) {
  return {BundleKind::ns, m,
          {{m, std::move(succ), OpTag::succ}, {m, std::move(prec), OpTag::prec}, {m, std::move(vee), OpTag::vee}}};
}
inline StructureBundle make_leftsym(FreeModule m, Table circ) {
  return {BundleKind::leftsym, m, {{m, std::move(circ), OpTag::leftsym}}};
}

inline Verdict check_structure(const StructureBundle& b, const CheckOptions& opt = {}) {
  const auto r = b.module.rank();
  for (const auto& t : b.tables) detail::require_shape(t.table, {r, r}, r, "structure");
  auto over_triples = [&](auto&& body) {
    for_each_tuple({r, r, r}, [&](const Tuple& t) { body(t, basis_of(r, t[0]), basis_of(r, t[1]), basis_of(r, t[2])); });
  };
  switch (b.kind) {
    case BundleKind::assoc: return check_associative_table(b.get(OpTag::star), opt);
    case BundleKind::dendriform: {
      Verdict v("dendriform");
      const auto &s = b.get(OpTag::succ), &p = b.get(OpTag::prec);
      const auto x = b.sum();
      over_triples([&](const Tuple& t, const ModElem& a, const ModElem& bb, const ModElem& c) {
        v.record(t, right_nested(s, s, a, bb, c) - left_nested(x, s, a, bb, c), opt, "succ-succ");
        v.record(t, left_nested(p, p, a, bb, c) - right_nested(p, x, a, bb, c), opt, "prec-prec");
        v.record(t, left_nested(s, p, a, bb, c) - right_nested(s, p, a, bb, c), opt, "succ-prec");
      });
      return v;
    }
    case BundleKind::ns: {
      Verdict v("NS");
      const auto &s = b.get(OpTag::succ), &p = b.get(OpTag::prec), &w = b.get(OpTag::vee);
      const auto x = b.sum();
      over_triples([&](const Tuple& t, const ModElem& a, const ModElem& bb, const ModElem& c) {
        v.record(t, right_nested(s, s, a, bb, c) - left_nested(x, s, a, bb, c), opt, "NS1");
        v.record(t, right_nested(p, x, a, bb, c) - left_nested(p, p, a, bb, c), opt, "NS2");
        v.record(t, right_nested(s, p, a, bb, c) - left_nested(s, p, a, bb, c), opt, "NS3");
        v.record(t,
                 right_nested(s, w, a, bb, c) - left_nested(x, w, a, bb, c) - left_nested(w, p, a, bb, c) +
                     right_nested(w, x, a, bb, c),
                 opt, "NS4");
      });
      return v;
    }
    case BundleKind::leftsym: {
      Verdict v("left-symmetric");
      const auto& o = b.get(OpTag::leftsym);
      over_triples([&](const Tuple& t, const ModElem& a, const ModElem& bb, const ModElem& c) {
        auto ba_c = eval2(o, eval2(o, bb, a, lam(2)), c, lam(1) + lam(2));
        v.record(t,
                 left_nested(o, o, a, bb, c) - right_nested(o, o, a, bb, c) - ba_c + swapped_nested(o, o, a, bb, c),
                 opt);
      });
      return v;
    }
  }
  return Verdict("unknown");
}

// T(x∘y) = T(x)T(y) on basis pairs.
inline Verdict verify_homomorphism(const ModuleMap& t, const Table& from, const Table& to, const CheckOptions& opt = {}) {
  return detail::over_pairs("homomorphism", t.source_rank(), opt, [&](const ModElem& x, const ModElem& y) {
    return t(eval2(from, x, y, lam(1))) - eval2(to, t(x), t(y), lam(1));
  });
}

namespace detail {

inline void require_operator(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim, const Cochain* phi) {
  if (phi) {
    if (!verify_operator(op::TwistedRB{*phi}, t, alg, &bim))
      throw Error(ErrorCode::NotTwistedRB, "map is not a twisted Rota-Baxter operator");
  } else if (!verify_O(t, alg, bim)) {
    throw Error(ErrorCode::NotOOperator, "map is not an O-operator");
  }
}

template <class F>
Table pair_table(std::size_t r, F&& f) {
  return Table::build({r, r}, r, [&](const Tuple& idx) { return f(basis_of(r, idx[0]), basis_of(r, idx[1])); });
}

}  // namespace detail

// m ≻ n = T(m)n, m ≺ n = mT(n)
inline StructureBundle dendriform_from_O(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim) {
  detail::require_operator(t, alg, bim, nullptr);
  const auto rm = bim.rank();
  auto succ = detail::pair_table(rm, [&](const ModElem& m, const ModElem& n) { return eval2(bim.left(), t(m), n, lam(1)); });
  auto prec = detail::pair_table(rm, [&](const ModElem& m, const ModElem& n) { return eval2(bim.right(), m, t(n), lam(1)); });
  return make_dendriform(bim.module(), std::move(succ), std::move(prec));
}

// m ⋆ n = T(m)n + mT(n) (+ φ(Tm, Tn))
inline ConfAlgebra m_ass(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim, const Cochain* phi = nullptr,
                         Validation v = Validation::checked) {
  if (v == Validation::checked) detail::require_operator(t, alg, bim, phi);
  return ConfAlgebra(bim.module(), induced::star(t, bim.left(), bim.right(), phi));
}

// A as a bimodule over m_ass: m·a = T(m)a - T(ma + φ(Tm,a)), a·m = aT(m) - T(am + φ(a,Tm)).
inline ConfBimodule induced_bimodule_on_A(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim,
                                          const Cochain* phi = nullptr, Validation v = Validation::checked) {
  if (v == Validation::checked) detail::require_operator(t, alg, bim, phi);
  return ConfBimodule(bim.rank(), alg.module(), induced::left_on_algebra(t, alg.product(), bim.right(), phi),
                      induced::right_on_algebra(t, alg.product(), bim.left(), phi));
}

namespace detail {

inline StructureBundle certified(StructureBundle b) {
  if (auto v = check_structure(b); !v)
    throw Error(ErrorCode::PreconditionFailed, std::string(to_string(b.kind)) + " bundle fails its axioms");
  return b;
}

inline Table map_table(const ModuleMap& f, std::size_t r, const ModuleMap& g, const Table& p, int sign = 1) {
  return pair_table(r, [&](const ModElem& a, const ModElem& b) {
    auto v = eval2(p, f(a), g(b), lam(1));
    return sign > 0 ? v : ModElem(r) - v;
  });
}

}  // namespace detail

// m ≻ n = T(m)n, m ≺ n = mT(n), m ∨ n = φ(Tm, Tn)
inline StructureBundle ns_from_twisted(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim,
                                       const Cochain& phi) {
  detail::require_operator(t, alg, bim, &phi);
  const auto rm = bim.rank();
  auto succ = detail::pair_table(rm, [&](const ModElem& m, const ModElem& n) { return eval2(bim.left(), t(m), n, lam(1)); });
  auto prec = detail::pair_table(rm, [&](const ModElem& m, const ModElem& n) { return eval2(bim.right(), m, t(n), lam(1)); });
  auto vee = detail::pair_table(rm, [&](const ModElem& m, const ModElem& n) { return eval2(phi.table(), t(m), t(n), lam(1)); });
  return detail::certified(make_ns(bim.module(), std::move(succ), std::move(prec), std::move(vee)));
}

// a ≻ b = N(a)b, a ≺ b = aN(b), a ∨ b = -N(ab)
inline StructureBundle ns_from_nijenhuis(const ModuleMap& n, const ConfAlgebra& alg) {
  if (!verify_operator(op::Nijenhuis{}, n, alg)) throw Error(ErrorCode::NotNijenhuis, "map is not Nijenhuis");
  const auto r = alg.rank();
  const auto& p = alg.product();
  auto succ = detail::pair_table(r, [&](const ModElem& a, const ModElem& b) { return eval2(p, n(a), b, lam(1)); });
  auto prec = detail::pair_table(r, [&](const ModElem& a, const ModElem& b) { return eval2(p, a, n(b), lam(1)); });
  auto vee = detail::pair_table(r, [&](const ModElem& a, const ModElem& b) { return ModElem(r) - n(eval2(p, a, b, lam(1))); });
  return detail::certified(make_ns(alg.module(), std::move(succ), std::move(prec), std::move(vee)));
}

// a ∘^N b = N(a)b + aN(b) - N(ab)
inline Table deformed_table(const ModuleMap& n, const Table& p) {
  const auto r = n.source_rank();
  return detail::pair_table(r, [&](const ModElem& a, const ModElem& b) { return detail::deformed(p, n, a, b); });
}

struct DeformedProduct {
  ConfAlgebra algebra;  // (A, ∘^N), not necessarily associative
  Cochain obstruction;  // φ^N(a,b) = N(a)N(b) - N(a ∘^N b)
};

inline DeformedProduct deformed_product(const ModuleMap& n, const ConfAlgebra& alg) {
  detail::require_map(n, alg.rank(), alg.rank(), "deformed product");
  const auto r = alg.rank();
  const auto& p = alg.product();
  auto circ = deformed_table(n, p);
  auto phi = detail::pair_table(r, [&](const ModElem& a, const ModElem& b) {
    return eval2(p, n(a), n(b), lam(1)) - n(eval2(circ, a, b, lam(1)));
  });
  return {ConfAlgebra(alg.module(), std::move(circ)), Cochain(std::move(phi))};
}

struct DeformedProductClaims {
  Verdict associative;    // ∘^N
  Verdict cocycle;        // dφ^N = 0 in the adjoint complex
  bool equivalent = false;
  Verdict associator;     // associator of ∘^N equals dφ^N
  Verdict homomorphism;   // N(a ∘^N b) = N(a)N(b)
  Verdict pencil;         // θ + qθ^N associative for a symbolic q
};

inline DeformedProductClaims deformed_product_claims(const ModuleMap& n, const ConfAlgebra& alg, const CheckOptions& opt = {}) {
  auto dp = deformed_product(n, alg);
  const auto r = alg.rank();
  const auto& circ = dp.algebra.product();
  DeformedProductClaims out;
  out.associative = check_associative_table(circ, opt);
  auto dphi = hochschild_d(dp.obstruction, alg, adjoint(alg));
  out.cocycle = zero_verdict("obstruction cocycle", dphi, opt);
  out.equivalent = bool(out.associative) == bool(out.cocycle);
  out.associator = Verdict("associator equals d of the obstruction");
  for_each_tuple({r, r, r}, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]), c = basis_of(r, t[2]);
    auto assoc = left_nested(circ, circ, a, b, c) - right_nested(circ, circ, a, b, c);
    out.associator.record(t, assoc - dphi.at(t), opt);
  });
  out.homomorphism = verify_homomorphism(n, circ, alg.product(), opt);
  auto pencil = alg.product() + Poly::aux("q") * circ;
  out.pencil = check_associative_table(pencil, opt);
  out.pencil.identity = "pencil";
  return out;
}

// Identities satisfied by the powers of a Nijenhuis operator, for
// exponents up to kmax.
struct HierarchyReport {
  std::vector<Verdict> verdicts;
  explicit operator bool() const {
    for (const auto& v : verdicts)
      if (!v) return false;
    return true;
  }
};

inline HierarchyReport nijenhuis_hierarchy(const ModuleMap& n, const ConfAlgebra& alg, unsigned kmax,
                                           const CheckOptions& opt = {}) {
  if (!verify_operator(op::Nijenhuis{}, n, alg)) throw Error(ErrorCode::NotNijenhuis, "map is not Nijenhuis");
  const auto r = alg.rank();
  const auto& p = alg.product();
  std::vector<ModuleMap> pw{ModuleMap::identity(r)};
  for (unsigned k = 1; k <= 2 * kmax; ++k) pw.push_back(compose(n, pw.back()));
  std::vector<Table> circ;
  for (unsigned k = 0; k <= 2 * kmax; ++k) circ.push_back(deformed_table(pw[k], p));

  HierarchyReport out;
  auto tag = [](std::string s, std::initializer_list<unsigned> ks) {
    char sep = '(';
    for (auto k : ks) (s += sep) += std::to_string(k), sep = ',';
    return s + ")";
  };
  for (unsigned j = 0; j <= kmax; ++j)
    for (unsigned k = 0; k <= kmax; ++k)
      out.verdicts.push_back(detail::over_pairs(tag("power product", {j, k}), r, opt, [&](const ModElem& a, const ModElem& b) {
        const auto &nj = pw[j], &nk = pw[k];
        return eval2(p, nj(a), nk(b), lam(1)) - nk(eval2(p, nj(a), b, lam(1))) - nj(eval2(p, a, nk(b), lam(1))) +
               pw[j + k](eval2(p, a, b, lam(1)));
      }));
  for (unsigned rr = 0; rr <= kmax; ++rr)
    for (unsigned k = 0; k <= kmax; ++k)
      out.verdicts.push_back(detail::over_pairs(tag("power homomorphism", {rr, k}), r, opt, [&](const ModElem& a, const ModElem& b) {
        const auto& nr = pw[rr];
        return nr(eval2(circ[k + rr], a, b, lam(1))) - eval2(circ[k], nr(a), nr(b), lam(1));
      }));
  for (unsigned i = 0; i <= kmax; ++i)
    for (unsigned k = 0; k <= kmax; ++k) {
      out.verdicts.push_back(detail::over_pairs(tag("power deformation", {i, k}), r, opt, [&](const ModElem& a, const ModElem& b) {
        return detail::deformed(circ[i], pw[k], a, b) - eval2(circ[i + k], a, b, lam(1));
      }));
      auto v = verify_operator(op::Nijenhuis{}, pw[k], ConfAlgebra(alg.module(), circ[i]), nullptr, opt);
      v.identity = tag("power Nijenhuis on deformed product", {i, k});
      out.verdicts.push_back(std::move(v));
    }
  for (unsigned j = 0; j <= kmax; ++j)
    for (unsigned k = j + 1; k <= kmax; ++k) {
      auto v = compatible_nijenhuis(pw[j], pw[k], alg, opt);
      v.identity = tag("compatible powers", {j, k});
      out.verdicts.push_back(std::move(v));
    }
  // P(N) = 1 + 2N - 3N^2 + 5N^3 ...
  static constexpr long coeffs[] = {1, 2, -3, 5, -7, 11, -13};
  auto poly = ModuleMap(r, r);
  for (unsigned k = 0; k <= kmax && k < std::size(coeffs); ++k) poly = poly + Scalar(coeffs[k]) * pw[k];
  auto v = verify_operator(op::Nijenhuis{}, poly, alg, nullptr, opt);
  v.identity = "polynomial in N";
  out.verdicts.push_back(std::move(v));
  return out;
}

// a ∘ b = a ≻ b - b ≺_{-λ-∂} a
inline StructureBundle leftsym_from_dendriform(const StructureBundle& den) {
  if (den.kind != BundleKind::dendriform || !check_structure(den))
    throw Error(ErrorCode::NotDendriform, "input is not a dendriform bundle");
  const auto r = den.module.rank();
  const auto &s = den.get(OpTag::succ), &p = den.get(OpTag::prec);
  auto circ = detail::pair_table(r, [&](const ModElem& a, const ModElem& b) {
    return eval2(s, a, b, lam(1)) - eval2(p, b, a, flipped());
  });
  return detail::certified(make_leftsym(den.module, std::move(circ)));
}

// [a b] = a∘b - b∘_{-λ-∂}a for a left-symmetric bundle
inline Table leftsym_commutator(const StructureBundle& ls) { return commutator_table(ls.get(OpTag::leftsym)); }

// [a b]^N = [Na b] + [a Nb] - N[a b]
inline BinaryOpTable deformed_bracket(const ModuleMap& n, const ConfAlgebra& lie) {
  detail::require_map(n, lie.rank(), lie.rank(), "deformed bracket");
  return {lie.module(), deformed_table(n, lie.product()), OpTag::bracket};
}

struct DeformedBracketClaims {
  Verdict lie;          // [·,·]^N is Lie
  Verdict commutator;   // equals the commutator of ∘^N
  Verdict nijenhuis;    // N is Nijenhuis on the commutator algebra
};

inline DeformedBracketClaims deformed_bracket_claims(const ModuleMap& n, const ConfAlgebra& alg, const CheckOptions& opt = {}) {
  if (!verify_operator(op::Nijenhuis{}, n, alg)) throw Error(ErrorCode::NotNijenhuis, "map is not Nijenhuis");
  auto lie = commutator_lie(alg);
  auto br = deformed_bracket(n, lie);
  DeformedBracketClaims out;
  out.lie = check_lie_table(br.table, opt);
  auto comm = commutator_table(deformed_table(n, alg.product()));
  out.commutator = detail::over_pairs("deformed bracket is a commutator", alg.rank(), opt,
                                      [&](const ModElem& a, const ModElem& b) {
                                        return eval2(br.table, a, b, lam(1)) - eval2(comm, a, b, lam(1));
                                      });
  out.nijenhuis = verify_operator(op::NijenhuisLie{}, n, lie, nullptr, opt);
  return out;
}

struct DeformationReport {
  Table omega;              // ω(a,b) = N(a)b + aN(b) - N(ab)
  Verdict associative;      // ω is associative
  Verdict cocycle;          // dω = 0
  Verdict trivializes;      // T_t(a ∘^t b) = T_t(a)T_t(b), t formal
  Verdict second_order;     // N ω(a,b) = N(a)N(b), the t² coefficient
  explicit operator bool() const { return associative && cocycle && trivializes; }
};

// With Validation::unchecked the Nijenhuis precondition is skipped so a
// failing map shows where the trivialization breaks.
inline DeformationReport deformation_check(const ModuleMap& n, const ConfAlgebra& alg, Validation val = Validation::checked,
                                           const CheckOptions& opt = {}) {
  detail::require_map(n, alg.rank(), alg.rank(), "deformation");
  if (val == Validation::checked && !verify_operator(op::Nijenhuis{}, n, alg))
    throw Error(ErrorCode::NotNijenhuis, "map is not Nijenhuis");
  const auto r = alg.rank();
  const auto& p = alg.product();
  DeformationReport out{deformed_table(n, p), {}, {}, {}, {}};
  out.associative = check_associative_table(out.omega, opt);
  out.cocycle = zero_verdict("deformation cocycle", hochschild_d(Cochain(out.omega), alg, adjoint(alg)), opt);
  const auto t = Poly::aux("t");
  auto circ_t = p + t * out.omega;
  auto tt = [&](const ModElem& x) { return x + t * n(x); };
  out.trivializes = detail::over_pairs("trivial deformation", r, opt, [&](const ModElem& a, const ModElem& b) {
    return tt(eval2(circ_t, a, b, lam(1))) - eval2(p, tt(a), tt(b), lam(1));
  });
  out.second_order = detail::over_pairs("second-order term", r, opt, [&](const ModElem& a, const ModElem& b) {
    return n(eval2(out.omega, a, b, lam(1))) - eval2(p, n(a), n(b), lam(1));
  });
  return out;
}

}  // namespace confalg
