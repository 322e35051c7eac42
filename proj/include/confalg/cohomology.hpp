#pragma once

// Gerstenhaber composition and bracket, horizontal lifts into A ⊕ M, the
// derived bracket on C(M, A) and Maurer-Cartan characterizations.

#include <string>
#include <vector>

#include "confalg/derived.hpp"

namespace confalg {

namespace detail {

inline void require_endo(const Cochain& f, const char* what) {
  if (f.in_rank() != f.out_rank())
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": cochain must map a module to itself");
}

inline std::vector<std::size_t> block_sizes(std::size_t count, std::size_t at, std::size_t len) {
  std::vector<std::size_t> s(count, 1);
  s[at] = len;
  return s;
}

inline bool odd(std::size_t k) { return k % 2 != 0; }

}  // namespace detail

// (f∘g)(a1..a_{m+n-1}) = Σ_i (-1)^{(i-1)(n-1)} f(a1.., g(a_i..a_{i+n-1}), ..)
inline Cochain g_circle(const Cochain& f, const Cochain& g) {
  detail::require_endo(f, "composition");
  detail::require_endo(g, "composition");
  if (f.in_rank() != g.in_rank()) throw Error(ErrorCode::ShapeMismatch, "composition of cochains on different modules");
  const auto m = f.arity(), n = g.arity(), r = f.in_rank();
  return Cochain::build(m + n - 1, r, r, [&](const Tuple& t) {
    ModElem out(r);
    for (std::size_t i = 0; i < m; ++i) {
      auto inner = eval_on_blocks(g.table(), basis_args(r, t, i, i + n), std::vector<std::size_t>(n, 1),
                                  static_cast<std::uint32_t>(i + 1));
      if (inner.is_zero()) continue;
      auto args = basis_args(r, t, 0, i);
      args.push_back(std::move(inner));
      for (auto k = i + n; k < m + n - 1; ++k) args.push_back(basis_of(r, t[k]));
      auto term = eval_on_blocks(f.table(), args, detail::block_sizes(m, i, n), 1);
      if (detail::odd(i * (n - 1))) out -= term;
      else out += term;
    }
    return out;
  });
}

// [f,g] = f∘g - (-1)^{(m-1)(n-1)} g∘f
inline Cochain g_bracket(const Cochain& f, const Cochain& g) {
  auto fg = g_circle(f, g), gf = g_circle(g, f);
  return detail::odd((f.arity() - 1) * (g.arity() - 1)) ? fg + gf : fg - gf;
}

// f̂((a1,u1)..(ak,uk)) = (f(u1..uk), 0)
inline Cochain lift_cochain(const Cochain& f, std::size_t algebra_rank) {
  const auto ra = algebra_rank, rm = f.in_rank(), r = ra + rm;
  if (f.out_rank() != ra) throw Error(ErrorCode::ShapeMismatch, "lifted cochain must take values in the algebra");
  return Cochain::build(f.arity(), r, r, [&](const Tuple& t) {
    Tuple inner(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] < ra) return ModElem(r);
      inner[k] = t[k] - ra;
    }
    return f.at(inner).embed(r, 0);
  });
}

// φ̂((a,m),(b,n)) = (0, φ(a,b))
inline Cochain lift_twist(const Cochain& phi, std::size_t module_rank) {
  const auto ra = phi.in_rank(), rm = module_rank, r = ra + rm;
  if (phi.out_rank() != rm) throw Error(ErrorCode::ShapeMismatch, "twist must take values in the module");
  return Cochain::build(phi.arity(), r, r, [&](const Tuple& t) {
    for (auto k : t)
      if (k >= ra) return ModElem(r);
    return phi.at(t).embed(r, ra);
  });
}

// Product of the semidirect algebra as a 2-cochain.
inline Cochain theta_hat(const ConfAlgebra& alg, const ConfBimodule& bim) {
  return Cochain(semidirect(alg, bim, Validation::unchecked).product());
}

// Zero on every slot tuple touching A and zero in the M-component.
inline Verdict is_lift(const Cochain& c, std::size_t algebra_rank, const CheckOptions& opt = {}) {
  const auto ra = algebra_rank, r = c.in_rank();
  Verdict v("lift");
  for_each_tuple(c.table().slot_ranks(), [&](const Tuple& t) {
    bool horizontal = true;
    for (auto k : t) horizontal = horizontal && k >= ra;
    const auto& x = c.at(t);
    if (!horizontal) v.record(t, x, opt, "mixed slot");
    else v.record(t, x.slice(ra, r - ra).embed(r, ra), opt, "module component");
  });
  return v;
}

// Restriction of a lift to M-slots, A-component.
inline Cochain unlift(const Cochain& c, std::size_t algebra_rank) {
  const auto ra = algebra_rank, rm = c.in_rank() - ra;
  return Cochain::build(c.arity(), rm, ra, [&](const Tuple& t) {
    Tuple outer(t);
    for (auto& k : outer) k += ra;
    return c.at(outer).slice(0, ra);
  });
}

// [[f,g]] = (-1)^m [[θ̂,f],g] for cochains on A ⊕ M.
inline Cochain derived_bracket_hat(const Cochain& theta, const Cochain& f, const Cochain& g) {
  auto b = g_bracket(g_bracket(theta, f), g);
  return detail::odd(f.arity()) ? Poly(-1) * b : b;
}

// [[f,g]] for f: M^m -> A, g: M^n -> A through the lifts.
inline Cochain derived_bracket_lift(const Cochain& f, const Cochain& g, const ConfAlgebra& alg, const ConfBimodule& bim) {
  const auto ra = alg.rank();
  return unlift(derived_bracket_hat(theta_hat(alg, bim), lift_cochain(f, ra), lift_cochain(g, ra)), ra);
}

namespace detail {

// Σ_i (-1)^{(i-1)n} f(.., g(u_i..)u_{i+n}, ..) - Σ_i (-1)^{in} f(.., u_i g(u_{i+1}..), ..)
inline ModElem derived_half(const Cochain& f, const Cochain& g, const Table& left, const Table& right, const Tuple& t) {
  const auto m = f.arity(), n = g.arity(), rm = f.in_rank(), ra = f.out_rank();
  ModElem out(ra);
  auto slot_f = [&](std::size_t i, ModElem merged) {
    auto args = basis_args(rm, t, 0, i);
    args.push_back(std::move(merged));
    for (auto k = i + n + 1; k < m + n; ++k) args.push_back(basis_of(rm, t[k]));
    return eval_on_blocks(f.table(), args, block_sizes(m, i, n + 1), 1);
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto li = static_cast<std::uint32_t>(i + 1);
    auto gl = eval_on_blocks(g.table(), basis_args(rm, t, i, i + n), std::vector<std::size_t>(n, 1), li);
    auto lterm = slot_f(i, eval_on_blocks(left, {gl, basis_of(rm, t[i + n])}, {n, 1}, li));
    if (odd(i * n)) out -= lterm;
    else out += lterm;
    auto gr = eval_on_blocks(g.table(), basis_args(rm, t, i + 1, i + n + 1), std::vector<std::size_t>(n, 1), li + 1);
    auto rterm = slot_f(i, eval_on_blocks(right, {basis_of(rm, t[i]), gr}, {1, n}, li));
    if (odd((i + 1) * n)) out += rterm;
    else out -= rterm;
  }
  return out;
}

}  // namespace detail

// Closed formula for the derived bracket on C(M, A).
inline Cochain derived_bracket_direct(const Cochain& f, const Cochain& g, const ConfAlgebra& alg, const ConfBimodule& bim) {
  const auto ra = alg.rank(), rm = bim.rank();
  for (const auto* c : {&f, &g})
    if (c->in_rank() != rm || c->out_rank() != ra)
      throw Error(ErrorCode::ShapeMismatch, "derived bracket takes cochains from the module into the algebra");
  const auto m = f.arity(), n = g.arity();
  const bool mn_odd = detail::odd(m * n);
  const auto& p = alg.product();
  return Cochain::build(m + n, rm, ra, [&](const Tuple& t) {
    auto fv = eval_on_blocks(f.table(), basis_args(rm, t, 0, m), std::vector<std::size_t>(m, 1), 1);
    auto gv = eval_on_blocks(g.table(), basis_args(rm, t, m, m + n), std::vector<std::size_t>(n, 1),
                             static_cast<std::uint32_t>(m + 1));
    auto gv2 = eval_on_blocks(g.table(), basis_args(rm, t, 0, n), std::vector<std::size_t>(n, 1), 1);
    auto fv2 = eval_on_blocks(f.table(), basis_args(rm, t, n, m + n), std::vector<std::size_t>(m, 1),
                              static_cast<std::uint32_t>(n + 1));
    auto fg = eval_on_blocks(p, {fv, gv}, {m, n}, 1);
    auto gf = eval_on_blocks(p, {gv2, fv2}, {n, m}, 1);
    ModElem out = mn_odd ? ModElem(ra) - fg - gf : fg - gf;
    out += detail::derived_half(f, g, bim.left(), bim.right(), t);
    auto other = detail::derived_half(g, f, bim.left(), bim.right(), t);
    return mn_odd ? out + other : out - other;
  });
}

// [[T,f]] = (-1)^n d(f) in the complex of T when T is an O-operator.
inline Cochain o_complex_d(const Cochain& f, const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim) {
  auto star = induced::star(t, bim.left(), bim.right());
  auto l = induced::left_on_algebra(t, alg.product(), bim.right());
  auto r = induced::right_on_algebra(t, alg.product(), bim.left());
  return hochschild_d(f, star, l, r);
}

struct MaurerCartanReport {
  bool is_o = false;
  bool derived_zero = false;   // closed formula
  bool lifted_zero = false;    // [[T̂,T̂]] on A ⊕ M
  bool closed = false;         // d(T) = 0 in the complex of T
  Verdict operator_verdict;
  // Filled only when T is an O-operator.
  Verdict bracket_associative;
  Verdict bracket_components;
  bool consistent() const { return is_o == derived_zero && is_o == lifted_zero && is_o == closed; }
};

inline MaurerCartanReport maurer_cartan_check(const ModuleMap& t, const ConfAlgebra& alg, const ConfBimodule& bim,
                                              const CheckOptions& opt = {}) {
  detail::require_map(t, bim.rank(), alg.rank(), "Maurer-Cartan");
  const auto ra = alg.rank(), rm = bim.rank(), r = ra + rm;
  MaurerCartanReport out;
  out.operator_verdict = verify_O(t, alg, bim, opt);
  out.is_o = bool(out.operator_verdict);
  auto tc = Cochain::from_map(t);
  out.derived_zero = derived_bracket_direct(tc, tc, alg, bim).is_zero();
  auto theta = theta_hat(alg, bim);
  auto th = Cochain::from_map(lift(t, alg, bim));
  out.lifted_zero = derived_bracket_hat(theta, th, th).is_zero();
  out.closed = o_complex_d(tc, t, alg, bim).is_zero();
  if (out.is_o) {
    auto dt = g_bracket(theta, th);
    out.bracket_associative = check_associative_table(dt.table(), opt);
    auto act_l = induced::left_on_algebra(t, alg.product(), bim.right());
    auto act_r = induced::right_on_algebra(t, alg.product(), bim.left());
    auto star = induced::star(t, bim.left(), bim.right());
    // (a,m)(b,n) -> (m·b + a·n, m⋆n)
    out.bracket_components = Verdict("bracket with the product");
    for_each_tuple({r, r}, [&](const Tuple& idx) {
      auto x = basis_of(r, idx[0]), y = basis_of(r, idx[1]);
      auto a = x.slice(0, ra), m = x.slice(ra, rm), b = y.slice(0, ra), n = y.slice(ra, rm);
      auto first = eval2(act_l, m, b, lam(1)) + eval2(act_r, a, n, lam(1));
      auto expect = first.embed(r, 0) + eval2(star, m, n, lam(1)).embed(r, ra);
      out.bracket_components.record(idx, dt.at(idx) - expect, opt);
    });
  }
  return out;
}

struct PerturbationReport {
  bool sum_is_o = false;
  bool maurer_cartan = false;  // [[T,T']] + ½[[T',T']] = 0
  Verdict differential;        // [[T,T']] = -d(T')
  bool consistent() const { return sum_is_o == maurer_cartan; }
};

inline PerturbationReport mc_perturbation_check(const ModuleMap& t, const ModuleMap& tp, const ConfAlgebra& alg,
                                                const ConfBimodule& bim, const CheckOptions& opt = {}) {
  if (!verify_O(t, alg, bim)) throw Error(ErrorCode::NotOOperator, "base map is not an O-operator");
  detail::require_map(tp, bim.rank(), alg.rank(), "perturbation");
  PerturbationReport out;
  out.sum_is_o = bool(verify_O(t + tp, alg, bim));
  auto tc = Cochain::from_map(t), pc = Cochain::from_map(tp);
  auto dt = derived_bracket_direct(tc, pc, alg, bim);
  auto mc = dt + Poly(Scalar(1, 2)) * derived_bracket_direct(pc, pc, alg, bim);
  out.maurer_cartan = mc.is_zero();
  out.differential = zero_verdict("bracket with T is the differential", dt + o_complex_d(pc, t, alg, bim), opt);
  return out;
}

// [[T,f]] - (-1)^n d(f) for an O-operator T and any f: M^n -> A.
inline Verdict bracket_is_differential(const ModuleMap& t, const Cochain& f, const ConfAlgebra& alg,
                                       const ConfBimodule& bim, const CheckOptions& opt = {}) {
  if (!verify_O(t, alg, bim)) throw Error(ErrorCode::NotOOperator, "map is not an O-operator");
  auto lhs = derived_bracket_direct(Cochain::from_map(t), f, alg, bim);
  auto d = o_complex_d(f, t, alg, bim);
  return zero_verdict("bracket with T is the differential", detail::odd(f.arity()) ? lhs + d : lhs - d, opt);
}

struct ModifiedMCReport {
  bool twisted_rb = false;
  // ½[[T̂,T̂]] = ⅙[[[φ̂,T̂],T̂],T̂] with literal G-brackets.
  bool modified_mc = false;
  // The same equation with the opposite sign on the cubic term.
  bool opposite_sign_form = false;
  // [[[φ̂,T̂],T̂],T̂] = -6 T̂φ̂(T̂⊗T̂)
  bool cubic_identity = false;
  Verdict operator_verdict;
  bool consistent() const { return twisted_rb == modified_mc; }
};

inline ModifiedMCReport modified_mc_check(const ModuleMap& t, const Cochain& phi, const ConfAlgebra& alg,
                                          const ConfBimodule& bim, const CheckOptions& opt = {}) {
  if (!is_cocycle(phi, alg, bim)) throw Error(ErrorCode::NotCocycle, "twist is not closed");
  detail::require_map(t, bim.rank(), alg.rank(), "modified Maurer-Cartan");
  const auto r = alg.rank() + bim.rank();
  ModifiedMCReport out;
  out.operator_verdict = verify_operator(op::TwistedRB{phi}, t, alg, &bim, opt);
  out.twisted_rb = bool(out.operator_verdict);
  auto lt = lift(t, alg, bim);
  auto th = Cochain::from_map(lt);
  auto ph = lift_twist(phi, bim.rank());
  auto half = Poly(Scalar(1, 2)) * derived_bracket_hat(theta_hat(alg, bim), th, th);
  auto cubic = g_bracket(g_bracket(g_bracket(ph, th), th), th);
  auto sixth = Poly(Scalar(1, 6)) * cubic;
  out.modified_mc = (half - sixth).is_zero();
  out.opposite_sign_form = (half + sixth).is_zero();
  auto tpt = Cochain::build(2, r, r, [&](const Tuple& x) {
    return lt(eval2(ph.table(), lt(basis_of(r, x[0])), lt(basis_of(r, x[1])), lam(1)));
  });
  out.cubic_identity = (cubic + Poly(6) * tpt).is_zero();
  return out;
}

}  // namespace confalg
