#pragma once

// Conformal algebras, bimodules and Lie representations given by structure
// tables, with axiom checkers and the basic constructions on them.

#include <string>
#include <vector>

#include "confalg/table.hpp"

namespace confalg {

inline Poly lam(std::uint32_t k) { return Poly::lambda(k); }
// The weight -L1-D used for a_{-λ-∂} b.
inline Poly flipped() { return -lam(1) - Poly::d(); }

enum class Flavor { associative, lie };
enum class Validation { checked, unchecked };

namespace detail {

inline void require_table_vars(const Table& t, std::uint32_t max_lambda, const char* what) {
  for (const auto& v : t.values())
    for (const auto& p : v.coeffs())
      for (auto var : p.variables())
        if (var.kind() == Var::Kind::Lambda && var.index() > max_lambda)
          throw Error(ErrorCode::ShapeMismatch, std::string(what) + " entry uses " + var.name());
}

inline void require_shape(const Table& t, std::vector<std::size_t> slots, std::size_t out, const char* what) {
  if (t.slot_ranks() != slots || t.out_rank() != out)
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " table has the wrong shape");
}

}  // namespace detail

class ConfAlgebra {
 public:
  ConfAlgebra() = default;
  ConfAlgebra(FreeModule m, Table product, Flavor f = Flavor::associative)
      : module_(std::move(m)), product_(std::move(product)), flavor_(f) {
    const auto r = module_.rank();
    detail::require_shape(product_, {r, r}, r, "product");
    detail::require_table_vars(product_, 1, "product");
  }
  static ConfAlgebra zero(FreeModule m, Flavor f = Flavor::associative) {
    auto r = m.rank();
    return ConfAlgebra(std::move(m), Table::square(2, r, r), f);
  }

  const FreeModule& module() const { return module_; }
  std::size_t rank() const { return module_.rank(); }
  const Table& product() const { return product_; }
  Flavor flavor() const { return flavor_; }
  ModElem e(std::size_t i) const { return ModElem::basis(rank(), i); }
  ModElem mul(const ModElem& a, const ModElem& b, const Poly& w) const { return eval2(product_, a, b, w); }

  friend bool operator==(const ConfAlgebra&, const ConfAlgebra&) = default;

 private:
  FreeModule module_;
  Table product_;
  Flavor flavor_ = Flavor::associative;
};

// Left action A x M -> M and right action M x A -> M.
class ConfBimodule {
 public:
  ConfBimodule() = default;
  ConfBimodule(std::size_t algebra_rank, FreeModule m, Table left, Table right)
      : algebra_rank_(algebra_rank), module_(std::move(m)), left_(std::move(left)), right_(std::move(right)) {
    const auto r = module_.rank();
    detail::require_shape(left_, {algebra_rank_, r}, r, "left action");
    detail::require_shape(right_, {r, algebra_rank_}, r, "right action");
    detail::require_table_vars(left_, 1, "left action");
    detail::require_table_vars(right_, 1, "right action");
  }
  static ConfBimodule zero(std::size_t algebra_rank, FreeModule m) {
    auto r = m.rank();
    return ConfBimodule(algebra_rank, std::move(m), Table({algebra_rank, r}, r), Table({r, algebra_rank}, r));
  }

  std::size_t algebra_rank() const { return algebra_rank_; }
  const FreeModule& module() const { return module_; }
  std::size_t rank() const { return module_.rank(); }
  const Table& left() const { return left_; }
  const Table& right() const { return right_; }
  ModElem m(std::size_t i) const { return ModElem::basis(rank(), i); }

  friend bool operator==(const ConfBimodule&, const ConfBimodule&) = default;

 private:
  std::size_t algebra_rank_ = 0;
  FreeModule module_;
  Table left_, right_;
};

inline ConfBimodule adjoint(const ConfAlgebra& alg) {
  return ConfBimodule(alg.rank(), alg.module(), alg.product(), alg.product());
}

// Action L x V -> V of a Lie conformal algebra.
class LieRep {
 public:
  LieRep() = default;
  LieRep(std::size_t lie_rank, FreeModule m, Table action)
      : lie_rank_(lie_rank), module_(std::move(m)), action_(std::move(action)) {
    detail::require_shape(action_, {lie_rank_, module_.rank()}, module_.rank(), "representation");
    detail::require_table_vars(action_, 1, "representation");
  }
  std::size_t lie_rank() const { return lie_rank_; }
  const FreeModule& module() const { return module_; }
  std::size_t rank() const { return module_.rank(); }
  const Table& action() const { return action_; }

 private:
  std::size_t lie_rank_ = 0;
  FreeModule module_;
  Table action_;
};

inline LieRep adjoint_rep(const ConfAlgebra& lie) { return LieRep(lie.rank(), lie.module(), lie.product()); }

// (a <inner>_L1 b) <outer>_{L1+L2} c
inline ModElem left_nested(const Table& inner, const Table& outer, const ModElem& a, const ModElem& b, const ModElem& c) {
  return eval2(outer, eval2(inner, a, b, lam(1)), c, lam(1) + lam(2));
}
// a <outer>_L1 (b <inner>_L2 c)
inline ModElem right_nested(const Table& outer, const Table& inner, const ModElem& a, const ModElem& b, const ModElem& c) {
  return eval2(outer, a, eval2(inner, b, c, lam(2)), lam(1));
}
// b <outer>_L2 (a <inner>_L1 c)
inline ModElem swapped_nested(const Table& outer, const Table& inner, const ModElem& a, const ModElem& b, const ModElem& c) {
  return eval2(outer, b, eval2(inner, a, c, lam(1)), lam(2));
}

inline ModElem basis_of(std::size_t rank, std::size_t i) { return ModElem::basis(rank, i); }

// Residual of (a·b)·c = a·(b·c) for a binary table with equal ranks.
inline Verdict check_associative_table(const Table& p, const CheckOptions& opt = {}) {
  Verdict v("associativity");
  const auto r = p.out_rank();
  for_each_tuple({r, r, r}, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]), c = basis_of(r, t[2]);
    v.record(t, left_nested(p, p, a, b, c) - right_nested(p, p, a, b, c), opt);
  });
  return v;
}

inline Verdict check_associative(const ConfAlgebra& alg, const CheckOptions& opt = {}) {
  return check_associative_table(alg.product(), opt);
}

inline Verdict check_lie_table(const Table& br, const CheckOptions& opt = {}) {
  Verdict v("Lie");
  const auto r = br.out_rank();
  for_each_tuple({r, r}, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]);
    v.record(t, eval2(br, a, b, lam(1)) + eval2(br, b, a, flipped()), opt, "skew-symmetry");
  });
  for_each_tuple({r, r, r}, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]), c = basis_of(r, t[2]);
    v.record(t, right_nested(br, br, a, b, c) - left_nested(br, br, a, b, c) - swapped_nested(br, br, a, b, c), opt,
             "Jacobi");
  });
  return v;
}

inline Verdict check_lie(const ConfAlgebra& alg, const CheckOptions& opt = {}) {
  return check_lie_table(alg.product(), opt);
}

inline Verdict check_bimodule_tables(const Table& p, const Table& left, const Table& right, const CheckOptions& opt = {}) {
  Verdict v("bimodule");
  const auto ra = p.out_rank(), rm = left.out_rank();
  for_each_tuple({ra, ra, rm}, [&](const Tuple& t) {
    auto a = basis_of(ra, t[0]), b = basis_of(ra, t[1]), m = basis_of(rm, t[2]);
    v.record(t, left_nested(p, left, a, b, m) - right_nested(left, left, a, b, m), opt, "left module");
  });
  for_each_tuple({rm, ra, ra}, [&](const Tuple& t) {
    auto m = basis_of(rm, t[0]), a = basis_of(ra, t[1]), b = basis_of(ra, t[2]);
    v.record(t, left_nested(right, right, m, a, b) - right_nested(right, p, m, a, b), opt, "right module");
  });
  for_each_tuple({ra, rm, ra}, [&](const Tuple& t) {
    auto a = basis_of(ra, t[0]), m = basis_of(rm, t[1]), b = basis_of(ra, t[2]);
    v.record(t, left_nested(left, right, a, m, b) - right_nested(left, right, a, m, b), opt, "compatibility");
  });
  return v;
}

inline Verdict check_bimodule(const ConfAlgebra& alg, const ConfBimodule& bim, const CheckOptions& opt = {}) {
  if (bim.algebra_rank() != alg.rank()) throw Error(ErrorCode::RankMismatch, "bimodule is over a different algebra");
  return check_bimodule_tables(alg.product(), bim.left(), bim.right(), opt);
}

// [a_λ b]_{λ+μ} v = a_λ(b_μ v) - b_μ(a_λ v)
inline Verdict check_lie_rep(const ConfAlgebra& lie, const LieRep& rep, const CheckOptions& opt = {}) {
  Verdict v("representation");
  const auto rl = lie.rank(), rv = rep.rank();
  const auto& br = lie.product();
  const auto& act = rep.action();
  for_each_tuple({rl, rl, rv}, [&](const Tuple& t) {
    auto a = basis_of(rl, t[0]), b = basis_of(rl, t[1]), x = basis_of(rv, t[2]);
    v.record(t, left_nested(br, act, a, b, x) - right_nested(act, act, a, b, x) + swapped_nested(act, act, a, b, x),
             opt);
  });
  return v;
}

// Current algebra: constant structure constants, c[i][j] = coordinates of e_i e_j.
inline ConfAlgebra cur(FreeModule m, const std::vector<std::vector<std::vector<Scalar>>>& c) {
  const auto r = m.rank();
  if (c.size() != r) throw Error(ErrorCode::RankMismatch, "structure constant table");
  auto t = Table::build({r, r}, r, [&](const Tuple& idx) {
    const auto& row = c.at(idx[0]).at(idx[1]);
    if (row.size() != r) throw Error(ErrorCode::RankMismatch, "structure constant vector");
    ModElem v(r);
    for (std::size_t k = 0; k < r; ++k) v[k] = Poly(row[k]);
    return v;
  });
  return ConfAlgebra(std::move(m), std::move(t));
}

// a_λ b - b_{-λ-∂} a
inline Table commutator_table(const Table& p) {
  const auto r = p.out_rank();
  return Table::build({r, r}, r, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]);
    return eval2(p, a, b, lam(1)) - eval2(p, b, a, flipped());
  });
}

inline ConfAlgebra commutator_lie(const ConfAlgebra& alg) {
  if (!check_associative(alg)) throw Error(ErrorCode::NotAssociative, "commutator needs an associative algebra");
  return ConfAlgebra(alg.module(), commutator_table(alg.product()), Flavor::lie);
}

// ρ(a)_λ m = a_λ m - m_{-λ-∂} a
inline LieRep rep_from_bimodule(const ConfAlgebra& alg, const ConfBimodule& bim) {
  if (!check_associative(alg)) throw Error(ErrorCode::NotAssociative, "representation needs an associative algebra");
  if (!check_bimodule(alg, bim)) throw Error(ErrorCode::NotBimodule, "bimodule axioms fail");
  const auto ra = alg.rank(), rm = bim.rank();
  auto t = Table::build({ra, rm}, rm, [&](const Tuple& idx) {
    auto a = basis_of(ra, idx[0]), m = basis_of(rm, idx[1]);
    return eval2(bim.left(), a, m, lam(1)) - eval2(bim.right(), m, a, flipped());
  });
  return LieRep(ra, bim.module(), std::move(t));
}

namespace detail {

// Binary table on X ⊕ Y from a callback producing the value on
// (x-part, y-part) pairs of basis elements.
template <class F>
Table sum_table(std::size_t rx, std::size_t ry, F&& f) {
  const auto r = rx + ry;
  return Table::build({r, r}, r, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]);
    return f(a, b);
  });
}

}  // namespace detail

// (a,m)_λ(b,n) = (a_λ b, a_λ n + m_λ b); A-basis first.
inline ConfAlgebra semidirect(const ConfAlgebra& alg, const ConfBimodule& bim, Validation v = Validation::checked) {
  if (v == Validation::checked && !check_bimodule(alg, bim)) throw Error(ErrorCode::NotBimodule, "bimodule axioms fail");
  const auto ra = alg.rank(), rm = bim.rank();
  auto t = detail::sum_table(ra, rm, [&](const ModElem& x, const ModElem& y) {
    auto a = x.slice(0, ra), m = x.slice(ra, rm), b = y.slice(0, ra), n = y.slice(ra, rm);
    auto top = eval2(alg.product(), a, b, lam(1));
    auto bottom = eval2(bim.left(), a, n, lam(1)) + eval2(bim.right(), m, b, lam(1));
    return top.embed(ra + rm, 0) + bottom.embed(ra + rm, ra);
  });
  return ConfAlgebra(direct_sum(alg.module(), bim.module()), std::move(t));
}

struct MatchingActions {
  Table first_on_second;  // a ·¹ y : A1 x A2 -> A2
  Table second_by_first;  // x ·¹ b : A2 x A1 -> A2
  Table second_on_first;  // x ·² b : A2 x A1 -> A1
  Table first_by_second;  // a ·² y : A1 x A2 -> A1
};

// (a,x)_λ(b,y) = (a_λ b + x·²_λ b + a·²_λ y, a·¹_λ y + x·¹_λ b + x_λ y)
inline ConfAlgebra matching_pair(const ConfAlgebra& a1, const ConfAlgebra& a2, const MatchingActions& act) {
  const auto r1 = a1.rank(), r2 = a2.rank();
  auto shape = [](const Table& t, std::vector<std::size_t> s, std::size_t o) {
    if (t.slot_ranks() != s || t.out_rank() != o) throw Error(ErrorCode::RankMismatch, "matching pair action shape");
  };
  shape(act.first_on_second, {r1, r2}, r2);
  shape(act.second_by_first, {r2, r1}, r2);
  shape(act.second_on_first, {r2, r1}, r1);
  shape(act.first_by_second, {r1, r2}, r1);
  auto t = detail::sum_table(r1, r2, [&](const ModElem& p, const ModElem& q) {
    auto a = p.slice(0, r1), x = p.slice(r1, r2), b = q.slice(0, r1), y = q.slice(r1, r2);
    auto first = eval2(a1.product(), a, b, lam(1)) + eval2(act.second_on_first, x, b, lam(1)) +
                 eval2(act.first_by_second, a, y, lam(1));
    auto second = eval2(act.first_on_second, a, y, lam(1)) + eval2(act.second_by_first, x, b, lam(1)) +
                  eval2(a2.product(), x, y, lam(1));
    return first.embed(r1 + r2, 0) + second.embed(r1 + r2, r1);
  });
  return ConfAlgebra(direct_sum(a1.module(), a2.module()), std::move(t));
}

}  // namespace confalg
