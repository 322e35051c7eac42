#pragma once

// Multilinear sesquilinear cochains and the Hochschild differential.

#include <vector>

#include "confalg/algebra.hpp"
#include "confalg/modmap.hpp"

namespace confalg {

// An arity-n map from a rank-in module to a rank-out module, stored on basis
// tuples with entries in D and L1..L(n-1).
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t arity, std::size_t in_rank, std::size_t out_rank)
      : table_(Table::square(arity, in_rank, out_rank)) {
    if (arity == 0) throw Error(ErrorCode::ArityMismatch, "cochains have arity at least 1");
  }
  explicit Cochain(Table t) : table_(std::move(t)) {
    if (table_.arity() == 0) throw Error(ErrorCode::ArityMismatch, "cochains have arity at least 1");
    for (auto r : table_.slot_ranks())
      if (r != table_.slot_rank(0)) throw Error(ErrorCode::ShapeMismatch, "cochain slots must share one module");
    detail::require_table_vars(table_, static_cast<std::uint32_t>(table_.arity() - 1), "cochain");
  }
  static Cochain from_map(const ModuleMap& f) { return Cochain(f.as_table()); }
  template <class F>
  static Cochain build(std::size_t arity, std::size_t in_rank, std::size_t out_rank, F&& f) {
    return Cochain(Table::build(std::vector<std::size_t>(arity, in_rank), out_rank, std::forward<F>(f)));
  }

  std::size_t arity() const { return table_.arity(); }
  std::size_t in_rank() const { return table_.slot_rank(0); }
  std::size_t out_rank() const { return table_.out_rank(); }
  const Table& table() const { return table_; }
  const ModElem& at(const Tuple& t) const { return table_.at(t); }
  void set(const Tuple& t, ModElem v) { table_.set(t, std::move(v)); }
  bool is_zero() const { return table_.is_zero(); }

  ModuleMap as_map() const {
    if (arity() != 1) throw Error(ErrorCode::ArityMismatch, "only arity-1 cochains are maps");
    std::vector<ModElem> cols;
    for (std::size_t s = 0; s < in_rank(); ++s) cols.push_back(table_.at({s}));
    return ModuleMap(out_rank(), std::move(cols));
  }

  Cochain& operator+=(const Cochain& o) {
    table_ += o.table_;
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    table_ -= o.table_;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Poly& k, Cochain a) {
    a.table_ *= k;
    return a;
  }
  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  Table table_;
};

inline ModElem eval_cochain(const Cochain& phi, const std::vector<ModElem>& args, const std::vector<Poly>& weights) {
  return eval_multilinear(phi.table(), args, weights);
}

// Evaluates t on consecutive blocks of inputs. Block k spans sizes[k] inputs
// and is weighted by the sum of their formal weights; inputs are numbered from
// first_lambda. The final block carries no weight.
inline ModElem eval_on_blocks(const Table& t, const std::vector<ModElem>& args, const std::vector<std::size_t>& sizes,
                              std::uint32_t first_lambda) {
  std::vector<Poly> w;
  auto start = first_lambda;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    auto len = static_cast<std::uint32_t>(sizes[k]);
    w.push_back(Poly::lambda_sum(start, start + len));
    start += len;
  }
  return eval_multilinear(t, args, w);
}

inline std::vector<ModElem> basis_args(std::size_t rank, const Tuple& t, std::size_t from, std::size_t to) {
  std::vector<ModElem> out;
  for (auto k = from; k < to; ++k) out.push_back(basis_of(rank, t[k]));
  return out;
}

// (dφ)(a1..a_{n+1}) = a1·φ(a2..) + Σ(-1)^i φ(.., a_i a_{i+1}, ..) + (-1)^{n+1} φ(a1..an)·a_{n+1}
// for φ: A^n -> M, given the product of A and the two actions on M.
inline Cochain hochschild_d(const Cochain& phi, const Table& product, const Table& left, const Table& right) {
  const auto n = phi.arity();
  const auto ra = product.out_rank(), rm = left.out_rank();
  if (phi.in_rank() != ra || phi.out_rank() != rm)
    throw Error(ErrorCode::ShapeMismatch, "cochain does not map the algebra into the module");
  const auto& f = phi.table();
  return Cochain::build(n + 1, ra, rm, [&](const Tuple& t) {
    std::vector<std::size_t> ones(n, 1);
    auto tail = eval_on_blocks(f, basis_args(ra, t, 1, n + 1), ones, 2);
    ModElem out = eval2(left, basis_of(ra, t[0]), tail, lam(1));
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<ModElem> args = basis_args(ra, t, 0, i - 1);
      args.push_back(eval2(product, basis_of(ra, t[i - 1]), basis_of(ra, t[i]),
                           lam(static_cast<std::uint32_t>(i))));
      for (auto k = i + 1; k <= n; ++k) args.push_back(basis_of(ra, t[k]));
      std::vector<std::size_t> sizes(n, 1);
      sizes[i - 1] = 2;
      auto term = eval_on_blocks(f, args, sizes, 1);
      if (i % 2) out -= term;
      else out += term;
    }
    auto head = eval_on_blocks(f, basis_args(ra, t, 0, n), ones, 1);
    auto last = eval2(right, head, basis_of(ra, t[n]), Poly::lambda_sum(1, static_cast<std::uint32_t>(n + 1)));
    if ((n + 1) % 2) out -= last;
    else out += last;
    return out;
  });
}

inline Cochain hochschild_d(const Cochain& phi, const ConfAlgebra& alg, const ConfBimodule& bim) {
  return hochschild_d(phi, alg.product(), bim.left(), bim.right());
}

inline Verdict zero_verdict(const std::string& name, const Cochain& c, const CheckOptions& opt) {
  Verdict v(name);
  for_each_tuple(c.table().slot_ranks(), [&](const Tuple& t) { v.record(t, c.at(t), opt); });
  return v;
}

inline Verdict is_cocycle(const Cochain& phi, const ConfAlgebra& alg, const ConfBimodule& bim,
                          const CheckOptions& opt = {}) {
  return zero_verdict("cocycle", hochschild_d(phi, alg, bim), opt);
}

// φ_λ(a,b) = φ_{-λ-∂}(b,a), in addition to the cocycle condition.
inline Verdict is_commutative_cocycle(const Cochain& phi, const ConfAlgebra& alg, const ConfBimodule& bim,
                                      const CheckOptions& opt = {}) {
  if (phi.arity() != 2) throw Error(ErrorCode::ArityMismatch, "commutativity is defined for 2-cochains");
  Verdict v = is_cocycle(phi, alg, bim, opt);
  v.identity = "commutative cocycle";
  const auto r = phi.in_rank();
  for_each_tuple({r, r}, [&](const Tuple& t) {
    auto a = basis_of(r, t[0]), b = basis_of(r, t[1]);
    v.record(t, eval2(phi.table(), a, b, lam(1)) - eval2(phi.table(), b, a, flipped()), opt, "commutativity");
  });
  return v;
}

}  // namespace confalg
