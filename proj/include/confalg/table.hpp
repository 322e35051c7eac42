#pragma once

// Free C[D]-modules, their elements, n-ary structure tables and the
// sesquilinear evaluation rule shared by every product, action and cochain.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confalg/polyring.hpp"

namespace confalg {

struct FreeModule {
  std::vector<std::string> basis;

  FreeModule() = default;
  explicit FreeModule(std::vector<std::string> names) : basis(std::move(names)) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (basis[i] == basis[j]) throw Error(ErrorCode::Duplicate, "basis name " + basis[i] + " repeated");
  }
  static FreeModule numbered(const std::string& stem, std::size_t rank) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) names.push_back(stem + std::to_string(i + 1));
    return FreeModule(std::move(names));
  }

  std::size_t rank() const { return basis.size(); }
  std::optional<std::size_t> index_of(const std::string& n) const {
    auto it = std::find(basis.begin(), basis.end(), n);
    if (it == basis.end()) return std::nullopt;
    return static_cast<std::size_t>(it - basis.begin());
  }
  friend bool operator==(const FreeModule&, const FreeModule&) = default;
};

inline FreeModule direct_sum(const FreeModule& a, const FreeModule& b) {
  auto names = a.basis;
  for (const auto& n : b.basis) {
    auto candidate = n;
    while (std::find(names.begin(), names.end(), candidate) != names.end()) candidate += "'";
    names.push_back(candidate);
  }
  return FreeModule(std::move(names));
}

// Coordinates of an element of a free module of known rank.
class ModElem {
 public:
  ModElem() = default;
  explicit ModElem(std::size_t rank) : c_(rank) {}
  explicit ModElem(std::vector<Poly> coeffs) : c_(std::move(coeffs)) {}
  static ModElem basis(std::size_t rank, std::size_t i, Poly coeff = Poly(1)) {
    ModElem e(rank);
    e.c_.at(i) = std::move(coeff);
    return e;
  }

  std::size_t rank() const { return c_.size(); }
  const Poly& operator[](std::size_t i) const { return c_[i]; }
  Poly& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Poly>& coeffs() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  ModElem& operator+=(const ModElem& o) {
    check_rank(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  ModElem& operator-=(const ModElem& o) {
    check_rank(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  ModElem& operator*=(const Poly& p) {
    for (auto& x : c_) x *= p;
    return *this;
  }
  friend ModElem operator+(ModElem a, const ModElem& b) { return a += b; }
  friend ModElem operator-(ModElem a, const ModElem& b) { return a -= b; }
  friend ModElem operator-(ModElem a) { return a *= Poly(-1); }
  friend ModElem operator*(const Poly& p, ModElem a) { return a *= p; }
  friend ModElem operator*(ModElem a, const Poly& p) { return a *= p; }
  friend bool operator==(const ModElem&, const ModElem&) = default;

  // Restriction to coordinates [from, from + len).
  ModElem slice(std::size_t from, std::size_t len) const {
    return ModElem(std::vector<Poly>(c_.begin() + from, c_.begin() + from + len));
  }
  // Embedding into a larger module at offset.
  ModElem embed(std::size_t total, std::size_t offset) const {
    ModElem r(total);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[offset + i] = c_[i];
    return r;
  }
  ModElem substituted(const std::vector<std::pair<Var, Poly>>& b) const {
    ModElem r(rank());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = substitute_many(c_[i], b);
    return r;
  }

  std::string to_string(const FreeModule& m) const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const auto& p = c_[i];
      if (p.is_zero()) continue;
      // A single term keeps its sign outside; sums get parentheses.
      bool single = p.terms().size() == 1;
      bool neg = single && p.terms().begin()->second < 0;
      auto s = (neg ? Poly(-1) * p : p).to_string();
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      if (s == "1") out += m.basis.at(i);
      else if (single) out += s + "*" + m.basis.at(i);
      else out += "(" + s + ")*" + m.basis.at(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_rank(const ModElem& o) const {
    if (o.rank() != rank()) throw Error(ErrorCode::ModuleMismatch, "rank " + std::to_string(o.rank()) + " vs " + std::to_string(rank()));
  }
  std::vector<Poly> c_;
};

using Tuple = std::vector<std::size_t>;

// Calls f on every index tuple of the box ranks[0] x ... x ranks[n-1].
template <class F>
void for_each_tuple(const std::vector<std::size_t>& ranks, F&& f) {
  Tuple t(ranks.size(), 0);
  for (auto r : ranks)
    if (r == 0) return;
  while (true) {
    f(static_cast<const Tuple&>(t));
    std::size_t k = ranks.size();
    while (k > 0) {
      --k;
      if (++t[k] < ranks[k]) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (ranks.empty()) return;
  }
}

// Values on basis tuples of an n-ary sesquilinear map. Entry polynomials use
// D for the derivation acting on the result and L1..L(n-1) for the formal
// weights of the first n-1 slots.
class Table {
 public:
  Table() = default;
  Table(std::vector<std::size_t> slot_ranks, std::size_t out_rank)
      : slots_(std::move(slot_ranks)), out_(out_rank) {
    std::size_t n = 1;
    for (auto r : slots_) n *= r;
    values_.assign(n, ModElem(out_));
  }
  static Table square(std::size_t arity, std::size_t rank, std::size_t out_rank) {
    return Table(std::vector<std::size_t>(arity, rank), out_rank);
  }

  std::size_t arity() const { return slots_.size(); }
  const std::vector<std::size_t>& slot_ranks() const { return slots_; }
  std::size_t slot_rank(std::size_t j) const { return slots_.at(j); }
  std::size_t out_rank() const { return out_; }
  std::size_t size() const { return values_.size(); }

  std::size_t flat(const Tuple& t) const {
    if (t.size() != slots_.size()) throw Error(ErrorCode::ArityMismatch, "tuple length");
    std::size_t k = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] >= slots_[j]) throw std::out_of_range("basis index");
      k = k * slots_[j] + t[j];
    }
    return k;
  }
  const ModElem& at(const Tuple& t) const { return values_[flat(t)]; }
  ModElem& at(const Tuple& t) { return values_[flat(t)]; }
  void set(const Tuple& t, ModElem v) {
    if (v.rank() != out_) throw Error(ErrorCode::ModuleMismatch, "table value rank");
    values_[flat(t)] = std::move(v);
  }
  const std::vector<ModElem>& values() const { return values_; }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const ModElem& v) { return v.is_zero(); });
  }
  bool same_shape(const Table& o) const { return slots_ == o.slots_ && out_ == o.out_; }

  Table& operator+=(const Table& o) {
    require_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Table& operator-=(const Table& o) {
    require_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Table& operator*=(const Poly& p) {
    for (auto& v : values_) v *= p;
    return *this;
  }
  friend Table operator+(Table a, const Table& b) { return a += b; }
  friend Table operator-(Table a, const Table& b) { return a -= b; }
  friend Table operator*(const Poly& p, Table a) { return a *= p; }
  friend bool operator==(const Table&, const Table&) = default;

  // Fills every entry from f(tuple).
  template <class F>
  static Table build(std::vector<std::size_t> slot_ranks, std::size_t out_rank, F&& f) {
    Table t(std::move(slot_ranks), out_rank);
    for_each_tuple(t.slots_, [&](const Tuple& idx) { t.set(idx, f(idx)); });
    return t;
  }

 private:
  void require_shape(const Table& o) const {
    if (!same_shape(o)) throw Error(ErrorCode::ShapeMismatch, "table shapes differ");
  }
  std::vector<std::size_t> slots_;
  std::size_t out_ = 0;
  std::vector<ModElem> values_;
};

namespace detail {

inline void check_weight(const Poly& w) {
  if (w.constant_term() != 0 || w.total_degree() > 1)
    throw Error(ErrorCode::ShapeMismatch, "weight must be a linear form, got " + w.to_string());
}

inline bool weights_are_formal(const std::vector<Poly>& w) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!(w[k] == Poly::lambda(static_cast<std::uint32_t>(k + 1)))) return false;
  return true;
}

}  // namespace detail

// Evaluates table(args) at the given weights. A coefficient p(D) on argument
// j < n becomes p(-w_j); on the last argument it becomes p(D + sum w). The
// table's formal L1..L(n-1) are replaced by the weights, and its D is kept as
// the derivation of the result. A weight may itself contain D.
inline ModElem eval_multilinear(const Table& table, const std::vector<ModElem>& args, const std::vector<Poly>& weights) {
  const std::size_t n = table.arity();
  if (args.size() != n || weights.size() + 1 != n)
    throw Error(ErrorCode::ArityMismatch, "table arity " + std::to_string(n) + ", got " + std::to_string(args.size()) +
                                              " arguments and " + std::to_string(weights.size()) + " weights");
  for (std::size_t j = 0; j < n; ++j)
    if (args[j].rank() != table.slot_rank(j))
      throw Error(ErrorCode::ModuleMismatch, "argument " + std::to_string(j + 1) + " has rank " +
                                                 std::to_string(args[j].rank()) + ", slot expects " +
                                                 std::to_string(table.slot_rank(j)));
  for (const auto& w : weights) detail::check_weight(w);

  const Var d = Var::d();
  Poly total;
  for (const auto& w : weights) total += w;

  // Sesquilinear images of each argument coefficient, zeros dropped.
  std::vector<std::vector<std::pair<std::size_t, Poly>>> parts(n);
  for (std::size_t j = 0; j < n; ++j) {
    Poly image = j + 1 < n ? -weights[j] : Poly::d() + total;
    for (std::size_t i = 0; i < args[j].rank(); ++i) {
      const Poly& c = args[j][i];
      if (c.is_zero()) continue;
      parts[j].emplace_back(i, c.contains(d) ? substitute(c, d, image) : c);
    }
    if (parts[j].empty()) return ModElem(table.out_rank());
  }

  std::vector<std::pair<Var, Poly>> rename;
  if (!detail::weights_are_formal(weights))
    for (std::size_t k = 0; k < weights.size(); ++k)
      rename.emplace_back(Var::lambda(static_cast<std::uint32_t>(k + 1)), weights[k]);

  ModElem out(table.out_rank());
  Tuple idx(n);
  std::function<void(std::size_t, const Poly&)> walk = [&](std::size_t j, const Poly& factor) {
    if (j == n) {
      const ModElem& v = table.at(idx);
      if (v.is_zero()) return;
      for (std::size_t r = 0; r < v.rank(); ++r) {
        if (v[r].is_zero()) continue;
        out[r] += factor * (rename.empty() ? v[r] : substitute_many(v[r], rename));
      }
      return;
    }
    for (const auto& [i, c] : parts[j]) {
      idx[j] = i;
      walk(j + 1, factor * c);
    }
  };
  walk(0, Poly(1));
  return out;
}

// Binary shorthand: a_w b.
inline ModElem eval2(const Table& t, const ModElem& a, const ModElem& b, const Poly& w) {
  return eval_multilinear(t, {a, b}, {w});
}

struct CheckOptions {
  std::size_t witness_cap = 16;
};

struct Witness {
  Tuple tuple;
  std::string label;
  ModElem residual;
};

// Outcome of an identity check over basis tuples.
struct Verdict {
  std::string identity;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::size_t failures = 0;

  Verdict() = default;
  explicit Verdict(std::string name) : identity(std::move(name)) {}

  void record(const Tuple& t, const ModElem& residual, const CheckOptions& opt, std::string label = {}) {
    if (residual.is_zero()) return;
    holds = false;
    ++failures;
    if (witnesses.size() < std::max<std::size_t>(opt.witness_cap, 1))
      witnesses.push_back({t, label.empty() ? identity : std::move(label), residual});
  }
  void merge(const Verdict& o, const CheckOptions& opt) {
    if (o.holds) return;
    holds = false;
    failures += o.failures;
    for (const auto& w : o.witnesses)
      if (witnesses.size() < std::max<std::size_t>(opt.witness_cap, 1)) witnesses.push_back(w);
  }
  explicit operator bool() const { return holds; }
};

}  // namespace confalg
