#pragma once

// C[D]-linear maps between free modules, stored column by column.

#include <string>
#include <vector>

#include "confalg/table.hpp"

namespace confalg {

class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(std::size_t source_rank, std::size_t target_rank)
      : source_(source_rank), target_(target_rank), cols_(source_rank, ModElem(target_rank)) {}
  explicit ModuleMap(std::size_t target_rank, std::vector<ModElem> columns)
      : source_(columns.size()), target_(target_rank), cols_(std::move(columns)) {
    for (const auto& c : cols_) {
      if (c.rank() != target_) throw Error(ErrorCode::ModuleMismatch, "column rank");
      for (const auto& p : c.coeffs())
        for (auto v : p.variables())
          if (v.kind() != Var::Kind::D)
            throw Error(ErrorCode::ShapeMismatch, "module map entries may only use D, got " + v.name());
    }
  }
  static ModuleMap identity(std::size_t n) {
    std::vector<ModElem> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(ModElem::basis(n, i));
    return ModuleMap(n, std::move(cols));
  }
  // Rows of scalars, matrix[t][s] = coefficient of target t in the image of s.
  static ModuleMap from_rows(const std::vector<std::vector<Poly>>& rows, std::size_t source_rank) {
    std::vector<ModElem> cols(source_rank, ModElem(rows.size()));
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (rows[t].size() != source_rank) throw Error(ErrorCode::ShapeMismatch, "matrix row length");
      for (std::size_t s = 0; s < source_rank; ++s) cols[s][t] = rows[t][s];
    }
    return ModuleMap(rows.size(), std::move(cols));
  }

  std::size_t source_rank() const { return source_; }
  std::size_t target_rank() const { return target_; }
  const ModElem& column(std::size_t s) const { return cols_.at(s); }
  const Poly& entry(std::size_t t, std::size_t s) const { return cols_.at(s)[t]; }
  bool is_square() const { return source_ == target_; }
  bool is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const ModElem& c) { return c.is_zero(); });
  }

  ModElem operator()(const ModElem& x) const {
    if (x.rank() != source_)
      throw Error(ErrorCode::ModuleMismatch, "map source rank " + std::to_string(source_) + ", element rank " +
                                                 std::to_string(x.rank()));
    ModElem out(target_);
    for (std::size_t s = 0; s < source_; ++s)
      if (!x[s].is_zero()) out += x[s] * cols_[s];
    return out;
  }

  Table as_table() const {
    Table t({source_}, target_);
    for (std::size_t s = 0; s < source_; ++s) t.set({s}, cols_[s]);
    return t;
  }

  ModuleMap& operator+=(const ModuleMap& o) {
    require_same(o);
    for (std::size_t s = 0; s < source_; ++s) cols_[s] += o.cols_[s];
    return *this;
  }
  ModuleMap& operator-=(const ModuleMap& o) {
    require_same(o);
    for (std::size_t s = 0; s < source_; ++s) cols_[s] -= o.cols_[s];
    return *this;
  }
  friend ModuleMap operator+(ModuleMap a, const ModuleMap& b) { return a += b; }
  friend ModuleMap operator-(ModuleMap a, const ModuleMap& b) { return a -= b; }
  friend ModuleMap operator*(const Scalar& k, ModuleMap a) {
    for (auto& c : a.cols_) c *= Poly(k);
    return a;
  }
  friend ModuleMap operator-(ModuleMap a) { return Scalar(-1) * std::move(a); }
  friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

  std::string to_string(const FreeModule& src, const FreeModule& tgt) const {
    std::string s;
    for (std::size_t i = 0; i < source_; ++i) s += src.basis.at(i) + " -> " + cols_[i].to_string(tgt) + "; ";
    return s;
  }

 private:
  void require_same(const ModuleMap& o) const {
    if (o.source_ != source_ || o.target_ != target_) throw Error(ErrorCode::ShapeMismatch, "map shapes differ");
  }
  std::size_t source_ = 0, target_ = 0;
  std::vector<ModElem> cols_;
};

inline ModElem apply(const ModuleMap& f, const ModElem& x) { return f(x); }

// f ∘ g
inline ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (g.target_rank() != f.source_rank()) throw Error(ErrorCode::ShapeMismatch, "composition ranks");
  std::vector<ModElem> cols;
  for (std::size_t s = 0; s < g.source_rank(); ++s) cols.push_back(f(g.column(s)));
  return ModuleMap(f.target_rank(), std::move(cols));
}

inline ModuleMap power(const ModuleMap& f, unsigned k) {
  if (!f.is_square()) throw Error(ErrorCode::ShapeMismatch, "power of a non-square map");
  auto r = ModuleMap::identity(f.source_rank());
  for (unsigned i = 0; i < k; ++i) r = compose(f, r);
  return r;
}

namespace detail {

inline Poly det_rec(const std::vector<std::vector<Poly>>& m) {
  const auto n = m.size();
  if (n == 0) return Poly(1);
  if (n == 1) return m[0][0];
  Poly total;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][c] * det_rec(minor);
    if (c % 2) total -= term;
    else total += term;
  }
  return total;
}

inline std::vector<std::vector<Poly>> rows_of(const ModuleMap& f) {
  std::vector<std::vector<Poly>> m(f.target_rank(), std::vector<Poly>(f.source_rank()));
  for (std::size_t t = 0; t < f.target_rank(); ++t)
    for (std::size_t s = 0; s < f.source_rank(); ++s) m[t][s] = f.entry(t, s);
  return m;
}

}  // namespace detail

inline Poly determinant(const ModuleMap& f) {
  if (!f.is_square()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square map");
  return detail::det_rec(detail::rows_of(f));
}

// Inverse over C[D]; exists iff the determinant is a nonzero constant.
inline ModuleMap inverse(const ModuleMap& f) {
  auto det = determinant(f);
  if (det.is_zero() || !det.is_constant())
    throw Error(ErrorCode::NotInvertible, "determinant " + det.to_string() + " is not a unit of C[D]");
  const auto n = f.source_rank();
  const auto m = detail::rows_of(f);
  const Scalar inv_det = 1 / det.constant_term();
  std::vector<std::vector<Poly>> rows(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Poly>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Poly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Poly cof = detail::det_rec(minor) * inv_det;
      rows[i][j] = (i + j) % 2 ? -cof : cof;
    }
  return ModuleMap::from_rows(rows, n);
}

}  // namespace confalg
