#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "confalg/errors.hpp"

namespace confalg {

using Scalar = mpq_class;

// D is the derivation, Lambda(k) the k-th formal weight, Aux a named
// parameter that never takes part in sesquilinear substitution.
class Var {
 public:
  enum class Kind { D, Lambda, Aux };

  static Var d() { return Var(0); }
  static Var lambda(std::uint32_t k) {
    if (k == 0 || k >= kAuxBase) throw std::invalid_argument("lambda index out of range");
    return Var(k);
  }
  static Var aux(const std::string& name) { return Var(kAuxBase + registry().intern(name)); }

  Kind kind() const {
    if (id_ == 0) return Kind::D;
    return id_ < kAuxBase ? Kind::Lambda : Kind::Aux;
  }
  std::uint32_t index() const { return kind() == Kind::Aux ? id_ - kAuxBase : id_; }
  std::uint32_t id() const { return id_; }
  std::string name() const {
    switch (kind()) {
      case Kind::D: return "D";
      case Kind::Lambda: return "L" + std::to_string(id_);
      case Kind::Aux: return registry().name(id_ - kAuxBase);
    }
    return {};
  }
  static Var from_id(std::uint32_t id) { return Var(id); }

  friend bool operator==(Var a, Var b) { return a.id_ == b.id_; }
  friend auto operator<=>(Var a, Var b) { return a.id_ <=> b.id_; }

 private:
  static constexpr std::uint32_t kAuxBase = 1u << 20;
  explicit Var(std::uint32_t id) : id_(id) {}

  class Registry {
   public:
    std::uint32_t intern(const std::string& n) {
      std::lock_guard lock(mu_);
      auto it = ids_.find(n);
      if (it != ids_.end()) return it->second;
      auto id = static_cast<std::uint32_t>(names_.size());
      names_.push_back(n);
      ids_.emplace(n, id);
      return id;
    }
    std::string name(std::uint32_t id) const {
      std::lock_guard lock(mu_);
      return names_.at(id);
    }

   private:
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
  };
  static Registry& registry() {
    static Registry r;
    return r;
  }

  std::uint32_t id_;
};

// Sorted (variable id, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

class Poly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  Poly() = default;
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Scalar& c) {            // NOLINT(google-explicit-constructor)
    Scalar r = c;
    r.canonicalize();  // mpq_class(num, den) is not reduced on construction
    if (r != 0) terms_.emplace(Monomial{}, std::move(r));
  }
  Poly(Var v) { terms_.emplace(Monomial{{v.id(), 1}}, Scalar(1)); }  // NOLINT

  static Poly d() { return Poly(Var::d()); }
  static Poly lambda(std::uint32_t k) { return Poly(Var::lambda(k)); }
  static Poly aux(const std::string& n) { return Poly(Var::aux(n)); }
  // L_from + ... + L_{to-1}
  static Poly lambda_sum(std::uint32_t from, std::uint32_t to) {
    Poly s;
    for (auto k = from; k < to; ++k) s += lambda(k);
    return s;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Scalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool contains(Var v) const {
    for (const auto& [m, c] : terms_)
      for (const auto& [id, e] : m)
        if (id == v.id()) return true;
    return false;
  }
  std::vector<Var> variables() const {
    std::vector<std::uint32_t> ids;
    for (const auto& [m, c] : terms_)
      for (const auto& [id, e] : m) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Var> out;
    for (auto id : ids) out.push_back(Var::from_id(id));
    return out;
  }
  unsigned degree_in(Var v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [id, e] : m)
        if (id == v.id()) d = std::max(d, e);
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned s = 0;
      for (const auto& [id, e] : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  // Coefficient of v^k, as a polynomial in the remaining variables.
  Poly coefficient(Var v, unsigned k) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      unsigned e = 0;
      Monomial rest;
      for (const auto& p : m) {
        if (p.first == v.id()) e = p.second;
        else rest.push_back(p);
      }
      if (e == k) r.add_term(rest, c);
    }
    return r;
  }

  void add_term(const Monomial& m, Scalar c) {
    c.canonicalize();
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, std::move(c));
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(Scalar s) {
    s.canonicalize();
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Scalar(-1); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  // Integer literals would otherwise be ambiguous between Scalar and Poly.
  friend Poly operator*(Poly a, long s) { return a *= Scalar(s); }
  friend Poly operator*(long s, Poly a) { return a *= Scalar(s); }
  friend Poly operator+(Poly a, long s) { return a += Poly(s); }
  friend Poly operator+(long s, Poly a) { return a += Poly(s); }
  friend Poly operator-(Poly a, long s) { return a -= Poly(s); }
  friend Poly operator-(long s, const Poly& a) { return Poly(s) - a; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned k) const {
    Poly r(1), base = *this;
    while (k) {
      if (k & 1u) r *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return r;
  }

  std::string to_string() const;

 private:
  Terms terms_;
};

inline std::string scalar_to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then D before L1 before L2, higher powers first.
  std::vector<const Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  auto deg = [](const Monomial& m) {
    unsigned s = 0;
    for (const auto& p : m) s += p.second;
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
    const auto &ma = a->first, &mb = b->first;
    if (deg(ma) != deg(mb)) return deg(ma) > deg(mb);
    for (std::size_t i = 0; i < ma.size() && i < mb.size(); ++i) {
      if (ma[i].first != mb[i].first) return ma[i].first < mb[i].first;
      if (ma[i].second != mb[i].second) return ma[i].second > mb[i].second;
    }
    return ma.size() > mb.size();
  });
  for (const auto* t : order) {
    const auto& [m, c] = *t;
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && !m.empty();
    if (!unit) os << scalar_to_string(mag);
    bool need_star = !unit;
    for (const auto& [id, e] : m) {
      if (need_star) os << "*";
      os << Var::from_id(id).name();
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

// Simultaneous substitution; images are never re-substituted.
inline Poly substitute_many(const Poly& p, const std::vector<std::pair<Var, Poly>>& bindings) {
  for (std::size_t i = 0; i < bindings.size(); ++i)
    for (std::size_t j = i + 1; j < bindings.size(); ++j)
      if (bindings[i].first == bindings[j].first)
        throw Error(ErrorCode::DuplicateBinding, "variable " + bindings[i].first.name() + " bound twice");
  if (bindings.empty() || p.is_zero()) return p;

  std::map<std::uint32_t, const Poly*> image;
  for (const auto& [v, q] : bindings) image.emplace(v.id(), &q);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> powers;
  auto power = [&](std::uint32_t id, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(id, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, image.at(id)->pow(e)).first;
    return it->second;
  };

  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    Poly factor(c);
    for (const auto& [id, e] : m) {
      if (image.count(id)) factor = factor * power(id, e);
      else kept.emplace_back(id, e);
    }
    if (kept.empty()) {
      out += factor;
    } else {
      Poly mono;
      mono.add_term(kept, Scalar(1));
      out += factor * mono;
    }
  }
  return out;
}

inline Poly substitute(const Poly& p, Var v, const Poly& image) { return substitute_many(p, {{v, image}}); }

}  // namespace confalg
