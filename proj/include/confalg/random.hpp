#pragma once

// Seeded generators for polynomials, cochains, maps and tables with small
// integer coefficients and a per-variable degree cap.

#include <cstdint>
#include <random>

#include "confalg/cochain.hpp"
#include "confalg/modmap.hpp"

namespace confalg {

struct RandomSpec {
  unsigned max_degree = 2;  // per variable
  int coeff_bound = 2;      // coefficients in [-bound, bound]
  double density = 0.4;     // chance that a monomial is drawn at all
};

class Random {
 public:
  explicit Random(std::uint64_t seed, RandomSpec spec = {}) : eng_(seed), spec_(spec) {}

  const RandomSpec& spec() const { return spec_; }
  std::mt19937_64& engine() { return eng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(eng_); }

  // Polynomial in D and L1..L_lambdas.
  Poly poly(std::uint32_t lambdas, bool with_d = true) {
    Poly out;
    const auto nvars = lambdas + 1;
    std::vector<unsigned> exps(nvars, 0);
    const unsigned cap = spec_.max_degree;
    for (;;) {
      if (chance(spec_.density)) {
        auto c = integer(-spec_.coeff_bound, spec_.coeff_bound);
        if (c != 0 && (with_d || exps[0] == 0)) {
          Poly m(c);
          if (exps[0]) m = m * Poly::d().pow(exps[0]);
          for (std::uint32_t k = 1; k < nvars; ++k)
            if (exps[k]) m = m * Poly::lambda(k).pow(exps[k]);
          out += m;
        }
      }
      std::size_t k = 0;
      while (k < nvars && exps[k] == cap) exps[k++] = 0;
      if (k == nvars) break;
      ++exps[k];
    }
    return out;
  }

  ModElem elem(std::size_t rank, std::uint32_t lambdas, bool with_d = true) {
    ModElem e(rank);
    for (std::size_t i = 0; i < rank; ++i) e[i] = poly(lambdas, with_d);
    return e;
  }

  Cochain cochain(std::size_t arity, std::size_t in_rank, std::size_t out_rank) {
    return Cochain::build(arity, in_rank, out_rank,
                          [&](const Tuple&) { return elem(out_rank, static_cast<std::uint32_t>(arity - 1)); });
  }

  ModuleMap map(std::size_t source_rank, std::size_t target_rank) {
    std::vector<ModElem> cols;
    for (std::size_t s = 0; s < source_rank; ++s) cols.push_back(elem(target_rank, 0));
    return ModuleMap(target_rank, std::move(cols));
  }

  // Scalar map, no D.
  ModuleMap constant_map(std::size_t source_rank, std::size_t target_rank) {
    std::vector<ModElem> cols;
    for (std::size_t s = 0; s < source_rank; ++s) {
      ModElem c(target_rank);
      for (std::size_t t = 0; t < target_rank; ++t) c[t] = Poly(integer(-spec_.coeff_bound, spec_.coeff_bound));
      cols.push_back(std::move(c));
    }
    return ModuleMap(target_rank, std::move(cols));
  }

  // Binary table over D, L1.
  Table binary_table(std::size_t rank) {
    return Table::build({rank, rank}, rank, [&](const Tuple&) { return elem(rank, 1); });
  }

 private:
  std::mt19937_64 eng_;
  RandomSpec spec_;
};

}  // namespace confalg
