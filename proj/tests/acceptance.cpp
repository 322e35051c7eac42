// One pass/fail line per acceptance criterion, each under its time budget.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <sys/wait.h>

#include "confalg/cohomology.hpp"
#include "confalg/dsl.hpp"
#include "confalg/fixtures.hpp"
#include "oracle.hpp"
#include "samples.hpp"

using namespace confalg;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

int exit_status(int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; }

// Runs a shell command; returns (exit code, stdout).
std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  return {exit_status(pclose(p)), out};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::string cli() { return quote(CONFALG_CLI); }
std::string fixture(const std::string& rel) { return std::string(CONFALG_FIXTURES) + "/" + rel; }

// Residual of (ab)c - a(bc) at one triple, evaluated by hand from the table.
ModElem associator_at(const Table& p, const Tuple& t) {
  const auto r = p.out_rank();
  auto a = basis_of(r, t[0]), b = basis_of(r, t[1]), c = basis_of(r, t[2]);
  return left_nested(p, p, a, b, c) - right_nested(p, p, a, b, c);
}

// 1. Every single +1 change of a structure constant is classified correctly.
Outcome axiom_engine() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto f6 = fixtures::nilpotent_pair();
  std::vector<std::pair<std::string, ConfAlgebra>> bases{
      {"dual numbers", f1},
      {"a·a = b", f6},
      {"semidirect", semidirect(f1, adjoint(f1))},
      {"twisted extension", twisted_extension(f6, adjoint(f6), fixtures::lambda_cocycle())}};
  std::size_t total = 0, broken = 0;
  for (const auto& [name, alg] : bases) {
    o.require(bool(check_associative(alg)), name + " not associative");
    bool plain = true;
    try {
      oracle::from_table(alg.product());
    } catch (const std::invalid_argument&) {
      plain = false;
    }
    for (const auto& m : samples::mutations(alg.product(), Poly(1))) {
      ++total;
      auto v = check_associative_table(m.table);
      // Independent verdict: plain structure constants where possible, else [θ,θ].
      bool truth = plain ? oracle::associative(oracle::from_table(m.table)) : g_bracket(Cochain(m.table), Cochain(m.table)).is_zero();
      if (bool(v) != truth) o.require(false, name + ": verdict disagrees with the independent check");
      if (!truth) {
        ++broken;
        bool witnessed = !v.witnesses.empty();
        for (const auto& w : v.witnesses) witnessed = witnessed && !associator_at(m.table, w.tuple).is_zero();
        if (!witnessed) o.require(false, name + ": non-associative mutation without a valid witness triple");
      }
    }
  }
  o.note = std::to_string(broken) + "/" + std::to_string(total) + " mutations break associativity, all witnessed; " +
           std::to_string(total - broken) + " stay associative and are confirmed so" + (o.note.empty() ? "" : "; " + o.note);
  return o;
}

// 2. d∘d = 0 and the named cocycles.
Outcome hochschild() {
  Outcome o;
  Random rng(2024, RandomSpec{2, 3, 0.5});
  auto f1 = fixtures::dual_numbers(), f6 = fixtures::nilpotent_pair();
  int zero = 0;
  for (int k = 0; k < 50; ++k) {
    const auto& alg = k % 2 ? f6 : f1;
    auto adj = adjoint(alg);
    auto f = rng.cochain(1 + (k / 2) % 2, 2, 2);
    zero += hochschild_d(hochschild_d(f, alg, adj), alg, adj).is_zero();
  }
  o.require(zero == 50, std::to_string(50 - zero) + " samples with d∘d != 0");
  o.require(bool(is_cocycle(Cochain::from_map(fixtures::nilpotent_derivation()), f6, adjoint(f6))), "derivation not a 1-cocycle");
  o.require(bool(is_cocycle(fixtures::lambda_cocycle(), f6, adjoint(f6))), "λ-cocycle not closed");
  o.require(bool(is_cocycle(fixtures::negated_product(f1), f1, adjoint(f1))), "-mult not closed");
  if (o.ok) o.note = "50/50 samples";
  return o;
}

// 3. The O-operator stack on the shift u -> v.
Outcome o_stack() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto t = fixtures::dual_shift();
  o.require(bool(verify_O(t, f1, adj)), "not an O-operator");
  o.require(bool(check_structure(dendriform_from_O(t, f1, adj))), "dendriform axioms");
  auto star = m_ass(t, f1, adj);
  o.require(bool(check_associative(star)), "star not associative");
  o.require(bool(check_bimodule(star, induced_bimodule_on_A(t, f1, adj))), "induced bimodule");
  o.require(bool(check_lie(commutator_lie(star))), "commutator of star not Lie");
  o.require(bool(verify_operator(op::OLie{rep_from_bimodule(f1, adj)}, t, commutator_lie(f1))), "not an O-operator on the commutator");
  return o;
}

// 4. Four characterizations of O-operators agree.
Outcome maurer_cartan() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  Random rng(77, RandomSpec{2, 3, 0.5});
  int is_o = 0, agree = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    auto r = maurer_cartan_check(samples::dual_map(rng, k), f1, adj);
    agree += r.consistent();
    is_o += r.is_o;
    if (r.is_o) o.require(r.bracket_associative && r.bracket_components, "bracket with the lifted product");
  }
  o.require(agree == 20, std::to_string(20 - agree) + " samples disagree");
  o.require(is_o > 0 && is_o < 20, "samples do not cover both outcomes");
  o.note = std::to_string(agree) + "/20 agree, " + std::to_string(is_o) + " O-operators" + (o.ok ? "" : "; " + o.note);
  return o;
}

// 5. Derived bracket: two formulas, graded Leibniz for both brackets, and [S,S] = 0 iff associative.
Outcome derived_bracket() {
  Outcome o;
  Random rng(55, RandomSpec{2, 2, 0.4});
  auto f1 = fixtures::dual_numbers(), f6 = fixtures::nilpotent_pair();
  for (int k = 0; k < 20; ++k) {
    const auto& alg = k % 2 ? f6 : f1;
    auto adj = adjoint(alg);
    auto f = rng.cochain(1 + k % 2, 2, 2), g = rng.cochain(1 + (k / 2) % 2, 2, 2);
    if (derived_bracket_direct(f, g, alg, adj) != derived_bracket_lift(f, g, alg, adj))
      o.require(false, "direct and lifted brackets differ at sample " + std::to_string(k));
  }
  auto adj = adjoint(f1);
  auto br = [&](const Cochain& x, const Cochain& y) { return derived_bracket_direct(x, y, f1, adj); };
  for (int k = 0; k < 10; ++k) {
    std::size_t a = 1 + k % 2, b = 1 + (k / 2) % 2, c = 1;
    auto f = rng.cochain(a, 2, 2), g = rng.cochain(b, 2, 2), h = rng.cochain(c, 2, 2);
    auto swap = br(g, br(f, h));
    if ((a * b) % 2) swap = Poly(-1) * swap;
    if (br(f, br(g, h)) != br(br(f, g), h) + swap) o.require(false, "Leibniz fails at sample " + std::to_string(k));
  }
  // Gerstenhaber bracket: [f,[g,h]] = [[f,g],h] + (-1)^{(m-1)(n-1)}[g,[f,h]].
  for (int k = 0; k < 10; ++k) {
    std::size_t a = 1, b = 1 + k % 2, c = 2;
    auto f = rng.cochain(a, 2, 2), g = rng.cochain(b, 2, 2), h = rng.cochain(c, 2, 2);
    auto swap = g_bracket(g, g_bracket(f, h));
    if (((a - 1) * (b - 1)) % 2) swap = Poly(-1) * swap;
    if (g_bracket(f, g_bracket(g, h)) != g_bracket(g_bracket(f, g), h) + swap)
      o.require(false, "graded Jacobi fails at sample " + std::to_string(k));
  }
  int assoc = 0;
  for (std::size_t k = 0; k < 10; ++k) {
    auto s = samples::binary_table(rng, k);
    bool a = bool(check_associative_table(s));
    assoc += a;
    if (g_bracket(Cochain(s), Cochain(s)).is_zero() != a) o.require(false, "[S,S] = 0 disagrees with associativity");
  }
  o.require(assoc > 0 && assoc < 10, "tables do not cover both outcomes");
  return o;
}

// 6. Powers of the shift.
Outcome hierarchy() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto n = fixtures::dual_shift();
  auto h = nijenhuis_hierarchy(n, f1, 3);
  std::size_t held = 0;
  for (const auto& v : h.verdicts) held += bool(v);
  o.require(held == h.verdicts.size(), std::to_string(h.verdicts.size() - held) + " hierarchy identities fail");
  auto c = deformed_product_claims(n, f1);
  o.require(c.associative && c.homomorphism, "deformed product");
  auto bad = deformed_product_claims(fixtures::swap_mutant(), f1);
  o.require(!verify_nijenhuis(fixtures::swap_mutant(), f1), "mutant is Nijenhuis");
  o.require(bad.equivalent && !bad.associative && !bad.cocycle, "associative iff cocycle on the mutant");
  if (o.ok) o.note = std::to_string(held) + " identities";
  return o;
}

// 7. Twisted Rota-Baxter stack for id with φ = -mult.
Outcome twisted() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto adj = adjoint(f1);
  auto phi = fixtures::negated_product(f1);
  auto id = ModuleMap::identity(2);
  o.require(bool(verify_operator(op::TwistedRB{phi}, id, f1, &adj)), "not twisted Rota-Baxter");
  auto ns = ns_from_twisted(id, f1, adj, phi);
  o.require(bool(check_structure(ns)), "NS axioms");
  o.require(bool(check_associative_table(ns.sum())), "sum of the NS products not associative");
  o.require(bool(check_bimodule(m_ass(id, f1, adj, &phi), induced_bimodule_on_A(id, f1, adj, &phi))), "induced bimodule");
  auto m1 = modified_mc_check(id, phi, f1, adj);
  o.require(m1.consistent() && m1.twisted_rb, "modified Maurer-Cartan on id");
  auto m2 = modified_mc_check(fixtures::dual_shift(), Cochain(2, 2, 2), f1, adj);
  o.require(m2.consistent() && m2.twisted_rb, "modified Maurer-Cartan on the shift");
  return o;
}

// 8. R = id - d with d² = 0.
Outcome reynolds() {
  Outcome o;
  auto f6 = fixtures::nilpotent_pair();
  auto d = fixtures::nilpotent_derivation();
  auto r = fixtures::nilpotent_reynolds();
  auto id = ModuleMap::identity(2);
  o.require(bool(verify_operator(op::Reynolds{}, r, f6)), "R not Reynolds");
  o.require(compose(d, d).is_zero(), "d² != 0");
  o.require(inverse(r) == id + d, "R⁻¹ != id + d");
  o.require(bool(verify_operator(op::Derivation{}, inverse(r) - id, f6)), "R⁻¹ - id not a derivation");
  o.require(reynolds_from_derivation(d, f6, 4) == r, "construction from d");
  return o;
}

// 9. Trivial deformation of the shift, and the t² term on a mutant.
Outcome deformation() {
  Outcome o;
  auto f1 = fixtures::dual_numbers();
  auto r = deformation_check(fixtures::dual_shift(), f1);
  o.require(r.associative && r.cocycle && r.trivializes && r.second_order, "shift deformation");
  auto m = deformation_check(fixtures::shift_mutant(), f1, Validation::unchecked);
  o.require(!verify_nijenhuis(fixtures::shift_mutant(), f1), "mutant is Nijenhuis");
  o.require(m.associative && m.cocycle && !m.second_order && !m.trivializes, "t² obstruction on the mutant");
  return o;
}

// 10. The command line tool.
Outcome command_line() {
  Outcome o;
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / ("confalg_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  for (const char* name : {"all.cfa", "broken/nonassociative.cfa", "broken/not_operator.cfa"}) {
    auto [c1, once] = capture(cli() + " emit " + quote(fixture(name)));
    auto tmp = (dir / "once.cfa").string();
    std::ofstream(tmp) << once;
    auto [c2, twice] = capture(cli() + " emit " + quote(tmp));
    o.require(c1 == 0 && c2 == 0 && once == twice && !once.empty(), std::string("round trip of ") + name);
  }
  Random rng(31);
  std::string corpus;
  for (std::size_t k = 0; k < 20; ++k) {
    auto t = samples::binary_table(rng, k);
    corpus += dsl::emit_algebra("R" + std::to_string(k), ConfAlgebra(FreeModule::numbered("e", t.out_rank()), t));
  }
  auto tmp = (dir / "random.cfa").string();
  std::ofstream(tmp) << corpus;
  auto [cr, back] = capture(cli() + " emit " + quote(tmp));
  o.require(cr == 0 && back == corpus, "round trip of 20 random algebras");

  auto json = (dir / "report.json").string();
  int code = exit_status(std::system((cli() + " check " + quote(fixture("all.cfa")) + " --json > " + quote(json)).c_str()));
  o.require(code == 0, "check all.cfa exited " + std::to_string(code));
  int valid = exit_status(std::system((quote(CONFALG_PYTHON) + " " + quote(CONFALG_VALIDATOR) + " " + quote(CONFALG_SCHEMA) +
                                       " " + quote(json) + " > /dev/null")
                                          .c_str()));
  o.require(valid == 0, "report does not validate");

  for (auto [stem, want] : std::vector<std::pair<std::string, int>>{
           {"nonassociative", 1}, {"not_operator", 1}, {"bad_exponent", 2}, {"unresolved", 2}, {"duplicate", 2}}) {
    int got = exit_status(std::system((cli() + " check " + quote(fixture("broken/" + stem + ".cfa")) + " > /dev/null 2>&1").c_str()));
    o.require(got == want, stem + " exited " + std::to_string(got));
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"axiom engine", 1, axiom_engine},      {"Hochschild differential", 30, hochschild},
      {"O-operator stack", 5, o_stack},       {"Maurer-Cartan equivalences", 60, maurer_cartan},
      {"derived bracket", 60, derived_bracket}, {"Nijenhuis hierarchy", 30, hierarchy},
      {"twisted stack", 10, twisted},         {"Reynolds", 1, reynolds},
      {"deformation", 5, deformation},        {"command line", 10, command_line},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) o.require(false, "over budget");
    failed += !o.ok;
    std::printf("criterion %zu: %s  %s (%.3f s of %.0f s)%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                o.note.empty() ? "" : "  ", o.note.c_str());
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
