#pragma once

// Executes the check/construct statements of a parsed file and collects one
// record per statement.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "confalg/cohomology.hpp"
#include "confalg/dsl.hpp"
#include "confalg/random.hpp"

namespace confalg {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::uint64_t seed = 1;
  unsigned max_degree = 2;
  std::size_t witness_cap = 16;
  unsigned samples = 10;
};

enum class Status { holds, fails, error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::error: return "error";
  }
  return "?";
}

struct WitnessRecord {
  Tuple tuple;
  std::vector<std::string> args;  // basis names when the slots share one module
  std::string label;
  std::string residual;
};

struct Record {
  std::string statement;
  std::string identity;
  Status status = Status::holds;
  std::vector<WitnessRecord> witnesses;
  double elapsed_ms = 0;
  std::string detail;
  std::string output;      // emitted text of constructions
  std::string error_code;  // set when status is error
};

struct Report {
  std::string command;
  std::uint64_t seed = 1;
  std::string version = kVersion;
  std::vector<Record> records;

  // 0 all hold, 1 some check fails, 2 some statement errored.
  int exit_code() const {
    int code = 0;
    for (const auto& r : records) {
      if (r.status == Status::error) return 2;
      if (r.status == Status::fails) code = 1;
    }
    return code;
  }
};

namespace detail {

struct Names {
  const FreeModule* slots = nullptr;
  const FreeModule* out = nullptr;
};

inline Record from_verdict(const Verdict& v, Names names) {
  Record r;
  r.identity = v.identity;
  r.status = v.holds ? Status::holds : Status::fails;
  for (const auto& w : v.witnesses) {
    WitnessRecord wr{w.tuple, {}, w.label, {}};
    if (names.slots)
      for (auto i : w.tuple) wr.args.push_back(i < names.slots->rank() ? names.slots->basis[i] : "#" + std::to_string(i));
    auto out = names.out && names.out->rank() == w.residual.rank() ? *names.out : FreeModule::numbered("e", w.residual.rank());
    wr.residual = w.residual.to_string(out);
    r.witnesses.push_back(std::move(wr));
  }
  if (!v.holds && r.witnesses.empty()) r.witnesses.push_back({{}, {}, v.identity, "nonzero"});
  if (!v.holds && v.failures > v.witnesses.size())
    r.detail = std::to_string(v.failures) + " failing tuples, " + std::to_string(v.witnesses.size()) + " shown";
  return r;
}

// Several verdicts folded into one record.
inline Record from_verdicts(std::string name, const std::vector<const Verdict*>& vs, Names names, std::size_t cap) {
  Verdict all(std::move(name));
  for (const auto* v : vs) {
    if (v->holds) continue;
    all.holds = false;
    all.failures += v->failures;
    for (const auto& w : v->witnesses) {
      if (all.witnesses.size() >= cap) break;
      all.witnesses.push_back({w.tuple, w.label == v->identity ? v->identity : v->identity + ": " + w.label, w.residual});
    }
    if (v->witnesses.empty() && all.witnesses.size() < cap) all.witnesses.push_back({{}, v->identity, ModElem()});
  }
  return from_verdict(all, names);
}

inline const char* yes(bool b) { return b ? "yes" : "no"; }

class Executor {
 public:
  Executor(const dsl::SourceFile& f, const RunOptions& o) : file_(f), opt_(o), check_{o.witness_cap} {}

  Record run(const dsl::Command& c) {
    auto start = std::chrono::steady_clock::now();
    Record r;
    try {
      r = c.construct ? construct(c) : check(c);
    } catch (const Error& e) {
      r = Record{};
      r.status = Status::error;
      r.error_code = std::string(confalg::to_string(e.code()));
      r.detail = e.what();
    }
    r.statement = c.text;
    if (r.identity.empty()) r.identity = c.kind;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  const dsl::SourceFile& file_;
  RunOptions opt_;
  CheckOptions check_;

  std::string arg(const dsl::Command& c, const std::string& k) const {
    auto it = c.args.find(k);
    return it == c.args.end() ? std::string() : it->second;
  }
  const dsl::MapDef& map_of(const dsl::Command& c) const { return file_.get<dsl::MapDef>(c.subject, "map"); }

  // Algebra named by 'on', else the map's target or source algebra.
  std::string algebra_name(const dsl::Command& c) const {
    if (auto a = arg(c, "on"); !a.empty()) return a;
    const auto& m = map_of(c);
    if (m.target_side == dsl::Side::algebra) return m.target;
    if (m.source_side == dsl::Side::algebra) return m.source;
    throw Error(ErrorCode::Unresolved, "no algebra for '" + c.subject + "'; add 'on'");
  }
  const ConfAlgebra& algebra(const std::string& n) const { return file_.get<dsl::AlgebraDef>(n, "algebra").algebra; }

  // Bimodule named by 'with', else the map's source bimodule, else adjoint.
  ConfBimodule bimodule(const dsl::Command& c, const std::string& alg) const {
    auto w = arg(c, "with");
    if (w.empty() && file_.find<dsl::MapDef>(c.subject)) {
      const auto& m = map_of(c);
      if (m.source_side == dsl::Side::bimodule) w = m.source;
      else if (m.target_side == dsl::Side::bimodule) w = m.target;
    }
    if (!w.empty()) {
      const auto& b = file_.get<dsl::BimoduleDef>(w, "bimodule");
      if (b.algebra != alg)
        throw Error(ErrorCode::ModuleMismatch, "bimodule '" + w + "' is over '" + b.algebra + "', not '" + alg + "'");
      return b.bimodule;
    }
    return adjoint(algebra(alg));
  }
  std::optional<Cochain> twist(const dsl::Command& c) const {
    auto t = arg(c, "twist");
    if (t.empty()) return std::nullopt;
    return file_.get<dsl::CocycleDef>(t, "cocycle").cochain;
  }
  Cochain required_twist(const dsl::Command& c) const {
    if (auto t = twist(c)) return *t;
    throw Error(ErrorCode::PreconditionFailed, c.kind + " needs a 'twist' cocycle");
  }

  Record check(const dsl::Command& c) {
    const auto& k = c.kind;
    if (k == "associative" || k == "lie") {
      const auto& a = algebra(c.subject);
      return from_verdict(k == "lie" ? check_lie(a, check_) : check_associative(a, check_), {&a.module(), &a.module()});
    }
    if (k == "bimodule") {
      const auto& b = file_.get<dsl::BimoduleDef>(c.subject, "bimodule");
      return from_verdict(check_bimodule(algebra(b.algebra), b.bimodule, check_), {nullptr, &b.bimodule.module()});
    }
    if (k == "cocycle" || k == "commutative_cocycle") {
      const auto& d = file_.get<dsl::CocycleDef>(c.subject, "cocycle");
      const auto& a = algebra(d.algebra);
      auto b = file_.bimodule_or_adjoint(d.bimodule, d.algebra);
      auto v = k == "cocycle" ? is_cocycle(d.cochain, a, b, check_) : is_commutative_cocycle(d.cochain, a, b, check_);
      return from_verdict(v, {&a.module(), &b.module()});
    }
    if (k == "structure") {
      const auto& s = file_.get<dsl::StructureDef>(c.subject, "structure").bundle;
      return from_verdict(check_structure(s, check_), {&s.module, &s.module});
    }
    if (k == "d2") return d2(c);

    const auto& t = map_of(c).map;
    const auto an = algebra_name(c);
    const auto& a = algebra(an);
    auto b = bimodule(c, an);
    Names alg_names{&a.module(), &a.module()};
    Names bim_names{&b.module(), &a.module()};
    if (k == "O") return from_verdict(verify_O(t, a, b, check_), bim_names);
    if (k == "rota_baxter")
      return from_verdict(verify_operator(op::RotaBaxter{c.weight.value_or(Poly())}, t, a, nullptr, check_), alg_names);
    if (k == "twisted_rb") return from_verdict(verify_operator(op::TwistedRB{required_twist(c)}, t, a, &b, check_), bim_names);
    if (k == "nijenhuis") return from_verdict(verify_nijenhuis(t, a, check_), alg_names);
    if (k == "reynolds") return from_verdict(verify_operator(op::Reynolds{}, t, a, nullptr, check_), alg_names);
    if (k == "derivation") {
      auto v = verify_operator(op::Derivation{}, t, a, &b, check_);
      return from_verdict(v, {&a.module(), &b.module()});
    }
    if (k == "olie") {
      auto lie = commutator_lie(a);
      return from_verdict(verify_operator(op::OLie{rep_from_bimodule(a, b)}, t, lie, nullptr, check_), bim_names);
    }
    if (k == "graph") {
      auto phi = twist(c);
      return from_verdict(graph_check(t, a, b, phi ? &*phi : nullptr, check_), {&b.module(), &a.module()});
    }
    if (k == "dendriform") {
      auto s = dendriform_from_O(t, a, b);
      return from_verdict(check_structure(s, check_), {&s.module, &s.module});
    }
    if (k == "ns") {
      auto phi = twist(c);
      auto s = phi ? ns_from_twisted(t, a, b, *phi) : ns_from_nijenhuis(t, a);
      return from_verdict(check_structure(s, check_), {&s.module, &s.module});
    }
    if (k == "mc") {
      auto m = maurer_cartan_check(t, a, b, check_);
      Record r = from_verdict(m.operator_verdict, bim_names);
      r.identity = "Maurer-Cartan";
      r.detail = std::string("O-operator: ") + yes(m.is_o) + "; closed-formula bracket zero: " + yes(m.derived_zero) +
                 "; lifted bracket zero: " + yes(m.lifted_zero) + "; closed in its complex: " + yes(m.closed);
      if (!m.consistent()) {
        r.status = Status::error;
        r.error_code = "PreconditionFailed";
        r.detail = "characterizations disagree: " + r.detail;
      } else if (m.is_o) {
        r.detail += std::string("; bracket with the lifted product associative: ") + yes(bool(m.bracket_associative)) +
                    ", components match: " + yes(bool(m.bracket_components));
      }
      return r;
    }
    if (k == "modified_mc") {
      auto m = modified_mc_check(t, required_twist(c), a, b, check_);
      Record r = from_verdict(m.operator_verdict, bim_names);
      r.identity = "modified Maurer-Cartan";
      r.detail = std::string("twisted Rota-Baxter: ") + yes(m.twisted_rb) + "; modified equation: " + yes(m.modified_mc) +
                 "; cubic term equals -6 T(phi(T,T)): " + yes(m.cubic_identity);
      if (!m.consistent()) {
        r.status = Status::error;
        r.error_code = "PreconditionFailed";
        r.detail = "characterizations disagree: " + r.detail;
      }
      return r;
    }
    if (k == "hierarchy") {
      auto bound = static_cast<unsigned>(std::stoul(arg(c, "bound").empty() ? "3" : arg(c, "bound")));
      auto h = nijenhuis_hierarchy(t, a, bound, check_);
      std::vector<const Verdict*> vs;
      for (const auto& v : h.verdicts) vs.push_back(&v);
      auto r = from_verdicts("Nijenhuis hierarchy", vs, alg_names, opt_.witness_cap);
      r.detail = std::to_string(h.verdicts.size()) + " identities checked";
      return r;
    }
    if (k == "deformation") {
      auto d = deformation_check(t, a, Validation::checked, check_);
      auto r = from_verdicts("trivial deformation", {&d.associative, &d.cocycle, &d.trivializes}, alg_names, opt_.witness_cap);
      r.detail = std::string("second-order term vanishes: ") + yes(bool(d.second_order));
      return r;
    }
    throw Error(ErrorCode::Syntax, "unknown check '" + k + "'");
  }

  Record d2(const dsl::Command& c) {
    const auto& a = algebra(c.subject);
    auto w = arg(c, "with");
    auto b = w.empty() ? adjoint(a) : file_.bimodule_or_adjoint(w, c.subject);
    if (!w.empty() && file_.get<dsl::BimoduleDef>(w, "bimodule").algebra != c.subject)
      throw Error(ErrorCode::ModuleMismatch, "bimodule '" + w + "' is not over '" + c.subject + "'");
    auto samples = arg(c, "bound").empty() ? opt_.samples : static_cast<unsigned>(std::stoul(arg(c, "bound")));
    Random rng(opt_.seed, RandomSpec{opt_.max_degree, 2, 0.4});
    Verdict v("d squared");
    for (unsigned s = 0; s < samples; ++s) {
      auto phi = rng.cochain(1 + s % 2, a.rank(), b.rank());
      auto dd = hochschild_d(hochschild_d(phi, a, b), a, b);
      for_each_tuple(dd.table().slot_ranks(), [&](const Tuple& t) {
        v.record(t, dd.at(t), check_, "sample " + std::to_string(s));
      });
    }
    auto r = from_verdict(v, {&a.module(), &b.module()});
    r.detail = std::to_string(samples) + " random cochains, seed " + std::to_string(opt_.seed);
    return r;
  }

  Record construct(const dsl::Command& c) {
    const auto& t = map_of(c).map;
    const auto an = algebra_name(c);
    const auto& a = algebra(an);
    auto b = bimodule(c, an);
    auto name = arg(c, "as");
    if (name.empty()) name = c.kind + "_" + c.subject;
    Record r;
    r.identity = "construct " + c.kind;
    const auto& k = c.kind;
    auto phi = twist(c);
    if (k == "dendriform") r.output = dsl::emit_structure(name, dendriform_from_O(t, a, b));
    else if (k == "ns") r.output = dsl::emit_structure(name, phi ? ns_from_twisted(t, a, b, *phi) : ns_from_nijenhuis(t, a));
    else if (k == "mass") r.output = dsl::emit_algebra(name, m_ass(t, a, b, phi ? &*phi : nullptr));
    else if (k == "leftsym") r.output = dsl::emit_structure(name, leftsym_from_dendriform(dendriform_from_O(t, a, b)));
    else if (k == "deformed") r.output = dsl::emit_algebra(name, deformed_product(t, a).algebra);
    else throw Error(ErrorCode::Syntax, "unknown construction '" + k + "'");
    return r;
  }
};

}  // namespace detail

inline Report run(const dsl::SourceFile& f, const RunOptions& opt = {}, std::string command = {}) {
  Report rep;
  rep.command = std::move(command);
  rep.seed = opt.seed;
  detail::Executor ex(f, opt);
  for (const auto& s : f.statements)
    if (auto* c = std::get_if<dsl::Command>(&s)) rep.records.push_back(ex.run(*c));
  return rep;
}

}  // namespace confalg
