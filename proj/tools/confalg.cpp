// confalg: check, construct and cohomology commands over .cfa files.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "report_json.hpp"

namespace {

using namespace confalg;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Unresolved, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// The file's declarations followed by one generated statement.
dsl::SourceFile with_statement(const std::string& text, const std::string& stmt) {
  auto f = dsl::parse(text + "\n" + stmt + "\n");
  dsl::SourceFile out;
  for (std::size_t i = 0; i < f.statements.size(); ++i)
    if (!std::holds_alternative<dsl::Command>(f.statements[i]) || i + 1 == f.statements.size())
      out.statements.push_back(std::move(f.statements[i]));
  return out;
}

std::string clause(const char* key, const std::string& v) { return v.empty() ? "" : std::string(" ") + key + " " + v; }

void print_text(const Report& rep, std::ostream& os) {
  for (const auto& r : rep.records) {
    os << "[" << to_string(r.status) << "] " << r.statement;
    if (r.status != Status::error) os << "  (" << r.identity << ")";
    os << "\n";
    for (const auto& w : r.witnesses) {
      os << "    witness";
      if (!w.args.empty()) {
        os << " (";
        for (std::size_t i = 0; i < w.args.size(); ++i) os << (i ? ", " : "") << w.args[i];
        os << ")";
      }
      os << " " << w.label << ": " << w.residual << "\n";
    }
    if (!r.detail.empty()) os << "    " << r.detail << "\n";
    if (!r.output.empty()) os << r.output;
  }
}

struct Common {
  bool json = false;
  std::uint64_t seed = 1;
  unsigned max_degree = 2;
  std::size_t witness_cap = 16;
  unsigned samples = 10;
  RunOptions options() const { return {seed, max_degree, witness_cap, samples}; }
};

int emit_report(const Report& rep, const Common& c) {
  if (c.json) std::cout << to_json(rep).dump(2) << "\n";
  else print_text(rep, std::cout);
  return rep.exit_code();
}

Report bracket_report(const dsl::SourceFile& f, const std::string& fn, const std::string& gn, std::string on,
                      const std::string& with, const Common& c) {
  Report rep;
  rep.seed = c.seed;
  Record r;
  r.statement = "bracket " + fn + " " + gn;
  r.identity = "derived bracket, closed formula against lifts";
  auto start = std::chrono::steady_clock::now();
  try {
    const auto& fm = f.get<dsl::MapDef>(fn, "map");
    const auto& gm = f.get<dsl::MapDef>(gn, "map");
    if (on.empty()) on = fm.target;
    const auto& a = f.get<dsl::AlgebraDef>(on, "algebra").algebra;
    auto w = with;
    if (w.empty() && fm.source_side == dsl::Side::bimodule) w = fm.source;
    auto b = f.bimodule_or_adjoint(w, on);
    auto fc = Cochain::from_map(fm.map), gc = Cochain::from_map(gm.map);
    auto direct = derived_bracket_direct(fc, gc, a, b);
    auto lifted = derived_bracket_lift(fc, gc, a, b);
    Verdict v("derived bracket, closed formula against lifts");
    for_each_tuple(direct.table().slot_ranks(), [&](const Tuple& t) {
      v.record(t, direct.at(t) - lifted.at(t), CheckOptions{c.witness_cap});
    });
    auto rec = detail::from_verdict(v, {&b.module(), &a.module()});
    rec.statement = r.statement;
    r = std::move(rec);
    for_each_tuple(direct.table().slot_ranks(), [&](const Tuple& t) {
      if (direct.at(t).is_zero()) return;
      r.output += "value";
      for (auto i : t) r.output += " " + b.module().basis[i];
      r.output += " = " + direct.at(t).to_string(a.module()) + ";\n";
    });
    if (r.output.empty()) r.output = "# zero\n";
  } catch (const Error& e) {
    r.status = Status::error;
    r.error_code = std::string(to_string(e.code()));
    r.detail = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rep.records.push_back(std::move(r));
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for conformal algebras and their operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Emit a JSON report");
    sub->add_option("--seed", common.seed, "Seed for random suites");
    sub->add_option("--max-degree", common.max_degree, "Degree cap for generated cochains");
    sub->add_option("--witness-cap", common.witness_cap, "Witnesses kept per check");
    sub->add_option("--samples", common.samples, "Random samples per suite");
  };

  std::string file;
  auto* check = app.add_subcommand("check", "Run every check and construct statement in a file");
  check->add_option("file", file, "Input .cfa file")->required();
  add_common(check);

  auto* emit = app.add_subcommand("emit", "Parse a file and print its canonical form");
  emit->add_option("file", file, "Input .cfa file")->required();

  std::string kind, map, on, with, twist, as;
  auto* construct = app.add_subcommand("construct", "Build a structure induced by an operator");
  construct->add_option("file", file, "Input .cfa file")->required();
  construct->add_option("--kind", kind, "dendriform, ns, mass, leftsym or deformed")->required();
  construct->add_option("--map", map, "Operator")->required();
  construct->add_option("--on", on, "Algebra");
  construct->add_option("--with", with, "Bimodule");
  construct->add_option("--twist", twist, "Twisting cocycle");
  construct->add_option("--as", as, "Name of the result");
  add_common(construct);

  auto* coh = app.add_subcommand("cohomology", "Cochain complex and Maurer-Cartan commands");
  coh->require_subcommand(1);
  std::string algebra, fname, gname;
  auto* d2 = coh->add_subcommand("d2-check", "d(d(f)) = 0 on random cochains");
  d2->add_option("file", file)->required();
  d2->add_option("--algebra", algebra)->required();
  d2->add_option("--with", with);
  add_common(d2);
  auto* mc = coh->add_subcommand("mc-check", "Maurer-Cartan characterizations of an operator");
  mc->add_option("file", file)->required();
  mc->add_option("--map", map)->required();
  mc->add_option("--on", on);
  mc->add_option("--with", with);
  mc->add_option("--twist", twist, "Use the modified equation with this cocycle");
  add_common(mc);
  auto* br = coh->add_subcommand("bracket", "Derived bracket of two maps, computed two ways");
  br->add_option("file", file)->required();
  br->add_option("--f", fname)->required();
  br->add_option("--g", gname)->required();
  br->add_option("--on", on);
  br->add_option("--with", with);
  add_common(br);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string cmdline;
  for (int i = 1; i < argc; ++i) cmdline += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    auto text = read_file(file);
    if (*emit) {
      std::cout << dsl::emit_file(dsl::parse(text));
      return 0;
    }
    if (*check) return emit_report(run(dsl::parse(text), common.options(), cmdline), common);
    if (*construct) {
      auto stmt = "construct " + kind + " " + map + clause("on", on) + clause("with", with) + clause("twist", twist) +
                  clause("as", as) + ";";
      return emit_report(run(with_statement(text, stmt), common.options(), cmdline), common);
    }
    if (*d2) {
      auto stmt = "check d2 " + algebra + clause("with", with) + " bound " + std::to_string(common.samples) + ";";
      return emit_report(run(with_statement(text, stmt), common.options(), cmdline), common);
    }
    if (*mc) {
      auto stmt = std::string(twist.empty() ? "check mc " : "check modified_mc ") + map + clause("on", on) +
                  clause("with", with) + clause("twist", twist) + ";";
      return emit_report(run(with_statement(text, stmt), common.options(), cmdline), common);
    }
    if (*br) {
      auto rep = bracket_report(dsl::parse(text), fname, gname, on, with, common);
      rep.command = cmdline;
      return emit_report(rep, common);
    }
  } catch (const Error& e) {
    if (common.json) {
      nlohmann::ordered_json j{{"tool", "confalg"}, {"version", kVersion}, {"command", cmdline}, {"seed", common.seed},
                               {"records", nlohmann::ordered_json::array()},
                               {"summary", {{"holds", 0}, {"fails", 0}, {"errors", 1}}},
                               {"exit_code", 2}, {"error", e.what()}};
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "confalg: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
