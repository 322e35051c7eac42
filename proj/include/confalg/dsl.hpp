#pragma once

// Text format for algebras, bimodules, cocycles, maps and structure bundles,
// plus check/construct statements. parse() resolves every name as it goes;
// emit_*() produce text that parses back to equal tables.
//
//   algebra A { basis u, v; product u u = u; product u v = (D + L)*v; }
//   algebra G lie { basis x; }
//   bimodule AdjA = adjoint A;
//   bimodule M over A { basis m; left u m = m; right m u = m; }
//   cocycle phi on A into M { value u u = L*m; }
//   map T : M -> A { m -> v; }
//   structure S dendriform { basis x; succ x x = x; prec x x = 0; }
//   check O T on A with M;
//   construct mass T on A with M as Star;

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confalg/derived.hpp"

namespace confalg::dsl {

struct Location {
  std::size_t line = 1, column = 1;
  std::string str() const { return "line " + std::to_string(line) + ", column " + std::to_string(column); }
};

enum class Tok { ident, number, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Location loc;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Location loc;
  std::size_t i = 0;
  auto advance = [&](std::size_t k = 1) {
    for (; k > 0 && i < src.size(); --k, ++i) {
      if (src[i] == '\n') loc = {loc.line + 1, 1};
      else ++loc.column;
    }
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{Tok::ident, {}, loc};
      while (i < src.size() && ident_char(src[i])) t.text += src[i], advance();
      out.push_back(std::move(t));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Tok::number, {}, loc};
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) t.text += src[i], advance();
      out.push_back(std::move(t));
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::symbol, "->", loc});
      advance(2);
    } else if (std::string_view("{};,=+-*/^():").find(c) != std::string_view::npos) {
      out.push_back({Tok::symbol, std::string(1, c), loc});
      advance();
    } else {
      throw Error(ErrorCode::Syntax, loc.str() + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::end, "", loc});
  return out;
}

struct AlgebraDef {
  std::string name;
  ConfAlgebra algebra;
};
struct BimoduleDef {
  std::string name, algebra;
  bool adjoint = false;
  ConfBimodule bimodule;
};
struct CocycleDef {
  std::string name, algebra, bimodule;  // empty bimodule: adjoint
  Cochain cochain;
};
enum class Side { algebra, bimodule };
struct MapDef {
  std::string name, source, target;
  Side source_side = Side::algebra, target_side = Side::algebra;
  ModuleMap map;
};
struct StructureDef {
  std::string name;
  StructureBundle bundle;
};
struct Command {
  bool construct = false;
  std::string kind, subject;
  std::map<std::string, std::string> args;  // on, with, twist, bound, as
  std::optional<Poly> weight;
  Location loc;
  std::string text;
};

using Statement = std::variant<AlgebraDef, BimoduleDef, CocycleDef, MapDef, StructureDef, Command>;

struct SourceFile {
  std::vector<Statement> statements;

  template <class T>
  const T* find(const std::string& name) const {
    for (const auto& s : statements)
      if (auto* p = std::get_if<T>(&s); p && p->name == name) return p;
    return nullptr;
  }
  template <class T>
  const T& get(const std::string& name, const char* what) const {
    if (auto* p = find<T>(name)) return *p;
    throw Error(ErrorCode::Unresolved, std::string("unknown ") + what + " '" + name + "'");
  }
  ConfBimodule bimodule_or_adjoint(const std::string& bim, const std::string& alg) const {
    if (bim.empty()) return adjoint(get<AlgebraDef>(alg, "algebra").algebra);
    return get<BimoduleDef>(bim, "bimodule").bimodule;
  }
};

// Allowed arguments for each statement kind.
inline const std::map<std::string, std::vector<std::string>>& check_kinds() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"associative", {}},
      {"lie", {}},
      {"bimodule", {}},
      {"cocycle", {}},
      {"commutative_cocycle", {}},
      {"structure", {}},
      {"d2", {"with", "bound"}},
      {"O", {"on", "with"}},
      {"rota_baxter", {"on", "weight"}},
      {"twisted_rb", {"on", "with", "twist"}},
      {"nijenhuis", {"on"}},
      {"reynolds", {"on"}},
      {"derivation", {"on", "with"}},
      {"olie", {"on", "with"}},
      {"graph", {"on", "with", "twist"}},
      {"dendriform", {"on", "with"}},
      {"ns", {"on", "with", "twist"}},
      {"mc", {"on", "with"}},
      {"modified_mc", {"on", "with", "twist"}},
      {"hierarchy", {"on", "bound"}},
      {"deformation", {"on"}},
  };
  return k;
}
inline const std::map<std::string, std::vector<std::string>>& construct_kinds() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"dendriform", {"on", "with", "as"}},
      {"ns", {"on", "with", "twist", "as"}},
      {"mass", {"on", "with", "twist", "as"}},
      {"leftsym", {"on", "with", "as"}},
      {"deformed", {"on", "as"}},
  };
  return k;
}

namespace detail {

struct Value {
  bool is_elem = false;
  Poly scalar;
  ModElem elem;
};

inline bool reserved(const std::string& s) {
  if (s == "D" || s == "L" || s == "M") return true;
  if (s.size() > 1 && s[0] == 'L') {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  SourceFile run() {
    while (peek().kind != Tok::end) statement();
    return std::move(file_);
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceFile file_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg, ErrorCode code = ErrorCode::Syntax) const {
    std::string near = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw Error(code, t.loc.str() + ": " + msg + " near " + near);
  }
  bool accept(std::string_view sym) {
    if (peek().kind != Tok::end && peek().kind != Tok::number && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail(peek(), "expected '" + std::string(sym) + "'");
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::ident) fail(peek(), std::string("expected ") + what);
    return next().text;
  }
  std::size_t number() {
    if (peek().kind != Tok::number) fail(peek(), "expected a number");
    return std::stoul(next().text);
  }

  template <class T>
  void unique(const Token& at, const std::string& name, const char* what) {
    if (file_.find<T>(name)) fail(at, std::string("duplicate ") + what + " '" + name + "'", ErrorCode::Duplicate);
  }
  template <class T>
  const T& resolve(const Token& at, const std::string& name, const char* what) {
    if (auto* p = file_.find<T>(name)) return *p;
    fail(at, std::string("unknown ") + what + " '" + name + "'", ErrorCode::Unresolved);
  }
  std::size_t basis_index(const FreeModule& m, const Token& at) {
    if (auto i = m.index_of(at.text)) return *i;
    fail(at, "'" + at.text + "' is not a basis element here", ErrorCode::Unresolved);
  }

  // Wrap construction errors with the statement location.
  template <class F>
  auto located(const Token& at, F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      throw Error(e.code(), at.loc.str() + ": " + e.what());
    }
  }

  std::vector<std::string> basis_list() {
    expect("basis");
    std::vector<std::string> names;
    do {
      const auto& t = peek();
      auto n = ident("basis name");
      if (reserved(n)) fail(t, "'" + n + "' is reserved for a variable");
      names.push_back(n);
    } while (accept(","));
    expect(";");
    return names;
  }

  // expr := ['+'|'-'] term (('+'|'-') term)*
  Value expr(const FreeModule* m) {
    bool neg = false;
    if (accept("-")) neg = true;
    else accept("+");
    Value v = term(m);
    if (neg) v = negate(v);
    for (;;) {
      const auto& op = peek();
      if (accept("+")) v = add(op, v, term(m));
      else if (accept("-")) v = add(op, v, negate(term(m)));
      else return v;
    }
  }
  Value term(const FreeModule* m) {
    Value v = power(m);
    for (;;) {
      const auto& op = peek();
      if (!accept("*")) return v;
      Value w = power(m);
      if (v.is_elem && w.is_elem) fail(op, "cannot multiply two module elements");
      if (v.is_elem) v.elem *= w.scalar;
      else if (w.is_elem) v = {true, {}, w.elem * v.scalar};
      else v.scalar = v.scalar * w.scalar;
    }
  }
  Value power(const FreeModule* m) {
    Value v = atom(m);
    const auto& op = peek();
    if (accept("^")) {
      if (peek().kind != Tok::number) fail(op, "expected an exponent after '^'");
      auto e = number();
      if (v.is_elem) fail(op, "cannot raise a module element to a power");
      v.scalar = v.scalar.pow(static_cast<unsigned>(e));
    }
    return v;
  }
  Value atom(const FreeModule* m) {
    const auto& t = peek();
    if (t.kind == Tok::number) {
      Scalar s(next().text);
      if (accept("/")) {
        const auto& d = peek();
        auto den = number();
        if (den == 0) fail(d, "zero denominator");
        s /= Scalar(static_cast<unsigned long>(den));
      }
      s.canonicalize();
      return {false, Poly(s), {}};
    }
    if (accept("(")) {
      Value v = expr(m);
      expect(")");
      return v;
    }
    if (t.kind != Tok::ident) fail(t, "expected a term");
    auto name = next().text;
    if (name == "D") return {false, Poly::d(), {}};
    if (name == "L") return {false, Poly::lambda(1), {}};
    if (name == "M") return {false, Poly::lambda(2), {}};
    if (reserved(name)) return {false, Poly::lambda(static_cast<std::uint32_t>(std::stoul(name.substr(1)))), {}};
    if (!m) fail(t, "no basis elements are allowed here", ErrorCode::Unresolved);
    return {true, {}, ModElem::basis(m->rank(), basis_index(*m, t))};
  }
  Value negate(Value v) {
    if (v.is_elem) v.elem = -v.elem;
    else v.scalar = Poly(-1) * v.scalar;
    return v;
  }
  Value add(const Token& at, Value a, const Value& b) {
    if (a.is_elem && b.is_elem) return {true, {}, a.elem + b.elem};
    if (!a.is_elem && !b.is_elem) return {false, a.scalar + b.scalar, {}};
    const Value& s = a.is_elem ? b : a;
    if (!s.scalar.is_zero()) fail(at, "cannot add a scalar to a module element");
    return a.is_elem ? a : b;
  }
  ModElem element(const FreeModule& m) {
    const auto& at = peek();
    Value v = expr(&m);
    if (v.is_elem) return v.elem;
    if (!v.scalar.is_zero()) fail(at, "expected a module element");
    return ModElem(m.rank());
  }

  void statement() {
    const auto& t = peek();
    if (t.kind != Tok::ident) fail(t, "expected a declaration");
    if (t.text == "algebra") return algebra();
    if (t.text == "bimodule") return bimodule();
    if (t.text == "cocycle") return cocycle();
    if (t.text == "map") return map();
    if (t.text == "structure") return structure();
    if (t.text == "check" || t.text == "construct") return command();
    fail(t, "unknown declaration");
  }

  void algebra() {
    next();
    const auto& at = peek();
    auto name = ident("algebra name");
    unique<AlgebraDef>(at, name, "algebra");
    bool lie = accept("lie");
    expect("{");
    FreeModule m(basis_list());
    Table p = Table::square(2, m.rank(), m.rank());
    while (accept("product")) binary_entry(m, m, m, p);
    expect("}");
    file_.statements.push_back(AlgebraDef{
        name, located(at, [&] { return ConfAlgebra(m, std::move(p), lie ? Flavor::lie : Flavor::associative); })});
  }

  // NAME NAME = expr ;  with each name resolved in its own module
  void binary_entry(const FreeModule& first, const FreeModule& second, const FreeModule& out, Table& t) {
    const auto& a = peek();
    ident("basis name");
    const auto& b = peek();
    ident("basis name");
    Tuple idx{basis_index(first, a), basis_index(second, b)};
    expect("=");
    auto v = element(out);
    expect(";");
    t.set(idx, std::move(v));
  }

  void bimodule() {
    next();
    const auto& at = peek();
    auto name = ident("bimodule name");
    unique<BimoduleDef>(at, name, "bimodule");
    if (accept("=")) {
      expect("adjoint");
      const auto& ref = peek();
      auto alg = ident("algebra name");
      expect(";");
      const auto& a = resolve<AlgebraDef>(ref, alg, "algebra").algebra;
      file_.statements.push_back(BimoduleDef{name, alg, true, adjoint(a)});
      return;
    }
    expect("over");
    const auto& ref = peek();
    auto alg = ident("algebra name");
    const auto am = resolve<AlgebraDef>(ref, alg, "algebra").algebra.module();
    expect("{");
    FreeModule m(basis_list());
    Table left({am.rank(), m.rank()}, m.rank()), right({m.rank(), am.rank()}, m.rank());
    for (;;) {
      if (accept("left")) binary_entry(am, m, m, left);
      else if (accept("right")) binary_entry(m, am, m, right);
      else break;
    }
    expect("}");
    file_.statements.push_back(BimoduleDef{
        name, alg, false, located(at, [&] { return ConfBimodule(am.rank(), m, std::move(left), std::move(right)); })});
  }

  void cocycle() {
    next();
    const auto& at = peek();
    auto name = ident("cocycle name");
    unique<CocycleDef>(at, name, "cocycle");
    expect("on");
    const auto& ref = peek();
    auto alg = ident("algebra name");
    const auto am = resolve<AlgebraDef>(ref, alg, "algebra").algebra.module();
    std::string bim;
    FreeModule out = am;
    if (accept("into")) {
      const auto& bref = peek();
      bim = ident("bimodule name");
      const auto& b = resolve<BimoduleDef>(bref, bim, "bimodule");
      if (b.algebra != alg) fail(bref, "bimodule '" + bim + "' is over '" + b.algebra + "'", ErrorCode::ModuleMismatch);
      out = b.bimodule.module();
    }
    expect("{");
    std::optional<Table> t;
    while (accept("value")) {
      Tuple idx;
      while (peek().kind == Tok::ident) idx.push_back(basis_index(am, next()));
      if (idx.empty()) fail(peek(), "expected arguments");
      if (!t) t = Table::square(idx.size(), am.rank(), out.rank());
      else if (t->arity() != idx.size()) fail(peek(), "all values of a cocycle need the same arity", ErrorCode::ArityMismatch);
      expect("=");
      auto v = element(out);
      expect(";");
      t->set(idx, std::move(v));
    }
    expect("}");
    if (!t) t = Table::square(2, am.rank(), out.rank());
    file_.statements.push_back(CocycleDef{name, alg, bim, located(at, [&] { return Cochain(std::move(*t)); })});
  }

  std::pair<Side, FreeModule> side_of(const Token& at, const std::string& name) {
    auto* a = file_.find<AlgebraDef>(name);
    auto* b = file_.find<BimoduleDef>(name);
    if (a && b) fail(at, "'" + name + "' names both an algebra and a bimodule", ErrorCode::Duplicate);
    if (a) return {Side::algebra, a->algebra.module()};
    if (b) return {Side::bimodule, b->bimodule.module()};
    fail(at, "unknown algebra or bimodule '" + name + "'", ErrorCode::Unresolved);
  }

  void map() {
    next();
    const auto& at = peek();
    auto name = ident("map name");
    unique<MapDef>(at, name, "map");
    expect(":");
    const auto& sref = peek();
    auto src = ident("source");
    auto [sside, sm] = side_of(sref, src);
    expect("->");
    const auto& tref = peek();
    auto tgt = ident("target");
    auto [tside, tm] = side_of(tref, tgt);
    expect("{");
    std::vector<ModElem> cols(sm.rank(), ModElem(tm.rank()));
    while (peek().kind == Tok::ident) {
      auto i = basis_index(sm, next());
      expect("->");
      cols[i] = element(tm);
      expect(";");
    }
    expect("}");
    file_.statements.push_back(
        MapDef{name, src, tgt, sside, tside, located(at, [&] { return ModuleMap(tm.rank(), std::move(cols)); })});
  }

  void structure() {
    next();
    const auto& at = peek();
    auto name = ident("structure name");
    unique<StructureDef>(at, name, "structure");
    const auto& kt = peek();
    auto kind = ident("structure kind");
    StructureBundle b;
    std::vector<OpTag> tags;
    if (kind == "dendriform") b.kind = BundleKind::dendriform, tags = {OpTag::succ, OpTag::prec};
    else if (kind == "ns") b.kind = BundleKind::ns, tags = {OpTag::succ, OpTag::prec, OpTag::vee};
    else if (kind == "leftsym") b.kind = BundleKind::leftsym, tags = {OpTag::leftsym};
    else if (kind == "assoc") b.kind = BundleKind::assoc, tags = {OpTag::star};
    else fail(kt, "unknown structure kind");
    expect("{");
    b.module = FreeModule(basis_list());
    const auto r = b.module.rank();
    for (auto tag : tags) b.tables.push_back({b.module, Table::square(2, r, r), tag});
    for (;;) {
      const auto& tt = peek();
      if (tt.kind != Tok::ident || tt.text == "}") break;
      auto it = std::find_if(b.tables.begin(), b.tables.end(), [&](const BinaryOpTable& x) { return to_string(x.tag) == tt.text; });
      if (it == b.tables.end()) fail(tt, "unknown table for a " + kind + " structure");
      next();
      binary_entry(b.module, b.module, b.module, it->table);
    }
    expect("}");
    located(at, [&] {
      for (const auto& x : b.tables) confalg::detail::require_table_vars(x.table, 1, "structure table");
      return 0;
    });
    file_.statements.push_back(StructureDef{name, std::move(b)});
  }

  void command() {
    const auto& head = next();
    Command c;
    c.construct = head.text == "construct";
    c.loc = head.loc;
    const auto& kt = peek();
    c.kind = ident("kind");
    const auto& kinds = c.construct ? construct_kinds() : check_kinds();
    auto spec = kinds.find(c.kind);
    if (spec == kinds.end()) fail(kt, std::string("unknown ") + (c.construct ? "construction" : "check"));
    const auto& st = peek();
    c.subject = ident("subject");
    for (;;) {
      const auto& kw = peek();
      if (kw.kind != Tok::ident) break;
      auto key = next().text;
      if (std::find(spec->second.begin(), spec->second.end(), key) == spec->second.end())
        fail(kw, "'" + key + "' does not apply to " + c.kind);
      if (c.args.count(key) || (key == "weight" && c.weight)) fail(kw, "repeated '" + key + "'");
      if (key == "weight") {
        const auto& wt = peek();
        auto v = expr(nullptr);
        if (v.is_elem) fail(wt, "weight must be a scalar");
        c.weight = v.scalar;
      } else if (key == "bound") {
        c.args[key] = std::to_string(number());
      } else {
        const auto& ref = peek();
        auto val = ident("name");
        if (key == "on") resolve<AlgebraDef>(ref, val, "algebra");
        else if (key == "with") resolve<BimoduleDef>(ref, val, "bimodule");
        else if (key == "twist") resolve<CocycleDef>(ref, val, "cocycle");
        c.args[key] = val;
      }
    }
    const auto& end = peek();
    expect(";");
    resolve_subject(c, st);
    c.text = trim(src_, head, end);
    file_.statements.push_back(std::move(c));
  }

  void resolve_subject(const Command& c, const Token& st) {
    const auto& k = c.kind;
    if (c.construct) {
      resolve<MapDef>(st, c.subject, "map");
      if (c.args.count("as")) {
        const auto& nm = c.args.at("as");
        if (file_.find<AlgebraDef>(nm) || file_.find<StructureDef>(nm))
          fail(st, "'" + nm + "' is already defined", ErrorCode::Duplicate);
      }
      return;
    }
    if (k == "associative" || k == "lie" || k == "d2") resolve<AlgebraDef>(st, c.subject, "algebra");
    else if (k == "bimodule") resolve<BimoduleDef>(st, c.subject, "bimodule");
    else if (k == "cocycle" || k == "commutative_cocycle") resolve<CocycleDef>(st, c.subject, "cocycle");
    else if (k == "structure") resolve<StructureDef>(st, c.subject, "structure");
    else resolve<MapDef>(st, c.subject, "map");
  }

  static std::string trim(std::string_view src, const Token& from, const Token& to) {
    // Statement text from its first token to its closing ';'.
    auto offset = [&](const Location& l) {
      std::size_t line = 1, i = 0;
      while (i < src.size() && line < l.line)
        if (src[i++] == '\n') ++line;
      return i + l.column - 1;
    };
    auto a = offset(from.loc), b = offset(to.loc);
    std::string s(src.substr(a, b - a + 1));
    std::string out;
    bool space = false;
    for (char ch : s) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        space = true;
        continue;
      }
      if (space && !out.empty()) out += ' ';
      space = false;
      out += ch;
    }
    return out;
  }
};

}  // namespace detail

inline SourceFile parse(std::string_view src) { return detail::Parser(src).run(); }

// Emission ------------------------------------------------------------------

namespace detail {

inline std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline void emit_entries(std::string& out, const char* keyword, const Table& t, const std::vector<const FreeModule*>& slots,
                         const FreeModule& target) {
  for_each_tuple(t.slot_ranks(), [&](const Tuple& idx) {
    const auto& v = t.at(idx);
    if (v.is_zero()) return;
    out += "  ";
    out += keyword;
    for (std::size_t k = 0; k < idx.size(); ++k) out += " " + slots[k]->basis[idx[k]];
    out += " = " + v.to_string(target) + ";\n";
  });
}

}  // namespace detail

inline std::string emit_algebra(const std::string& name, const ConfAlgebra& a) {
  const auto& m = a.module();
  std::string out = "algebra " + name + (a.flavor() == Flavor::lie ? " lie" : "") + " {\n";
  out += "  basis " + detail::join(m.basis, ", ") + ";\n";
  detail::emit_entries(out, "product", a.product(), {&m, &m}, m);
  return out + "}\n";
}

inline std::string emit_bimodule(const std::string& name, const std::string& algebra, const FreeModule& alg_module,
                                 const ConfBimodule& b) {
  const auto& m = b.module();
  std::string out = "bimodule " + name + " over " + algebra + " {\n";
  out += "  basis " + detail::join(m.basis, ", ") + ";\n";
  detail::emit_entries(out, "left", b.left(), {&alg_module, &m}, m);
  detail::emit_entries(out, "right", b.right(), {&m, &alg_module}, m);
  return out + "}\n";
}

inline std::string emit_cocycle(const std::string& name, const std::string& algebra, const FreeModule& alg_module,
                                const std::string& bimodule, const FreeModule& target, const Cochain& c) {
  std::string out = "cocycle " + name + " on " + algebra + (bimodule.empty() ? "" : " into " + bimodule) + " {\n";
  std::vector<const FreeModule*> slots(c.arity(), &alg_module);
  detail::emit_entries(out, "value", c.table(), slots, target);
  return out + "}\n";
}

inline std::string emit_map(const std::string& name, const std::string& source, const FreeModule& src,
                            const std::string& target, const FreeModule& tgt, const ModuleMap& f) {
  std::string out = "map " + name + " : " + source + " -> " + target + " {\n";
  for (std::size_t s = 0; s < src.rank(); ++s)
    if (!f.column(s).is_zero()) out += "  " + src.basis[s] + " -> " + f.column(s).to_string(tgt) + ";\n";
  return out + "}\n";
}

inline std::string emit_structure(const std::string& name, const StructureBundle& b) {
  const auto& m = b.module;
  std::string out = "structure " + name + " " + std::string(to_string(b.kind)) + " {\n";
  out += "  basis " + detail::join(m.basis, ", ") + ";\n";
  for (const auto& t : b.tables) {
    auto kw = std::string(to_string(t.tag));
    detail::emit_entries(out, kw.c_str(), t.table, {&m, &m}, m);
  }
  return out + "}\n";
}

// Canonical text of a whole file.
inline std::string emit_file(const SourceFile& f) {
  std::string out;
  for (const auto& s : f.statements) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, AlgebraDef>) {
            out += emit_algebra(d.name, d.algebra);
          } else if constexpr (std::is_same_v<T, BimoduleDef>) {
            if (d.adjoint) out += "bimodule " + d.name + " = adjoint " + d.algebra + ";\n";
            else out += emit_bimodule(d.name, d.algebra, f.get<AlgebraDef>(d.algebra, "algebra").algebra.module(), d.bimodule);
          } else if constexpr (std::is_same_v<T, CocycleDef>) {
            const auto& am = f.get<AlgebraDef>(d.algebra, "algebra").algebra.module();
            const auto& tm = d.bimodule.empty() ? am : f.get<BimoduleDef>(d.bimodule, "bimodule").bimodule.module();
            out += emit_cocycle(d.name, d.algebra, am, d.bimodule, tm, d.cochain);
          } else if constexpr (std::is_same_v<T, MapDef>) {
            auto mod = [&](Side s, const std::string& n) -> const FreeModule& {
              return s == Side::algebra ? f.get<AlgebraDef>(n, "algebra").algebra.module()
                                        : f.get<BimoduleDef>(n, "bimodule").bimodule.module();
            };
            out += emit_map(d.name, d.source, mod(d.source_side, d.source), d.target, mod(d.target_side, d.target), d.map);
          } else if constexpr (std::is_same_v<T, StructureDef>) {
            out += emit_structure(d.name, d.bundle);
          } else {
            out += d.text + "\n";
          }
        },
        s);
  }
  return out;
}

}  // namespace confalg::dsl
