#include "alloyfa/emit.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "alloyfa/laws.hpp"

namespace alloyfa::emit {

using fa::Op;

namespace {

fa::Expr lowerProducts(const fa::Expr& e) {
  if (!e || fa::isLeaf(e->op)) return e;
  auto a = lowerProducts(e->lhs), b = lowerProducts(e->rhs);
  if (e->op == Op::Prod) return fa::fork(fa::comp(a, fa::pi1()), fa::comp(b, fa::pi2()));
  if (a == e->lhs && b == e->rhs) return e;
  auto copy = std::make_shared<fa::Node>(*e);
  copy->lhs = a;
  copy->rhs = b;
  return copy;
}

}  // namespace

fa::Expr lower(const fa::Expr& e) { return lowerProducts(fa::unfold(e)); }

fa::Fact encode(const fa::Fact& f) {
  auto l = lower(f.lhs), r = lower(f.rhs);
  if (f.kind == fa::Fact::Kind::Sub) return fa::equation(fa::uni(l, r), r, f.label);
  return fa::equation(l, r, f.label);
}

namespace {

const std::set<std::string>& reserved() {
  static const std::set<std::string> s{"join", "meet", "comp", "conv", "compl", "top", "bot", "one", "fork",
                                       "prod", "pi1",  "pi2",  "star", "ldiv",  "rdiv", "label", "set",
                                       "clear", "assign", "formulas", "end_of_list"};
  return s;
}

std::string identifier(const std::string& name, bool coreflexive) {
  std::string s;
  for (char c : name) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (coreflexive) return "phi_" + s;
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) s = "r_" + s;
  s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

std::string labelText(const std::string& label) {
  std::string s;
  for (char c : label) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) s = "l_" + s;
  s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

using Key = std::pair<bool, std::string>;  // (coreflexive, name)

void collect(const fa::Expr& e, std::vector<Symbol>& out, std::set<Key>& seen) {
  if (!e) return;
  if (e->op == Op::Rel || e->op == Op::Coref) {
    Key k{e->op == Op::Coref, e->name};
    if (seen.insert(k).second) out.push_back({"", k.first, e->name, e->op == Op::Coref ? 1 : e->arity});
    return;
  }
  collect(e->lhs, out, seen);
  collect(e->rhs, out, seen);
}

void assignIdentifiers(std::vector<Symbol>& syms) {
  std::set<std::string> used = reserved();
  for (auto& s : syms) {
    std::string base = identifier(s.name, s.coreflexive), id = base;
    for (int k = 2; used.count(id); ++k) id = base + "_" + std::to_string(k);
    used.insert(id);
    s.prover = id;
  }
}

std::map<Key, std::string> symbolMap(const std::vector<Symbol>& syms) {
  std::map<Key, std::string> m;
  for (const auto& s : syms) m[{s.coreflexive, s.name}] = s.prover;
  return m;
}

void term(const fa::Expr& e, const std::map<Key, std::string>& syms, std::string& out) {
  auto call = [&](const char* f, std::initializer_list<const fa::Expr*> args) {
    out += f;
    out += '(';
    bool first = true;
    for (const auto* a : args) {
      if (!first) out += ',';
      first = false;
      term(*a, syms, out);
    }
    out += ')';
  };
  switch (e->op) {
    case Op::Rel:
    case Op::Coref: {
      auto it = syms.find({e->op == Op::Coref, e->name});
      if (it == syms.end()) throw EmitError("no symbol for " + fa::toString(e));
      out += it->second;
      return;
    }
    case Op::Meta: out += e->name; return;
    case Op::Top: out += "top"; return;
    case Op::Bot: out += "bot"; return;
    case Op::Id: out += "one"; return;
    case Op::Pi1: out += "pi1"; return;
    case Op::Pi2: out += "pi2"; return;
    case Op::Union: return call("join", {&e->lhs, &e->rhs});
    case Op::Inter: return call("meet", {&e->lhs, &e->rhs});
    case Op::Comp: return call("comp", {&e->lhs, &e->rhs});
    case Op::Fork: return call("fork", {&e->lhs, &e->rhs});
    case Op::LDiv: return call("ldiv", {&e->lhs, &e->rhs});
    case Op::RDiv: return call("rdiv", {&e->lhs, &e->rhs});
    case Op::Conv: return call("conv", {&e->lhs});
    case Op::Compl: return call("compl", {&e->lhs});
    case Op::Star: return call("star", {&e->lhs});
    default: throw EmitError("cannot encode " + fa::toString(e));
  }
}

std::string symbolLine(const Symbol& s) {
  if (s.coreflexive) return "% symbol " + s.prover + " = coreflexive " + s.name;
  return "% symbol " + s.prover + " = relation " + s.name + "/" + std::to_string(s.arity);
}

void replaceAll(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
    s.replace(p, from.size(), to);
}

}  // namespace

Prover9Doc buildProver9(const std::vector<fa::Fact>& facts, const fa::Fact& goal) {
  Prover9Doc doc;
  for (const auto& law : laws::library()) {
    auto f = encode(law.fact);
    // The definition of × and its converse read as lemmas vanish once × is lowered.
    if (!fa::equal(f.lhs, f.rhs)) doc.assumptions.push_back({labelText(law.name), f});
  }
  for (const auto& f : facts) doc.assumptions.push_back({labelText(f.label.empty() ? "fact" : f.label), encode(f)});
  doc.goals.push_back({labelText(goal.label.empty() ? "goal" : goal.label), encode(goal)});
  std::set<Key> seen;
  for (const auto& f : doc.assumptions) collect(f.fact.lhs, doc.symbols, seen), collect(f.fact.rhs, doc.symbols, seen);
  for (const auto& f : doc.goals) collect(f.fact.lhs, doc.symbols, seen), collect(f.fact.rhs, doc.symbols, seen);
  assignIdentifiers(doc.symbols);
  return doc;
}

std::string formulaText(const fa::Fact& f, const std::vector<Symbol>& symbols) {
  auto m = symbolMap(symbols);
  auto enc = f.kind == fa::Fact::Kind::Sub ? encode(f) : f;
  std::string out;
  term(enc.lhs, m, out);
  out += " = ";
  term(enc.rhs, m, out);
  return out;
}

std::string defaultTemplate() {
  return "set(prolog_style_variables).\n"
         "\n"
         "{{symbols}}\n"
         "\n"
         "formulas(assumptions).\n"
         "{{assumptions}}\n"
         "end_of_list.\n"
         "\n"
         "formulas(goals).\n"
         "{{goals}}\n"
         "end_of_list.\n";
}

std::string render(const Prover9Doc& doc, const std::string& tmpl) {
  if (doc.goals.size() != 1) throw EmitError("a document needs exactly one goal");
  for (const char* p : {"{{symbols}}", "{{assumptions}}", "{{goals}}"})
    if (tmpl.find(p) == std::string::npos) throw EmitError(std::string("template lacks ") + p);
  auto lines = [&](const std::vector<Formula>& fs) {
    std::string s;
    for (const auto& f : fs) {
      if (!s.empty()) s += '\n';
      s += formulaText(f.fact, doc.symbols) + " # label(" + labelText(f.label) + ").";
    }
    return s;
  };
  std::string syms;
  for (const auto& s : doc.symbols) syms += (syms.empty() ? "" : "\n") + symbolLine(s);
  std::string out = tmpl;
  // Goals first so that formula text cannot be mistaken for a placeholder.
  replaceAll(out, "{{goals}}", lines(doc.goals));
  replaceAll(out, "{{assumptions}}", lines(doc.assumptions));
  replaceAll(out, "{{symbols}}", syms);
  return out;
}

std::string emitProver9(const std::vector<fa::Fact>& facts, const fa::Fact& goal, const std::string& tmpl) {
  return render(buildProver9(facts, goal), tmpl);
}

// ---- reading .p9 documents back ----

namespace {

struct Token {
  enum Kind { Ident, Punct, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Symbol> symbols;

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (p_ >= s_.size()) {
        out.push_back({Token::End, "", line_, col_});
        return out;
      }
      char c = s_[p_];
      int l = line_, k = col_;
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) id += next();
        out.push_back({Token::Ident, id, l, k});
      } else if (std::string_view("(),.=#").find(c) != std::string_view::npos) {
        out.push_back({Token::Punct, std::string(1, next()), l, k});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", l, k);
      }
    }
  }

 private:
  char next() {
    char c = s_[p_++];
    if (c == '\n') ++line_, col_ = 1;
    else ++col_;
    return c;
  }

  void skip() {
    while (p_ < s_.size()) {
      char c = s_[p_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        next();
      } else if (c == '%') {
        int l = line_;
        std::string text;
        while (p_ < s_.size() && s_[p_] != '\n') text += next();
        comment(text, l);
      } else {
        return;
      }
    }
  }

  // "% symbol id = relation name/arity" or "% symbol id = coreflexive name"
  void comment(const std::string& text, int line) {
    const std::string tag = "% symbol ";
    if (text.rfind(tag, 0) != 0) return;
    std::string rest = text.substr(tag.size());
    auto eq = rest.find(" = ");
    if (eq == std::string::npos) throw ParseError("malformed symbol line", line, 1);
    Symbol sym;
    sym.prover = rest.substr(0, eq);
    std::string what = rest.substr(eq + 3);
    if (what.rfind("coreflexive ", 0) == 0) {
      sym.coreflexive = true;
      sym.name = what.substr(12);
      sym.arity = 1;
    } else if (what.rfind("relation ", 0) == 0) {
      auto body = what.substr(9);
      auto slash = body.rfind('/');
      if (slash == std::string::npos) throw ParseError("symbol line lacks an arity", line, 1);
      sym.name = body.substr(0, slash);
      try {
        sym.arity = std::stoi(body.substr(slash + 1));
      } catch (const std::exception&) {
        throw ParseError("bad arity in symbol line", line, 1);
      }
    } else {
      throw ParseError("unknown symbol kind", line, 1);
    }
    symbols.push_back(sym);
  }

  std::string_view s_;
  std::size_t p_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<Symbol>& syms) : t_(std::move(toks)) {
    for (const auto& s : syms) syms_[s.prover] = s;
  }

  Prover9Doc run(std::vector<Symbol> syms) {
    Prover9Doc doc;
    doc.symbols = std::move(syms);
    while (peek().kind != Token::End) {
      auto head = expectIdent();
      if (head.text == "formulas") {
        expect("(");
        auto which = expectIdent();
        expect(")");
        expect(".");
        auto& list = which.text == "goals" ? doc.goals : doc.assumptions;
        if (which.text != "goals" && which.text != "assumptions")
          throw ParseError("unknown formula list " + which.text, which.line, which.col);
        while (!(peek().kind == Token::Ident && peek().text == "end_of_list")) list.push_back(formula());
        advance();
        expect(".");
      } else {
        // set(...), clear(...), assign(...) and friends: skipped up to the dot.
        skipDirective(head);
      }
    }
    if (doc.goals.size() != 1)
      throw ParseError("expected exactly one goal, found " + std::to_string(doc.goals.size()), peek().line,
                       peek().col);
    return doc;
  }

 private:
  const Token& peek() const { return t_[i_]; }
  Token advance() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(msg + (t.kind == Token::End ? " at end of input" : ", found '" + t.text + "'"), t.line, t.col);
  }

  void expect(const char* p) {
    if (peek().kind != Token::Punct || peek().text != p) fail(std::string("expected '") + p + "'");
    advance();
  }

  Token expectIdent() {
    if (peek().kind != Token::Ident) fail("expected an identifier");
    return advance();
  }

  void skipDirective(const Token& head) {
    int depth = 0;
    while (true) {
      const auto& t = peek();
      if (t.kind == Token::End) throw ParseError("unterminated directive " + head.text, head.line, head.col);
      if (t.kind == Token::Punct) {
        if (t.text == "(") ++depth;
        if (t.text == ")" && --depth < 0) fail("unbalanced ')'");
        if (t.text == "." && depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  Formula formula() {
    auto l = expr();
    expect("=");
    auto r = expr();
    Formula f{"", fa::equation(l, r)};
    if (peek().kind == Token::Punct && peek().text == "#") {
      advance();
      auto kw = expectIdent();
      if (kw.text != "label") throw ParseError("expected label", kw.line, kw.col);
      expect("(");
      f.label = expectIdent().text;
      expect(")");
    }
    f.fact.label = f.label;
    expect(".");
    return f;
  }

  fa::Expr expr() {
    auto tok = expectIdent();
    const auto& n = tok.text;
    static const std::map<std::string, int> arity{{"join", 2}, {"meet", 2}, {"comp", 2}, {"fork", 2},
                                                  {"ldiv", 2}, {"rdiv", 2}, {"conv", 1},
                                                  {"compl", 1}, {"star", 1}};
    auto it = arity.find(n);
    if (it != arity.end()) {
      expect("(");
      auto a = expr();
      fa::Expr b;
      if (it->second == 2) {
        expect(",");
        b = expr();
      }
      expect(")");
      if (n == "join") return fa::uni(a, b);
      if (n == "meet") return fa::inter(a, b);
      if (n == "comp") return fa::comp(a, b);
      if (n == "fork") return fa::fork(a, b);
      if (n == "ldiv") return fa::ldiv(a, b);
      if (n == "rdiv") return fa::rdiv(a, b);
      if (n == "conv") return fa::conv(a);
      if (n == "compl") return fa::compl_(a);
      return fa::star(a);
    }
    if (peek().kind == Token::Punct && peek().text == "(") fail("'" + n + "' is not a function symbol");
    if (n == "top") return fa::top();
    if (n == "bot") return fa::bot();
    if (n == "one") return fa::id();
    if (n == "pi1") return fa::pi1();
    if (n == "pi2") return fa::pi2();
    if (std::isupper(static_cast<unsigned char>(n[0]))) return fa::meta(n);
    auto s = syms_.find(n);
    if (s == syms_.end()) throw ParseError("undeclared constant " + n, tok.line, tok.col);
    if (s->second.coreflexive) return fa::coref(s->second.name);
    return fa::rel(s->second.name, s->second.arity);
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  std::map<std::string, Symbol> syms_;
};

}  // namespace

Prover9Doc selfParse(std::string_view text) {
  Lexer lex(text);
  auto toks = lex.run();
  Parser p(std::move(toks), lex.symbols);
  return p.run(lex.symbols);
}

// ---- LaTeX ----

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::string_view("_#$%&{}").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string nameOf(const std::string& n, const LatexOptions& opt) {
  if (!opt.abbreviate) return escape(n);
  auto it = opt.abbreviations.find(n);
  return escape(it != opt.abbreviations.end() ? it->second : n.substr(0, 1));
}

int prec(const fa::Expr& e) {
  switch (e->op) {
    case Op::Union: return 0;
    case Op::Inter: return 1;
    case Op::LDiv:
    case Op::RDiv: return 2;
    case Op::Comp:
    case Op::Fork:
    case Op::Prod:
    case Op::NComp: return 3;
    case Op::Conv:
    case Op::Star: return 5;
    default: return 6;
  }
}

void tex(const fa::Expr& e, const LatexOptions& opt, std::string& out);

void wrap(const fa::Expr& e, bool paren, const LatexOptions& opt, std::string& out) {
  if (paren) out += "\\left(";
  tex(e, opt, out);
  if (paren) out += "\\right)";
}

void tex(const fa::Expr& e, const LatexOptions& opt, std::string& out) {
  switch (e->op) {
    case Op::Rel: out += "\\mathit{" + nameOf(e->name, opt) + "}"; return;
    case Op::Coref: out += "\\Phi_{\\mathit{" + nameOf(e->name, opt) + "}}"; return;
    case Op::Meta: out += "\\mathsf{" + escape(e->name) + "}"; return;
    case Op::Top: out += "\\top"; return;
    case Op::Bot: out += "\\bot"; return;
    case Op::Id: out += "\\mathit{id}"; return;
    case Op::Pi1: out += "\\pi_1"; return;
    case Op::Pi2: out += "\\pi_2"; return;
    case Op::Proj: out += "X^{" + std::to_string(e->n) + "}_{" + std::to_string(e->i) + "}"; return;
    case Op::Compl:
      out += "\\overline{";
      tex(e->lhs, opt, out);
      out += "}";
      return;
    case Op::Conv:
    case Op::Star:
      out += "{";
      wrap(e->lhs, prec(e->lhs) < 5, opt, out);
      out += e->op == Op::Conv ? "}^{\\circ}" : "}^{*}";
      return;
    case Op::Rotate:
      out += "\\overrightarrow{";
      tex(e->lhs, opt, out);
      out += "}";
      return;
    default: break;
  }
  std::string sym;
  switch (e->op) {
    case Op::Union: sym = " \\cup "; break;
    case Op::Inter: sym = " \\cap "; break;
    case Op::LDiv: sym = " \\backslash "; break;
    case Op::RDiv: sym = " / "; break;
    case Op::Comp: sym = " \\cdot "; break;
    case Op::Fork: sym = " \\nabla "; break;
    case Op::Prod: sym = " \\times "; break;
    case Op::NComp: sym = " \\bullet^{" + std::to_string(e->n) + "} "; break;
    default: break;
  }
  int p = prec(e);
  wrap(e->lhs, prec(e->lhs) < p || (prec(e->lhs) == p && e->lhs->op != e->op), opt, out);
  out += sym;
  wrap(e->rhs, prec(e->rhs) <= p, opt, out);
}

std::string var(const rl::Var& v) {
  switch (v.kind) {
    case rl::Var::Kind::X: return "\\mathbf{x}";
    case rl::Var::Kind::Y: return "\\mathbf{y}";
    default: return "v_{" + std::to_string(v.level) + "}";
  }
}

std::string tuple(const rl::Tuple& t) {
  if (t.size() == 1) return var(t[0]);
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + var(t[k]);
  return s + ")";
}

void tex(const rl::Formula& f, const LatexOptions& opt, std::string& out, int depth, bool paren) {
  using rl::Op;
  switch (f->op) {
    case Op::True: out += "\\mathit{true}"; return;
    case Op::False: out += "\\mathit{false}"; return;
    case Op::App: {
      std::string r;
      tex(f->rel, opt, r);
      bool simple = fa::isLeaf(f->rel->op);
      out += tuple(f->lhs) + " \\mathrel{" + (simple ? r : "\\left(" + r + "\\right)") + "} " + tuple(f->rhs);
      return;
    }
    case Op::Not:
      out += "\\neg ";
      tex(f->a, opt, out, depth, true);
      return;
    case Op::Forall:
    case Op::Exists: {
      out += f->op == Op::Forall ? "\\langle \\forall " : "\\langle \\exists ";
      int inner = depth;
      if (f->special) {
        out += "\\mathbf{x},\\mathbf{y}";
      } else {
        for (int k = 1; k <= f->count; ++k) out += (k > 1 ? "," : "") + var(rl::bv(depth + k));
        inner = depth + f->count;
      }
      out += " : ";
      if (f->range) tex(f->range, opt, out, inner, false);
      out += " : ";
      tex(f->a, opt, out, inner, false);
      out += " \\rangle";
      return;
    }
    default: break;
  }
  const char* sym = f->op == Op::And ? " \\wedge " : f->op == Op::Or ? " \\vee " : " \\Rightarrow ";
  if (paren) out += "\\left(";
  tex(f->a, opt, out, depth, f->a->op != f->op || f->op == Op::Implies);
  out += sym;
  tex(f->b, opt, out, depth, true);
  if (paren) out += "\\right)";
}

void names(const fa::Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Op::Rel || e->op == Op::Coref) out.insert(e->name);
  names(e->lhs, out);
  names(e->rhs, out);
}

void names(const rl::Formula& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == rl::Op::App) names(f->rel, out);
  names(f->a, out);
  names(f->b, out);
  names(f->range, out);
}

void names(const Term& t, std::set<std::string>& out) {
  if (auto* f = asFormula(t)) names(*f, out);
  if (auto* e = asExpr(t)) names(*e, out);
  if (auto* f = asFact(t)) names(f->lhs, out), names(f->rhs, out);
}

}  // namespace

std::string latex(const fa::Expr& e, const LatexOptions& opt) {
  std::string out;
  tex(e, opt, out);
  return out;
}

std::string latex(const fa::Fact& f, const LatexOptions& opt) {
  return latex(f.lhs, opt) + (f.kind == fa::Fact::Kind::Eq ? " = " : " \\subseteq ") + latex(f.rhs, opt);
}

std::string latex(const rl::Formula& f, const LatexOptions& opt) {
  std::string out;
  tex(f, opt, out, 0, false);
  return out;
}

std::string latex(const Term& t, const LatexOptions& opt) {
  return std::visit([&](const auto& x) { return latex(x, opt); }, t);
}

std::map<std::string, std::string> abbreviations(const std::vector<std::string>& names) {
  std::map<std::string, std::string> out;
  for (const auto& n : names) {
    std::size_t len = 1;
    for (; len < n.size(); ++len) {
      bool clash = false;
      for (const auto& m : names)
        if (m != n && m.compare(0, len, n, 0, len) == 0) clash = true;
      if (!clash) break;
    }
    out[n] = n.substr(0, len);
  }
  return out;
}

std::string emitLatex(const std::vector<Step>& trace, const std::vector<fa::Fact>& finalFacts,
                      const LatexOptions& opt) {
  return emitLatex(std::vector<Derivation>{{"Derivation", trace}}, finalFacts, opt);
}

std::string emitLatex(const std::vector<Derivation>& ds, const std::vector<fa::Fact>& finalFacts,
                      const LatexOptions& opt) {
  LatexOptions o = opt;
  if (o.abbreviate) {
    std::set<std::string> all;
    for (const auto& d : ds)
      for (const auto& s : d.trace) names(s.before, all), names(s.after, all);
    for (const auto& f : finalFacts) names(f.lhs, all), names(f.rhs, all);
    for (const auto& [k, v] : abbreviations({all.begin(), all.end()})) o.abbreviations.emplace(k, v);
  }
  std::string out =
      "\\documentclass{article}\n"
      "\\usepackage{amsmath,amssymb}\n"
      "\\allowdisplaybreaks\n"
      "\\begin{document}\n";
  if (o.abbreviate && !o.abbreviations.empty()) {
    out += "\\paragraph{Abbreviations}\n";
    bool first = true;
    for (const auto& [k, v] : o.abbreviations) {
      out += std::string(first ? "" : ", ") + "$\\mathit{" + escape(v) + "}$: \\texttt{" + escape(k) + "}";
      first = false;
    }
    out += "\n";
  }
  for (const auto& d : ds) {
    if (d.trace.empty()) continue;
    out += "\\section*{" + escape(d.title) + "}\n";
    for (std::size_t k = 0; k < d.trace.size(); ++k) {
      const auto& s = d.trace[k];
      out += "% step " + std::to_string(k + 1) + "\n";
      out += "\\begin{align*}\n  & " + latex(s.before, o) + " \\\\\n  \\leadsto{}_{\\textsf{" + escape(s.rule) +
             "}} \\quad & " + latex(s.after, o) + "\n\\end{align*}\n";
    }
  }
  out += "\\section*{Result}\n";
  if (finalFacts.empty()) {
    out += "No facts.\n";
  } else {
    out += "\\begin{align*}\n";
    for (std::size_t k = 0; k < finalFacts.size(); ++k)
      out += "  & " + latex(finalFacts[k], o) + (k + 1 < finalFacts.size() ? " \\\\\n" : "\n");
    out += "\\end{align*}\n";
  }
  out += "\\end{document}\n";
  return out;
}

std::string checkLatex(std::string_view text) {
  std::vector<std::string> envs;
  int braces = 0, lefts = 0;
  int line = 1;
  auto where = [&] { return "line " + std::to_string(line) + ": "; };
  auto word = [&](std::size_t& p) {
    std::string w;
    while (p < text.size() && std::isalpha(static_cast<unsigned char>(text[p]))) w += text[p++];
    return w;
  };
  for (std::size_t p = 0; p < text.size();) {
    char c = text[p];
    if (c == '\n') ++line;
    if (c == '%') {
      while (p < text.size() && text[p] != '\n') ++p;
      continue;
    }
    if (c == '\\') {
      ++p;
      if (p < text.size() && !std::isalpha(static_cast<unsigned char>(text[p]))) {
        if (text[p] == '\n') ++line;
        ++p;
        continue;
      }
      auto cmd = word(p);
      if (cmd == "left") ++lefts;
      if (cmd == "right" && --lefts < 0) return where() + "\\right without \\left";
      if (cmd == "begin" || cmd == "end") {
        if (p >= text.size() || text[p] != '{') return where() + "\\" + cmd + " without an environment";
        auto close = text.find('}', p);
        if (close == std::string_view::npos) return where() + "unterminated environment name";
        std::string env(text.substr(p + 1, close - p - 1));
        p = close + 1;
        if (cmd == "begin") {
          envs.push_back(env);
        } else {
          if (envs.empty() || envs.back() != env) return where() + "\\end{" + env + "} does not match";
          envs.pop_back();
        }
      }
      continue;
    }
    if (c == '{') ++braces;
    if (c == '}' && --braces < 0) return where() + "unbalanced '}'";
    ++p;
  }
  if (braces) return "unclosed '{'";
  if (lefts) return "unclosed \\left";
  if (!envs.empty()) return "unclosed environment " + envs.back();
  return {};
}

}  // namespace alloyfa::emit
