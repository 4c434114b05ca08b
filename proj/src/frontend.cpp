#include "alloyfa/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace alloyfa::frontend {

using namespace alloy;

namespace {

enum class Tok { Ident, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '"';
}

std::vector<Token> lex(std::string_view s) {
  static const char* const kSyms[] = {"&&", "||", "=>", "->", "<:", ":>", "!=", "{", "}", "[", "]", "(",
                                      ")",  ",",  ":",  "|",  ".",  "+",  "-",  "&", "~", "*", "^", "!",
                                      "=",  ";"};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (s.substr(i, 2) == "//" || s.substr(i, 2) == "--") {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    if (s.substr(i, 2) == "/*") {
      Pos start{line, col};
      adv(2);
      while (i < s.size() && s.substr(i, 2) != "*/") adv(1);
      if (i >= s.size()) throw AlloyError("unterminated comment", start);
      adv(2);
      continue;
    }
    Pos p{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), p});
      adv(j - i);
      continue;
    }
    if (identStart(c)) {
      std::size_t j = i;
      while (j < s.size() && identChar(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), p});
      adv(j - i);
      continue;
    }
    bool matched = false;
    for (const char* sym : kSyms) {
      std::string_view sv(sym);
      if (s.substr(i, sv.size()) == sv) {
        out.push_back({Tok::Sym, std::string(sv), p});
        adv(sv.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw AlloyError(std::string("unexpected character '") + c + "'", p);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

const std::set<std::string> kKeywords = {"sig",  "abstract", "extends", "pred", "fact", "assert",
                                         "all",  "some",     "lone",    "one",  "set",  "in",
                                         "and",  "or",       "not",     "implies", "univ", "iden",
                                         "none", "check",    "run",     "for",  "no",   "iff"};

// Result of the unified expression/formula grammar.
struct Item {
  ExprP e;
  FormP f;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Model model() {
    Model m;
    while (!at(Tok::End)) {
      if (isWord("sig") || isWord("abstract") || isMultWord()) {
        sigDecl(m);
      } else if (isWord("pred")) {
        m.preds.push_back(predDecl());
      } else if (isWord("fact")) {
        m.facts.push_back(factDecl());
      } else if (isWord("assert")) {
        m.asserts.push_back(assertDecl());
      } else if (isWord("check") || isWord("run")) {
        command();
      } else {
        fail("expected a declaration");
      }
    }
    return m;
  }

  Model rlDirect() {
    Model m;
    m.sortsAreUniverse = true;
    while (isWord("rel")) {
      next();
      Field f;
      f.pos = cur().pos;
      f.name = ident();
      expect(":");
      f.columns.push_back(ident());
      f.mults.push_back(Mult::None);
      while (isSym("->")) {
        next();
        f.columns.push_back(ident());
        f.mults.push_back(Mult::None);
      }
      expect(";");
      m.freeRels.push_back(f);
    }
    Assertion a;
    a.name = "goal";
    a.pos = cur().pos;
    FormP body;
    while (!at(Tok::End)) {
      FormP g = formula();
      body = body ? and_(body, g, g->pos) : g;
    }
    if (!body) fail("expected a formula");
    a.body = body;
    m.asserts.push_back(a);
    return m;
  }

 private:
  const Token& cur() const { return t_[k_]; }
  const Token& peek(std::size_t d) const { return t_[std::min(k_ + d, t_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool isSym(const char* s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool isWord(const char* s) const { return cur().kind == Tok::Ident && cur().text == s; }
  bool isMultWord() const { return isWord("one") || isWord("lone") || isWord("some"); }
  void next() {
    if (k_ + 1 < t_.size()) ++k_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    throw AlloyError(msg + ", found " + got, cur().pos);
  }
  void expect(const char* s) {
    if (!isSym(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  std::string ident() {
    if (!at(Tok::Ident) || kKeywords.count(cur().text) || !identStart(cur().text[0]))
      fail("expected an identifier");
    std::string s = cur().text;
    next();
    return s;
  }

  Mult optMult() {
    static const std::map<std::string, Mult> kM = {
        {"set", Mult::Set}, {"some", Mult::Some}, {"lone", Mult::Lone}, {"one", Mult::One}};
    if (at(Tok::Ident)) {
      auto it = kM.find(cur().text);
      if (it != kM.end()) {
        next();
        return it->second;
      }
    }
    return Mult::None;
  }

  void sigDecl(Model& m) {
    bool abstract = false;
    Mult mult = Mult::None;
    Pos p = cur().pos;
    while (!isWord("sig")) {
      if (isWord("abstract")) {
        if (abstract) fail("duplicate 'abstract'");
        abstract = true;
        next();
      } else if (isMultWord()) {
        if (mult != Mult::None) fail("duplicate signature multiplicity");
        mult = optMult();
      } else {
        fail("expected 'sig'");
      }
    }
    next();
    std::vector<std::string> names{ident()};
    while (isSym(",")) {
      next();
      names.push_back(ident());
    }
    std::string parent;
    if (isWord("extends")) {
      next();
      parent = ident();
    }
    expect("{");
    std::vector<Field> fields;
    while (!isSym("}")) {
      Pos fp = cur().pos;
      std::vector<std::string> fnames{ident()};
      while (isSym(",")) {
        next();
        fnames.push_back(ident());
      }
      expect(":");
      Field f;
      f.pos = fp;
      f.mults.push_back(optMult());
      f.columns.push_back(ident());
      while (isSym("->")) {
        next();
        f.mults.push_back(optMult());
        f.columns.push_back(ident());
      }
      for (const auto& n : fnames) {
        Field g = f;
        g.name = n;
        fields.push_back(g);
      }
      if (isSym(",")) {
        next();
        continue;
      }
      if (!isSym("}")) fail("expected ',' or '}' after field");
    }
    next();
    if (names.size() > 1 && !fields.empty())
      throw AlloyError("fields on a multi-name signature declaration are not supported", p);
    for (const auto& n : names) {
      Sig s;
      s.name = n;
      s.parent = parent;
      s.abstract = abstract;
      s.mult = mult;
      s.fields = fields;
      s.pos = p;
      m.sigs.push_back(s);
    }
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    expect("[");
    if (isSym("]")) {
      next();
      return out;
    }
    while (true) {
      std::vector<std::string> names{ident()};
      while (isSym(",")) {
        next();
        names.push_back(ident());
      }
      expect(":");
      std::string type = ident();
      for (const auto& n : names) out.push_back({n, type});
      if (isSym(",")) {
        next();
        continue;
      }
      break;
    }
    expect("]");
    return out;
  }

  FormP block() {
    Pos p = cur().pos;
    expect("{");
    FormP body;
    while (!isSym("}")) {
      if (at(Tok::End)) fail("expected '}'");
      FormP g = formula();
      body = body ? and_(body, g, g->pos) : g;
    }
    next();
    return body ? body : truth(p);
  }

  Pred predDecl() {
    Pred pr;
    pr.pos = cur().pos;
    next();
    pr.name = ident();
    if (isSym("[")) pr.params = params();
    pr.body = block();
    return pr;
  }

  alloy::Fact factDecl() {
    alloy::Fact f;
    f.pos = cur().pos;
    next();
    if (at(Tok::Ident) && !kKeywords.count(cur().text)) f.name = ident();
    f.body = block();
    return f;
  }

  Assertion assertDecl() {
    Assertion a;
    a.pos = cur().pos;
    next();
    if (at(Tok::Ident) && !kKeywords.count(cur().text)) a.name = ident();
    if (isSym("[")) a.params = params();
    a.body = block();
    return a;
  }

  // check/run commands carry no meaning for the translation and are skipped.
  void command() {
    next();
    if (isSym("{")) block();
    while (!at(Tok::End) && !(isWord("sig") || isWord("abstract") || isMultWord() ||
                              isWord("pred") || isWord("fact") || isWord("assert") ||
                              isWord("check") || isWord("run")))
      next();
  }

  // ---- formulas and expressions --------------------------------------

  FormP asForm(const Item& it, Pos p) {
    if (it.f) return it.f;
    throw AlloyError("expected a formula but found an expression", p);
  }
  ExprP asExpr(const Item& it, Pos p) {
    if (it.e) return it.e;
    throw AlloyError("expected an expression but found a formula", p);
  }

  FormP formula() {
    Pos p = cur().pos;
    return asForm(orLevel(), p);
  }

  Item orLevel() {
    Pos p = cur().pos;
    Item l = impliesLevel();
    while (isSym("||") || isWord("or")) {
      Pos op = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = impliesLevel();
      l = Item{nullptr, or_(asForm(l, p), asForm(r, q), op)};
    }
    return l;
  }

  Item impliesLevel() {
    Pos p = cur().pos;
    Item l = andLevel();
    if (isSym("=>") || isWord("implies")) {
      Pos op = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = impliesLevel();
      return Item{nullptr, implies(asForm(l, p), asForm(r, q), op)};
    }
    return l;
  }

  Item andLevel() {
    Pos p = cur().pos;
    Item l = notLevel();
    while (isSym("&&") || isWord("and")) {
      Pos op = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = notLevel();
      l = Item{nullptr, and_(asForm(l, p), asForm(r, q), op)};
    }
    return l;
  }

  Item notLevel() {
    if (isSym("!") || isWord("not")) {
      Pos op = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = notLevel();
      return Item{nullptr, not_(asForm(r, q), op)};
    }
    return compareLevel();
  }

  bool quantifierAhead() const {
    // ident (',' ident)* ':'
    std::size_t d = 1;
    while (true) {
      const Token& a = peek(d);
      if (a.kind != Tok::Ident) return false;
      const Token& b = peek(d + 1);
      if (b.kind == Tok::Sym && b.text == ":") return true;
      if (b.kind == Tok::Sym && b.text == ",") {
        d += 2;
        continue;
      }
      return false;
    }
  }

  Item quantifier(bool universal) {
    Pos p = cur().pos;
    next();
    std::vector<std::pair<std::string, ExprP>> decls;
    while (true) {
      std::vector<std::string> names{ident()};
      while (isSym(",")) {
        next();
        names.push_back(ident());
      }
      expect(":");
      Pos rp = cur().pos;
      ExprP range = asExpr(unionLevel(), rp);
      for (const auto& n : names) decls.emplace_back(n, range);
      if (isSym(",")) {
        next();
        continue;
      }
      break;
    }
    FormP body;
    if (isSym("|")) {
      next();
      body = formula();
    } else if (isSym("{")) {
      body = block();
    } else {
      fail("expected '|' or '{' after quantifier declarations");
    }
    for (auto it = decls.rbegin(); it != decls.rend(); ++it)
      body = universal ? all(it->first, it->second, body, p) : exists(it->first, it->second, body, p);
    return Item{nullptr, body};
  }

  Item compareLevel() {
    Pos p = cur().pos;
    if (isWord("all")) return quantifier(true);
    if (isWord("some") && quantifierAhead()) return quantifier(false);
    if (isWord("some") || isWord("lone")) {
      bool isSome = isWord("some");
      next();
      Pos q = cur().pos;
      ExprP e = asExpr(unionLevel(), q);
      return Item{nullptr, isSome ? some(e, p) : lone(e, p)};
    }
    if (isWord("one") || isWord("no"))
      fail("'" + cur().text + "' formulas are not supported");
    Item l = unionLevel();
    if (isWord("in") || isSym("=")) {
      bool isIn = isWord("in");
      Pos op = cur().pos;
      next();
      Pos q = cur().pos;
      ExprP r = asExpr(unionLevel(), q);
      ExprP le = asExpr(l, p);
      return Item{nullptr, isIn ? in(le, r, op) : eq(le, r, op)};
    }
    if (isSym("!=")) fail("'!=' is not supported");
    return l;
  }

  Item unionLevel() {
    Pos p = cur().pos;
    Item l = interLevel();
    while (isSym("+") || isSym("-")) {
      EOp op = isSym("+") ? EOp::Union : EOp::Diff;
      Pos o = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = interLevel();
      l = Item{binary(op, asExpr(l, p), asExpr(r, q), o), nullptr};
    }
    return l;
  }

  Item interLevel() {
    Pos p = cur().pos;
    Item l = productLevel();
    while (isSym("&")) {
      Pos o = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = productLevel();
      l = Item{binary(EOp::Inter, asExpr(l, p), asExpr(r, q), o), nullptr};
    }
    return l;
  }

  Item productLevel() {
    Pos p = cur().pos;
    Item l = restrictLevel();
    while (isSym("->")) {
      Pos o = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = restrictLevel();
      l = Item{binary(EOp::Product, asExpr(l, p), asExpr(r, q), o), nullptr};
    }
    return l;
  }

  Item restrictLevel() {
    Pos p = cur().pos;
    Item l = joinLevel();
    while (isSym("<:") || isSym(":>")) {
      EOp op = isSym("<:") ? EOp::DomRestr : EOp::RanRestr;
      Pos o = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = joinLevel();
      l = Item{binary(op, asExpr(l, p), asExpr(r, q), o), nullptr};
    }
    return l;
  }

  Item joinLevel() {
    Pos p = cur().pos;
    Item l = unaryLevel();
    while (isSym(".")) {
      Pos o = cur().pos;
      next();
      Pos q = cur().pos;
      Item r = unaryLevel();
      l = Item{binary(EOp::Join, asExpr(l, p), asExpr(r, q), o), nullptr};
    }
    return l;
  }

  Item unaryLevel() {
    Pos p = cur().pos;
    // ^R is outside the translatable core; R.*R says the same thing.
    if (isSym("^")) throw AlloyError("transitive closure '^' is not supported, write R.*R instead", p);
    if (isSym("~") || isSym("*")) {
      EOp op = isSym("~") ? EOp::Transpose : EOp::Closure;
      next();
      Pos q = cur().pos;
      Item r = unaryLevel();
      return Item{unary(op, asExpr(r, q), p), nullptr};
    }
    return primary();
  }

  Item primary() {
    Pos p = cur().pos;
    if (isSym("(")) {
      next();
      Item inner = orLevel();
      expect(")");
      return inner;
    }
    if (isWord("univ")) {
      next();
      return Item{constant(EOp::Univ, p), nullptr};
    }
    if (isWord("iden")) {
      next();
      return Item{constant(EOp::Iden, p), nullptr};
    }
    if (isWord("none")) {
      next();
      return Item{constant(EOp::NoneE, p), nullptr};
    }
    if (isWord("all") || isWord("some")) return compareLevel();
    std::string n = ident();
    if (isSym("[")) {
      next();
      std::vector<ExprP> args;
      if (!isSym("]")) {
        while (true) {
          Pos q = cur().pos;
          args.push_back(asExpr(unionLevel(), q));
          if (isSym(",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect("]");
      return Item{nullptr, call(n, args, p)};
    }
    return Item{name(n, p), nullptr};
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
};

// ---- name resolution --------------------------------------------------

class Resolver {
 public:
  Resolver(const Model& m) : m_(m) {
    for (const auto& s : m.sigs) declare(s.name, s.pos);
    for (const auto& s : m.sigs)
      for (const auto& f : s.fields) declare(f.name, f.pos);
    for (const auto& f : m.freeRels) declare(f.name, f.pos);
    for (const auto& p : m.preds) {
      if (preds_.count(p.name)) throw AlloyError("duplicate predicate " + p.name, p.pos);
      preds_[p.name] = p.params.size();
    }
    for (const auto& s : m.sigs) {
      if (!s.parent.empty() && !isSig(s.parent))
        throw AlloyError("unknown parent signature " + s.parent, s.pos);
      for (const auto& f : s.fields)
        for (const auto& c : f.columns)
          if (!isType(c)) throw AlloyError("unknown type " + c + " in field " + f.name, f.pos);
    }
    // cycles in the hierarchy
    for (const auto& s : m.sigs) {
      std::set<std::string> seen;
      for (const Sig* x = &s; x && !x->parent.empty(); x = findSig(x->parent)) {
        if (!seen.insert(x->name).second)
          throw AlloyError("cyclic signature hierarchy at " + s.name, s.pos);
      }
    }
  }

  Model run() {
    Model out = m_;
    for (auto& p : out.preds) {
      std::vector<std::string> scope;
      for (const auto& q : p.params) {
        if (!isType(q.type)) throw AlloyError("unknown type " + q.type, p.pos);
        scope.push_back(q.name);
      }
      p.body = form(p.body, scope);
    }
    for (auto& f : out.facts) {
      std::vector<std::string> scope;
      f.body = form(f.body, scope);
    }
    for (auto& a : out.asserts) {
      std::vector<std::string> scope;
      for (const auto& q : a.params) {
        if (!isType(q.type)) throw AlloyError("unknown type " + q.type, a.pos);
        scope.push_back(q.name);
      }
      a.body = form(a.body, scope);
    }
    return out;
  }

 private:
  void declare(const std::string& n, Pos p) {
    if (!globals_.insert(n).second) throw AlloyError("duplicate declaration of " + n, p);
  }
  const Sig* findSig(const std::string& n) const {
    for (const auto& s : m_.sigs)
      if (s.name == n) return &s;
    return nullptr;
  }
  bool isSig(const std::string& n) const { return findSig(n) != nullptr; }
  bool isType(const std::string& n) const { return n == "univ" || isSig(n) || m_.sortsAreUniverse; }

  ExprP expr(const ExprP& e, const std::vector<std::string>& scope) {
    if (!e) return e;
    if (e->op == EOp::Name) {
      if (std::find(scope.begin(), scope.end(), e->name) != scope.end()) return var(e->name, e->pos);
      if (globals_.count(e->name)) return e;
      if (m_.sortsAreUniverse && !preds_.count(e->name)) return constant(EOp::Univ, e->pos);
      throw AlloyError("unknown identifier " + e->name, e->pos);
    }
    ExprP a = expr(e->a, scope), b = expr(e->b, scope);
    if (a == e->a && b == e->b) return e;
    auto c = std::make_shared<Expr>(*e);
    c->a = a;
    c->b = b;
    return c;
  }

  FormP form(const FormP& f, std::vector<std::string>& scope) {
    if (!f) return f;
    auto c = std::make_shared<Form>(*f);
    c->x = expr(f->x, scope);
    c->y = expr(f->y, scope);
    for (auto& a : c->args) a = expr(a, scope);
    if (f->op == FOp::Call) {
      auto it = preds_.find(f->name);
      if (it == preds_.end()) throw AlloyError("unknown predicate " + f->name, f->pos);
      if (it->second != f->args.size())
        throw AlloyError("predicate " + f->name + " expects " + std::to_string(it->second) +
                             " arguments, got " + std::to_string(f->args.size()),
                         f->pos);
    }
    if (f->op == FOp::All || f->op == FOp::Exists) {
      scope.push_back(f->var);
      c->f = form(f->f, scope);
      scope.pop_back();
      return c;
    }
    c->f = form(f->f, scope);
    c->g = form(f->g, scope);
    return c;
  }

  const Model& m_;
  std::set<std::string> globals_;
  std::map<std::string, std::size_t> preds_;
};

// ---- arities --------------------------------------------------------------

class ArityChecker {
 public:
  explicit ArityChecker(const Model& m) : st_(buildSymbols(m)) {}

  ExprP expr(const ExprP& e) {
    auto c = std::make_shared<Expr>(*e);
    if (e->a) c->a = expr(e->a);
    if (e->b) c->b = expr(e->b);
    int a = c->a ? c->a->arity : 0, b = c->b ? c->b->arity : 0;
    auto mismatch = [&](const std::string& what) {
      throw AlloyError("arity mismatch: " + what + " on arities " + std::to_string(a) + " and " +
                           std::to_string(b),
                       e->pos);
    };
    switch (e->op) {
      case EOp::Name:
        if (st_.sig(e->name))
          c->arity = 1;
        else if (const RelSym* r = st_.rel(e->name))
          c->arity = r->arity();
        else
          throw AlloyError("unknown identifier " + e->name, e->pos);
        break;
      case EOp::Var:
      case EOp::Univ:
      case EOp::NoneE: c->arity = 1; break;
      case EOp::Iden: c->arity = 2; break;
      case EOp::Transpose:
      case EOp::Closure:
      case EOp::TClosure:
        if (a != 2)
          throw AlloyError("arity mismatch: unary operator needs a binary relation, got arity " +
                               std::to_string(a),
                           e->pos);
        c->arity = 2;
        break;
      case EOp::Join:
        if (a + b - 2 < 1) mismatch("join");
        c->arity = a + b - 2;
        break;
      case EOp::Union:
      case EOp::Inter:
      case EOp::Diff:
        if (a != b) mismatch("set-op");
        c->arity = a;
        break;
      case EOp::Product: c->arity = a + b; break;
      case EOp::DomRestr:
        if (a != 1) mismatch("domain restriction");
        c->arity = b;
        break;
      case EOp::RanRestr:
        if (b != 1) mismatch("range restriction");
        c->arity = a;
        break;
    }
    return c;
  }

  FormP form(const FormP& f) {
    if (!f) return f;
    auto c = std::make_shared<Form>(*f);
    if (f->x) c->x = expr(f->x);
    if (f->y) c->y = expr(f->y);
    for (auto& a : c->args) {
      a = expr(a);
      if (a->arity != 1)
        throw AlloyError("arity mismatch: predicate argument of arity " + std::to_string(a->arity),
                         a->pos);
    }
    if ((f->op == FOp::In || f->op == FOp::Eq) && c->x->arity != c->y->arity)
      throw AlloyError("arity mismatch: comparison on arities " + std::to_string(c->x->arity) +
                           " and " + std::to_string(c->y->arity),
                       f->pos);
    if ((f->op == FOp::All || f->op == FOp::Exists) && c->x->arity != 1)
      throw AlloyError("arity mismatch: quantifier range of arity " + std::to_string(c->x->arity),
                       f->pos);
    c->f = form(f->f);
    c->g = form(f->g);
    return c;
  }

 private:
  SymbolTable st_;
};

// ---- desugaring -----------------------------------------------------------

class Desugarer {
 public:
  explicit Desugarer(const Model& m) : m_(m) {}

  FormP run(const FormP& f) { return lower(inline_(f)); }

  std::string fresh(const std::string& base) { return base + "$" + std::to_string(++counter_); }

 private:
  // Substitutes variables by expressions, renaming binders that would capture.
  ExprP subst(const ExprP& e, const std::map<std::string, ExprP>& s) {
    if (!e) return e;
    if (e->op == EOp::Var) {
      auto it = s.find(e->name);
      return it == s.end() ? e : it->second;
    }
    ExprP a = subst(e->a, s), b = subst(e->b, s);
    if (a == e->a && b == e->b) return e;
    auto c = std::make_shared<Expr>(*e);
    c->a = a;
    c->b = b;
    return c;
  }

  FormP subst(const FormP& f, std::map<std::string, ExprP> s) {
    if (!f) return f;
    auto c = std::make_shared<Form>(*f);
    c->x = subst(f->x, s);
    c->y = subst(f->y, s);
    for (auto& a : c->args) a = subst(a, s);
    if (f->op == FOp::All || f->op == FOp::Exists) {
      s.erase(f->var);
      std::vector<std::string> fv;
      for (const auto& [k, v] : s) freeVars(v, fv);
      if (std::find(fv.begin(), fv.end(), f->var) != fv.end()) {
        std::string nv = fresh(f->var);
        s[f->var] = var(nv, f->pos);
        c->var = nv;
      }
      c->f = subst(f->f, s);
      return c;
    }
    c->f = subst(f->f, s);
    c->g = subst(f->g, s);
    return c;
  }

  FormP inline_(const FormP& f) {
    if (!f) return f;
    if (f->op == FOp::Call) {
      const Pred* p = nullptr;
      for (const auto& q : m_.preds)
        if (q.name == f->name) p = &q;
      if (!p) throw AlloyError("unknown predicate " + f->name, f->pos);
      if (std::find(stack_.begin(), stack_.end(), f->name) != stack_.end())
        throw AlloyError("recursive predicate " + f->name, f->pos);
      std::map<std::string, ExprP> s;
      for (std::size_t k = 0; k < p->params.size(); ++k) s[p->params[k].name] = f->args[k];
      stack_.push_back(f->name);
      FormP body = inline_(subst(p->body, s));
      stack_.pop_back();
      return body;
    }
    auto c = std::make_shared<Form>(*f);
    c->f = inline_(f->f);
    c->g = inline_(f->g);
    return c;
  }

  ExprP tupleOf(const std::vector<std::string>& vs, Pos p) {
    ExprP e = var(vs[0], p);
    for (std::size_t k = 1; k < vs.size(); ++k) e = binary(EOp::Product, e, var(vs[k], p), p);
    return e;
  }

  FormP lower(const FormP& f) {
    Pos p = f->pos;
    switch (f->op) {
      case FOp::In:
      case FOp::Some:
      case FOp::True: return f;
      case FOp::Eq: return and_(in(f->x, f->y, p), in(f->y, f->x, p), p);
      case FOp::Not: return not_(lower(f->f), p);
      case FOp::And: return and_(lower(f->f), lower(f->g), p);
      case FOp::Or: return not_(and_(not_(lower(f->f), p), not_(lower(f->g), p), p), p);
      case FOp::Implies: return not_(and_(lower(f->f), not_(lower(f->g), p), p), p);
      case FOp::All: return all(f->var, f->x, lower(f->f), p);
      case FOp::Exists: return not_(all(f->var, f->x, not_(lower(f->f), p), p), p);
      case FOp::Lone: {
        int m = arityOf(f->x);
        std::vector<std::string> xs, ys;
        for (int k = 0; k < m; ++k) xs.push_back(fresh("x"));
        for (int k = 0; k < m; ++k) ys.push_back(fresh("y"));
        FormP same;
        for (int k = 0; k < m; ++k) {
          FormP e = and_(in(var(xs[static_cast<std::size_t>(k)], p), var(ys[static_cast<std::size_t>(k)], p), p),
                         in(var(ys[static_cast<std::size_t>(k)], p), var(xs[static_cast<std::size_t>(k)], p), p), p);
          same = same ? and_(same, e, p) : e;
        }
        FormP body = not_(and_(and_(in(tupleOf(xs, p), f->x, p), in(tupleOf(ys, p), f->x, p), p),
                               not_(same, p), p),
                          p);
        for (int k = m; k-- > 0;) body = all(ys[static_cast<std::size_t>(k)], constant(EOp::Univ, p), body, p);
        for (int k = m; k-- > 0;) body = all(xs[static_cast<std::size_t>(k)], constant(EOp::Univ, p), body, p);
        return body;
      }
      case FOp::Call: throw AlloyError("predicate call left after inlining", p);
    }
    return f;
  }

  int arityOf(const ExprP& e) {
    if (e->arity > 0) return e->arity;
    throw AlloyError("internal: expression without arity", e->pos);
  }

  const Model& m_;
  std::vector<std::string> stack_;
  int counter_ = 0;
};

void printForm(std::string& out, const FormP& f) {
  if (f->op == FOp::True) return;
  out += "  " + toString(f) + "\n";
}

std::string printParams(const std::vector<Param>& ps) {
  std::string s = "[";
  for (std::size_t k = 0; k < ps.size(); ++k) s += (k ? ", " : "") + ps[k].name + " : " + ps[k].type;
  return s + "]";
}

}  // namespace

Model parse(std::string_view src) {
  Parser p(lex(src));
  Model m = p.model();
  return Resolver(m).run();
}

Model parseRlDirect(std::string_view src) {
  Parser p(lex(src));
  Model m = p.rlDirect();
  return Resolver(m).run();
}

SymbolTable buildSymbols(const Model& m) {
  SymbolTable st;
  st.sortsAreUniverse = m.sortsAreUniverse;
  for (const auto& s : m.sigs) st.sigs.push_back({s.name, s.parent, s.abstract, s.mult, {}});
  for (auto& s : st.sigs)
    for (const auto& t : m.sigs)
      if (t.parent == s.name) s.children.push_back(t.name);
  for (const auto& s : m.sigs)
    for (const auto& f : s.fields) {
      RelSym r;
      r.name = f.name;
      r.owner = s.name;
      r.columns.push_back(s.name);
      r.mults.push_back(Mult::None);
      for (std::size_t k = 0; k < f.columns.size(); ++k) {
        r.columns.push_back(f.columns[k]);
        r.mults.push_back(f.mults[k]);
      }
      st.rels.push_back(r);
    }
  for (const auto& f : m.freeRels) {
    RelSym r;
    r.name = f.name;
    r.columns = f.columns;
    r.mults = f.mults;
    st.rels.push_back(r);
  }
  return st;
}

Model checkArities(const Model& m) {
  ArityChecker ac(m);
  Model out = m;
  for (auto& p : out.preds) p.body = ac.form(p.body);
  for (auto& f : out.facts) f.body = ac.form(f.body);
  for (auto& a : out.asserts) a.body = ac.form(a.body);
  return out;
}

Model desugar(const Model& m) {
  Model in = checkArities(m);
  Desugarer d(in);
  Model out = in;
  for (auto& f : out.facts) f.body = d.run(f.body);
  for (auto& a : out.asserts) {
    FormP body = a.body;
    for (auto it = a.params.rbegin(); it != a.params.rend(); ++it) {
      ExprP range = in.sortsAreUniverse ? constant(EOp::Univ, a.pos) : name(it->type, a.pos);
      if (it->type == "univ") range = constant(EOp::Univ, a.pos);
      body = all(it->name, range, body, a.pos);
    }
    a.body = d.run(body);
    a.params.clear();
  }
  out.preds.clear();
  return checkArities(out);
}

bool isCore(const FormP& f) {
  if (!f) return true;
  switch (f->op) {
    case FOp::In:
    case FOp::Some:
    case FOp::True: return true;
    case FOp::Not: return isCore(f->f);
    case FOp::And: return isCore(f->f) && isCore(f->g);
    case FOp::All: return isCore(f->f);
    default: return false;
  }
}

std::string prettyPrint(const Model& m) {
  std::string out;
  if (m.sortsAreUniverse) {
    for (const auto& f : m.freeRels) {
      out += "rel " + f.name + " : ";
      for (std::size_t k = 0; k < f.columns.size(); ++k) out += (k ? " -> " : "") + f.columns[k];
      out += ";\n";
    }
    for (const auto& a : m.asserts) out += toString(a.body) + "\n";
    return out;
  }
  for (const auto& s : m.sigs) {
    std::string head;
    if (s.abstract) head += "abstract ";
    if (s.mult != Mult::None) head += std::string(toString(s.mult)) + " ";
    head += "sig " + s.name;
    if (!s.parent.empty()) head += " extends " + s.parent;
    out += head + " {";
    for (std::size_t k = 0; k < s.fields.size(); ++k) {
      const Field& f = s.fields[k];
      out += (k ? ",\n  " : "\n  ") + f.name + " : ";
      for (std::size_t j = 0; j < f.columns.size(); ++j) {
        if (j) out += " -> ";
        if (f.mults[j] != Mult::None) out += std::string(toString(f.mults[j])) + " ";
        out += f.columns[j];
      }
    }
    out += s.fields.empty() ? "}\n" : "\n}\n";
  }
  for (const auto& p : m.preds) {
    out += "pred " + p.name + (p.params.empty() ? "" : printParams(p.params)) + " {\n";
    printForm(out, p.body);
    out += "}\n";
  }
  for (const auto& f : m.facts) {
    out += "fact " + (f.name.empty() ? "" : f.name + " ") + "{\n";
    printForm(out, f.body);
    out += "}\n";
  }
  for (const auto& a : m.asserts) {
    out += "assert " + a.name + (a.params.empty() ? "" : printParams(a.params)) + " {\n";
    printForm(out, a.body);
    out += "}\n";
  }
  return out;
}

}  // namespace alloyfa::frontend
