#include "alloyfa/alloy.hpp"

#include <algorithm>

namespace alloyfa::alloy {

const char* toString(Mult m) {
  switch (m) {
    case Mult::None: return "";
    case Mult::Set: return "set";
    case Mult::Some: return "some";
    case Mult::Lone: return "lone";
    case Mult::One: return "one";
  }
  return "";
}

const SigSym* SymbolTable::sig(const std::string& n) const {
  for (const auto& s : sigs)
    if (s.name == n) return &s;
  return nullptr;
}

const RelSym* SymbolTable::rel(const std::string& n) const {
  for (const auto& r : rels)
    if (r.name == n) return &r;
  return nullptr;
}

std::vector<std::string> SymbolTable::topLevel() const {
  std::vector<std::string> out;
  for (const auto& s : sigs)
    if (s.parent.empty()) out.push_back(s.name);
  return out;
}

namespace {

ExprP mkE(EOp op, std::string n, ExprP a, ExprP b, Pos p) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->name = std::move(n);
  e->a = std::move(a);
  e->b = std::move(b);
  e->pos = p;
  return e;
}

std::shared_ptr<Form> mkF(FOp op, Pos p) {
  auto f = std::make_shared<Form>();
  f->op = op;
  f->pos = p;
  return f;
}

}  // namespace

ExprP name(std::string n, Pos p) { return mkE(EOp::Name, std::move(n), nullptr, nullptr, p); }
ExprP var(std::string n, Pos p) { return mkE(EOp::Var, std::move(n), nullptr, nullptr, p); }
ExprP unary(EOp op, ExprP a, Pos p) { return mkE(op, {}, std::move(a), nullptr, p); }
ExprP binary(EOp op, ExprP a, ExprP b, Pos p) { return mkE(op, {}, std::move(a), std::move(b), p); }
ExprP constant(EOp op, Pos p) { return mkE(op, {}, nullptr, nullptr, p); }

FormP in(ExprP x, ExprP y, Pos p) {
  auto f = mkF(FOp::In, p);
  f->x = std::move(x);
  f->y = std::move(y);
  return f;
}
FormP eq(ExprP x, ExprP y, Pos p) {
  auto f = mkF(FOp::Eq, p);
  f->x = std::move(x);
  f->y = std::move(y);
  return f;
}
FormP some(ExprP x, Pos p) {
  auto f = mkF(FOp::Some, p);
  f->x = std::move(x);
  return f;
}
FormP lone(ExprP x, Pos p) {
  auto f = mkF(FOp::Lone, p);
  f->x = std::move(x);
  return f;
}
FormP not_(FormP g, Pos p) {
  auto f = mkF(FOp::Not, p);
  f->f = std::move(g);
  return f;
}
FormP and_(FormP a, FormP b, Pos p) {
  auto f = mkF(FOp::And, p);
  f->f = std::move(a);
  f->g = std::move(b);
  return f;
}
FormP or_(FormP a, FormP b, Pos p) {
  auto f = mkF(FOp::Or, p);
  f->f = std::move(a);
  f->g = std::move(b);
  return f;
}
FormP implies(FormP a, FormP b, Pos p) {
  auto f = mkF(FOp::Implies, p);
  f->f = std::move(a);
  f->g = std::move(b);
  return f;
}
FormP all(std::string v, ExprP range, FormP body, Pos p) {
  auto f = mkF(FOp::All, p);
  f->var = std::move(v);
  f->x = std::move(range);
  f->f = std::move(body);
  return f;
}
FormP exists(std::string v, ExprP range, FormP body, Pos p) {
  auto f = mkF(FOp::Exists, p);
  f->var = std::move(v);
  f->x = std::move(range);
  f->f = std::move(body);
  return f;
}
FormP call(std::string n, std::vector<ExprP> args, Pos p) {
  auto f = mkF(FOp::Call, p);
  f->name = std::move(n);
  f->args = std::move(args);
  return f;
}
FormP truth(Pos p) { return mkF(FOp::True, p); }

bool equal(const ExprP& a, const ExprP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->op == b->op && a->name == b->name && equal(a->a, b->a) && equal(a->b, b->b);
}

bool equal(const FormP& a, const FormP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->var != b->var || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!equal(a->args[k], b->args[k])) return false;
  return equal(a->x, b->x) && equal(a->y, b->y) && equal(a->f, b->f) && equal(a->g, b->g);
}

bool equal(const Model& a, const Model& b) {
  if (a.sigs.size() != b.sigs.size() || a.preds.size() != b.preds.size() ||
      a.facts.size() != b.facts.size() || a.asserts.size() != b.asserts.size())
    return false;
  for (std::size_t k = 0; k < a.sigs.size(); ++k) {
    const Sig &x = a.sigs[k], &y = b.sigs[k];
    if (x.name != y.name || x.parent != y.parent || x.abstract != y.abstract || x.mult != y.mult ||
        x.fields.size() != y.fields.size())
      return false;
    for (std::size_t j = 0; j < x.fields.size(); ++j)
      if (x.fields[j].name != y.fields[j].name || x.fields[j].columns != y.fields[j].columns ||
          x.fields[j].mults != y.fields[j].mults)
        return false;
  }
  auto sameParams = [](const std::vector<Param>& p, const std::vector<Param>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k].name != q[k].name || p[k].type != q[k].type) return false;
    return true;
  };
  for (std::size_t k = 0; k < a.preds.size(); ++k)
    if (a.preds[k].name != b.preds[k].name || !sameParams(a.preds[k].params, b.preds[k].params) ||
        !equal(a.preds[k].body, b.preds[k].body))
      return false;
  for (std::size_t k = 0; k < a.facts.size(); ++k)
    if (a.facts[k].name != b.facts[k].name || !equal(a.facts[k].body, b.facts[k].body)) return false;
  for (std::size_t k = 0; k < a.asserts.size(); ++k)
    if (a.asserts[k].name != b.asserts[k].name ||
        !sameParams(a.asserts[k].params, b.asserts[k].params) ||
        !equal(a.asserts[k].body, b.asserts[k].body))
      return false;
  return a.sortsAreUniverse == b.sortsAreUniverse;
}

std::string toString(const ExprP& e) {
  switch (e->op) {
    case EOp::Name:
    case EOp::Var: return e->name;
    case EOp::Univ: return "univ";
    case EOp::Iden: return "iden";
    case EOp::NoneE: return "none";
    case EOp::Transpose: return "~(" + toString(e->a) + ")";
    case EOp::Closure: return "*(" + toString(e->a) + ")";
    case EOp::TClosure: return "^(" + toString(e->a) + ")";
    default: break;
  }
  const char* op = "";
  switch (e->op) {
    case EOp::Join: op = "."; break;
    case EOp::Union: op = " + "; break;
    case EOp::Inter: op = " & "; break;
    case EOp::Diff: op = " - "; break;
    case EOp::Product: op = " -> "; break;
    case EOp::DomRestr: op = " <: "; break;
    case EOp::RanRestr: op = " :> "; break;
    default: break;
  }
  return "(" + toString(e->a) + op + toString(e->b) + ")";
}

std::string toString(const FormP& f) {
  switch (f->op) {
    case FOp::In: return "(" + toString(f->x) + " in " + toString(f->y) + ")";
    case FOp::Eq: return "(" + toString(f->x) + " = " + toString(f->y) + ")";
    case FOp::Some: return "(some " + toString(f->x) + ")";
    case FOp::Lone: return "(lone " + toString(f->x) + ")";
    case FOp::Not: return "!" + toString(f->f);
    case FOp::And: return "(" + toString(f->f) + " && " + toString(f->g) + ")";
    case FOp::Or: return "(" + toString(f->f) + " || " + toString(f->g) + ")";
    case FOp::Implies: return "(" + toString(f->f) + " => " + toString(f->g) + ")";
    case FOp::All:
    case FOp::Exists:
      return std::string("(") + (f->op == FOp::All ? "all " : "some ") + f->var + " : " +
             toString(f->x) + " | " + toString(f->f) + ")";
    case FOp::Call: {
      std::string s = f->name + "[";
      for (std::size_t k = 0; k < f->args.size(); ++k) s += (k ? ", " : "") + toString(f->args[k]);
      return s + "]";
    }
    case FOp::True: return "true";
  }
  return "";
}

void freeVars(const ExprP& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->op == EOp::Var) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
    return;
  }
  freeVars(e->a, out);
  freeVars(e->b, out);
}

void freeVars(const FormP& f, std::vector<std::string>& out) {
  if (!f) return;
  switch (f->op) {
    case FOp::All:
    case FOp::Exists: {
      freeVars(f->x, out);
      std::vector<std::string> inner;
      freeVars(f->f, inner);
      for (auto& v : inner)
        if (v != f->var && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      return;
    }
    default:
      break;
  }
  freeVars(f->x, out);
  freeVars(f->y, out);
  freeVars(f->f, out);
  freeVars(f->g, out);
  for (const auto& a : f->args) freeVars(a, out);
}

}  // namespace alloyfa::alloy
