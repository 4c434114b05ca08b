#include "alloyfa/rl.hpp"

#include <stdexcept>

namespace alloyfa::rl {

Var bv(int level) { return Var{Var::Kind::Bound, level}; }
Var vx() { return Var{Var::Kind::X, 0}; }
Var vy() { return Var{Var::Kind::Y, 0}; }

Tuple levels(int from, int to) {
  Tuple t;
  for (int k = from; k <= to; ++k) t.push_back(bv(k));
  return t;
}

namespace {

std::shared_ptr<Node> mk(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}

}  // namespace

Formula truth() { return mk(Op::True); }
Formula falsity() { return mk(Op::False); }

Formula not_(Formula a) {
  auto n = mk(Op::Not);
  n->a = std::move(a);
  return n;
}

Formula and_(Formula a, Formula b) {
  auto n = mk(Op::And);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula or_(Formula a, Formula b) {
  auto n = mk(Op::Or);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula implies(Formula a, Formula b) {
  auto n = mk(Op::Implies);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula forall(int count, Formula range, Formula body) {
  if (count < 1) throw std::invalid_argument("quantifier without variables");
  auto n = mk(Op::Forall);
  n->count = count;
  n->range = std::move(range);
  n->a = std::move(body);
  return n;
}

Formula exists(int count, Formula range, Formula body) {
  if (count < 1) throw std::invalid_argument("quantifier without variables");
  auto n = mk(Op::Exists);
  n->count = count;
  n->range = std::move(range);
  n->a = std::move(body);
  return n;
}

Formula forallXY(Formula body) {
  auto n = mk(Op::Forall);
  n->special = true;
  n->a = std::move(body);
  return n;
}

Formula app(Tuple lhs, fa::Expr rel, Tuple rhs) {
  if (lhs.empty() || rhs.empty()) throw std::invalid_argument("application with an empty side");
  auto n = mk(Op::App);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->rel = std::move(rel);
  return n;
}

Formula withChildren(const Formula& f, Formula a, Formula b, Formula range) {
  auto n = std::make_shared<Node>(*f);
  n->a = std::move(a);
  n->b = std::move(b);
  n->range = std::move(range);
  return n;
}

Formula withRel(const Formula& f, fa::Expr rel) {
  auto n = std::make_shared<Node>(*f);
  n->rel = std::move(rel);
  return n;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->count != b->count || a->special != b->special) return false;
  if (a->op == Op::App)
    return a->lhs == b->lhs && a->rhs == b->rhs && fa::equal(a->rel, b->rel);
  return equal(a->a, b->a) && equal(a->b, b->b) && equal(a->range, b->range);
}

std::size_t size(const Formula& f) {
  if (!f) return 0;
  if (f->op == Op::App) return 1 + fa::size(f->rel);
  return 1 + size(f->a) + size(f->b) + size(f->range);
}

std::string toString(const Var& v) {
  switch (v.kind) {
    case Var::Kind::X: return "𝐱";
    case Var::Kind::Y: return "𝐲";
    default: return std::to_string(v.level);
  }
}

std::string toString(const Tuple& t) {
  if (t.size() == 1) return toString(t[0]);
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + toString(t[k]);
  return s + ")";
}

namespace {

void print(const Formula& f, std::string& out, int depth, bool paren) {
  switch (f->op) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::App: {
      std::string r = fa::toString(f->rel);
      bool simple = fa::isLeaf(f->rel->op);
      out += toString(f->lhs) + " " + (simple ? r : "(" + r + ")") + " " + toString(f->rhs);
      return;
    }
    case Op::Not:
      out += "¬";
      print(f->a, out, depth, true);
      return;
    case Op::Forall:
    case Op::Exists: {
      out += f->op == Op::Forall ? "⟨∀ " : "⟨∃ ";
      int inner = depth;
      if (f->special) {
        out += "𝐱,𝐲";
      } else {
        for (int k = 1; k <= f->count; ++k) out += (k > 1 ? "," : "") + std::to_string(depth + k);
        inner = depth + f->count;
      }
      out += " :";
      if (f->range) {
        out += " ";
        print(f->range, out, inner, false);
        out += " ";
      }
      out += ": ";
      print(f->a, out, inner, false);
      out += "⟩";
      return;
    }
    default: break;
  }
  const char* sym = f->op == Op::And ? " ∧ " : f->op == Op::Or ? " ∨ " : " ⇒ ";
  if (paren) out += "(";
  print(f->a, out, depth, f->a->op != f->op || f->op == Op::Implies);
  out += sym;
  print(f->b, out, depth, true);
  if (paren) out += ")";
}

}  // namespace

std::string toString(const Formula& f, int depth) {
  if (!f) return "<null>";
  std::string out;
  print(f, out, depth, false);
  return out;
}

void spine(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f->op == op) {
    spine(f->a, op, out);
    spine(f->b, op, out);
  } else {
    out.push_back(f);
  }
}

Formula rebuild(Op op, const std::vector<Formula>& parts) {
  if (parts.empty()) return op == Op::And ? truth() : falsity();
  Formula r = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k)
    r = op == Op::And ? and_(r, parts[k]) : or_(r, parts[k]);
  return r;
}

bool mentions(const Tuple& t, int level) {
  for (const auto& v : t)
    if (v.kind == Var::Kind::Bound && v.level == level) return true;
  return false;
}

bool mentions(const Formula& f, int level) {
  if (!f) return false;
  if (f->op == Op::App) return mentions(f->lhs, level) || mentions(f->rhs, level);
  return mentions(f->a, level) || mentions(f->b, level) || mentions(f->range, level);
}

bool mentionsSpecial(const Formula& f) {
  if (!f) return false;
  if (f->op == Op::App) {
    for (const auto* t : {&f->lhs, &f->rhs})
      for (const auto& v : *t)
        if (v.kind != Var::Kind::Bound) return true;
    return false;
  }
  return mentionsSpecial(f->a) || mentionsSpecial(f->b) || mentionsSpecial(f->range);
}

Formula mapVars(const Formula& f, const std::function<Var(const Var&)>& fn) {
  if (!f) return f;
  if (f->op == Op::App) {
    auto n = std::make_shared<Node>(*f);
    for (auto& v : n->lhs) v = fn(v);
    for (auto& v : n->rhs) v = fn(v);
    return n;
  }
  if (f->op == Op::True || f->op == Op::False) return f;
  return withChildren(f, mapVars(f->a, fn), mapVars(f->b, fn), mapVars(f->range, fn));
}

Formula removeLevel(const Formula& f, int level, Var repl) {
  if (repl.kind == Var::Kind::Bound && repl.level > level) repl.level -= 1;
  return mapVars(f, [&](const Var& v) {
    if (v.kind != Var::Kind::Bound) return v;
    if (v.level == level) return repl;
    if (v.level > level) return bv(v.level - 1);
    return v;
  });
}

Formula shiftDown(const Formula& f, int above, int by) {
  return mapVars(f, [&](const Var& v) {
    if (v.kind != Var::Kind::Bound || v.level <= above) return v;
    if (v.level <= above + by) throw std::logic_error("shiftDown over a mentioned level");
    return bv(v.level - by);
  });
}

bool isQuantifierFree(const Formula& f) {
  if (!f) return true;
  if (f->op == Op::Forall || f->op == Op::Exists) return false;
  return isQuantifierFree(f->a) && isQuantifierFree(f->b);
}

bool isNormalized(const Formula& f) {
  if (!f) return true;
  switch (f->op) {
    case Op::Implies: return false;
    case Op::Forall:
      if (!f->special || f->range) return false;
      break;
    case Op::Exists:
      if (f->range) return false;
      break;
    default: break;
  }
  return isNormalized(f->a) && isNormalized(f->b);
}

int maxDepth(const Formula& f, int depth) {
  if (!f) return 0;
  switch (f->op) {
    case Op::App: return depth;
    case Op::Forall:
    case Op::Exists: {
      int inner = f->special ? depth : depth + f->count;
      return std::max({inner, maxDepth(f->a, inner), maxDepth(f->range, inner)});
    }
    default: return std::max(maxDepth(f->a, depth), maxDepth(f->b, depth));
  }
}

}  // namespace alloyfa::rl
