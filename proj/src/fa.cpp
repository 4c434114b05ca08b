#include "alloyfa/fa.hpp"

#include <algorithm>
#include <functional>

namespace alloyfa::fa {

namespace {

Expr mk(Op op, Expr a = nullptr, Expr b = nullptr, int arity = 2) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  n->arity = arity;
  return n;
}

int eff(const Expr& e) { return std::max(2, e->arity); }

void need(const Expr& e) {
  if (!e) throw std::invalid_argument("null FA operand");
}

}  // namespace

Expr rel(std::string name, int arity) {
  if (arity < 1) throw ArityError("relation " + name + " needs arity >= 1");
  if (arity == 1) return coref(std::move(name));
  auto n = std::make_shared<Node>();
  n->op = Op::Rel;
  n->name = std::move(name);
  n->arity = arity;
  return n;
}

Expr coref(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Coref;
  n->name = std::move(name);
  n->arity = 1;
  return n;
}

Expr meta(std::string name, int arity) {
  auto n = std::make_shared<Node>();
  n->op = Op::Meta;
  n->name = std::move(name);
  n->arity = arity;
  return n;
}

Expr top() { return mk(Op::Top); }
Expr bot() { return mk(Op::Bot); }
Expr id() { return mk(Op::Id); }
Expr pi1() { return mk(Op::Pi1); }
Expr pi2() { return mk(Op::Pi2); }

Expr projNode(int n, int i) {
  if (n < 1 || i < 1 || i > n)
    throw ArityError("X^" + std::to_string(n) + "_" + std::to_string(i) + " is out of range");
  auto e = std::make_shared<Node>();
  e->op = Op::Proj;
  e->n = n;
  e->i = i;
  e->arity = n + 1;
  return e;
}

Expr uni(Expr a, Expr b) {
  need(a), need(b);
  int ar = a->arity;
  return mk(Op::Union, std::move(a), std::move(b), ar);
}
Expr inter(Expr a, Expr b) {
  need(a), need(b);
  int ar = a->arity;
  return mk(Op::Inter, std::move(a), std::move(b), ar);
}
Expr compl_(Expr a) {
  need(a);
  int ar = a->arity;
  return mk(Op::Compl, std::move(a), nullptr, ar);
}
Expr conv(Expr a) {
  need(a);
  return mk(Op::Conv, std::move(a));
}
Expr comp(Expr a, Expr b) {
  need(a), need(b);
  int ar = eff(a) + eff(b) - 2;
  return mk(Op::Comp, std::move(a), std::move(b), ar);
}
Expr fork(Expr a, Expr b) {
  need(a), need(b);
  return mk(Op::Fork, std::move(a), std::move(b));
}
Expr prod(Expr a, Expr b) {
  need(a), need(b);
  return mk(Op::Prod, std::move(a), std::move(b));
}
Expr ldiv(Expr a, Expr b) {
  need(a), need(b);
  return mk(Op::LDiv, std::move(a), std::move(b));
}
Expr rdiv(Expr a, Expr b) {
  need(a), need(b);
  return mk(Op::RDiv, std::move(a), std::move(b));
}
Expr star(Expr a) {
  need(a);
  return mk(Op::Star, std::move(a));
}

Expr ncompNode(int n, Expr a, Expr b) {
  need(a), need(b);
  if (n < 2) throw ArityError("n-ary composition needs n >= 2");
  auto e = std::make_shared<Node>();
  e->op = Op::NComp;
  e->n = n;
  e->arity = n + eff(b) - 2;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

Expr rotateNode(Expr a) {
  need(a);
  if (a->arity < 2) throw ArityError("rotate needs arity >= 2");
  int ar = a->arity;
  return mk(Op::Rotate, std::move(a), nullptr, ar);
}

Expr compAll(const std::vector<Expr>& xs) {
  if (xs.empty()) throw std::invalid_argument("compAll of nothing");
  Expr r = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) r = comp(r, xs[k]);
  return r;
}

Expr uniAll(const std::vector<Expr>& xs) {
  if (xs.empty()) throw std::invalid_argument("uniAll of nothing");
  Expr r = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) r = uni(r, xs[k]);
  return r;
}

Expr interAll(const std::vector<Expr>& xs) {
  if (xs.empty()) throw std::invalid_argument("interAll of nothing");
  Expr r = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) r = inter(r, xs[k]);
  return r;
}

Expr forkAll(const std::vector<Expr>& xs) {
  if (xs.empty()) throw std::invalid_argument("forkAll of nothing");
  Expr r = xs.back();
  for (std::size_t k = xs.size() - 1; k-- > 0;) r = fork(xs[k], r);
  return r;
}

Expr prodAll(const std::vector<Expr>& xs) {
  if (xs.empty()) throw std::invalid_argument("prodAll of nothing");
  Expr r = xs.back();
  for (std::size_t k = xs.size() - 1; k-- > 0;) r = prod(xs[k], r);
  return r;
}

Expr projX(int n, int i) {
  if (n < 1 || i < 1 || i > n)
    throw ArityError("X^" + std::to_string(n) + "_" + std::to_string(i) + " is out of range");
  if (n == 1) return id();
  if (i == 1) return pi1();
  Expr inner = projX(n - 1, i - 1);
  if (inner->op == Op::Id) return pi2();
  return comp(inner, pi2());
}

Expr rotate(const Expr& r) {
  need(r);
  int n = r->arity;
  if (n < 2) throw ArityError("rotate needs arity >= 2");
  if (n == 2) return conv(r);
  std::vector<Expr> parts{r};
  for (int k = 1; k <= n - 2; ++k) parts.push_back(projX(n - 1, k));
  auto e = comp(projX(n - 1, n - 1), conv(forkAll(parts)));
  auto m = std::make_shared<Node>(*e);
  m->arity = n;
  return m;
}

Expr rotateN(const Expr& r, int k) {
  need(r);
  int n = r->arity;
  if (n < 2) throw ArityError("rotate needs arity >= 2");
  k %= n;
  if (k < 0) k += n;
  if (n == 2) return k == 1 ? conv(r) : r;
  Expr e = r;
  for (int j = 0; j < k; ++j) e = rotateNode(e);
  return e;
}

Expr ncomp(const Expr& r, const Expr& s) {
  need(r), need(s);
  if (s->op == Op::Id) return r;
  int n = eff(r);
  if (n == 2) return comp(r, s);
  return ncompNode(n, r, s);
}

Expr cut(int n) {
  if (n < 2) throw ArityError("cut needs n >= 2");
  if (n == 2) return fork(id(), top());
  return prod(id(), cut(n - 1));
}

Expr unfold(const Expr& e) {
  if (!e) return e;
  switch (e->op) {
    case Op::Proj:
      return projX(e->n, e->i);
    case Op::Rotate: {
      Expr inner = unfold(e->lhs);
      auto copy = std::make_shared<Node>(*inner);
      copy->arity = e->lhs->arity;
      return unfold(rotate(copy));
    }
    case Op::NComp: {
      Expr a = unfold(e->lhs), b = unfold(e->rhs);
      // R •^n S = R •^(n-1) (id × S), bottoming out at R·S.
      for (int n = e->n; n > 2; --n) b = prod(id(), b);
      return comp(a, b);
    }
    default:
      break;
  }
  if (isLeaf(e->op)) return e;
  Expr a = unfold(e->lhs);
  Expr b = e->rhs ? unfold(e->rhs) : nullptr;
  if (a == e->lhs && b == e->rhs) return e;
  auto copy = std::make_shared<Node>(*e);
  copy->lhs = a;
  copy->rhs = b;
  return copy;
}

int arityOf(const Expr& e) { return e->arity; }

bool isLeaf(Op op) {
  switch (op) {
    case Op::Rel:
    case Op::Coref:
    case Op::Meta:
    case Op::Top:
    case Op::Bot:
    case Op::Id:
    case Op::Pi1:
    case Op::Pi2:
    case Op::Proj:
      return true;
    default:
      return false;
  }
}

bool isCoreflexive(const Expr& e) {
  switch (e->op) {
    case Op::Coref:
    case Op::Id:
    case Op::Bot:
      return true;
    case Op::Inter:
      return isCoreflexive(e->lhs) || isCoreflexive(e->rhs);
    case Op::Union:
    case Op::Comp:
    case Op::Prod:
      return isCoreflexive(e->lhs) && isCoreflexive(e->rhs);
    case Op::Conv:
      return isCoreflexive(e->lhs);
    default:
      return false;
  }
}

int compare(const Expr& a, const Expr& b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (a->n != b->n) return a->n < b->n ? -1 : 1;
  if (a->i != b->i) return a->i < b->i ? -1 : 1;
  if (int c = compare(a->lhs, b->lhs)) return c;
  return compare(a->rhs, b->rhs);
}

bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

namespace {

void spine(const Expr& e, Op op, std::vector<Expr>& out) {
  if (e->op == op) {
    spine(e->lhs, op, out);
    spine(e->rhs, op, out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

Expr canonicalize(const Expr& e) {
  if (!e || isLeaf(e->op)) return e;
  if (e->op == Op::Union || e->op == Op::Inter) {
    std::vector<Expr> parts;
    spine(e, e->op, parts);
    for (auto& p : parts) p = canonicalize(p);
    std::stable_sort(parts.begin(), parts.end(),
                     [](const Expr& x, const Expr& y) { return compare(x, y) < 0; });
    return e->op == Op::Union ? uniAll(parts) : interAll(parts);
  }
  auto copy = std::make_shared<Node>(*e);
  copy->lhs = canonicalize(e->lhs);
  copy->rhs = canonicalize(e->rhs);
  return copy;
}

int countOps(const Expr& e) {
  if (!e || isLeaf(e->op)) return 0;
  return 1 + countOps(e->lhs) + countOps(e->rhs);
}

std::size_t size(const Expr& e) {
  if (!e) return 0;
  return 1 + size(e->lhs) + size(e->rhs);
}

Expr globalConverse(const Expr& e) {
  if (!e) return e;
  if (e->op == Op::Rel && e->arity == 2) return conv(e);
  if (isLeaf(e->op)) return e;
  auto copy = std::make_shared<Node>(*e);
  copy->lhs = globalConverse(e->lhs);
  copy->rhs = globalConverse(e->rhs);
  return copy;
}

namespace {

std::string digits(int v, const char* const table[10]) {
  std::string s;
  for (char c : std::to_string(v)) s += table[c - '0'];
  return s;
}

const char* const kSup[10] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* const kSub[10] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

int prec(const Expr& e) {
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

void print(const Expr& e, std::string& out);

void wrap(const Expr& e, bool paren, std::string& out) {
  if (paren) out += '(';
  print(e, out);
  if (paren) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e->op) {
    case Op::Rel: out += e->name; return;
    case Op::Coref: out += "Φ_" + e->name; return;
    case Op::Meta: out += "?" + e->name; return;
    case Op::Top: out += "⊤"; return;
    case Op::Bot: out += "⊥"; return;
    case Op::Id: out += "id"; return;
    case Op::Pi1: out += "π₁"; return;
    case Op::Pi2: out += "π₂"; return;
    case Op::Proj: out += "X" + digits(e->n, kSup) + digits(e->i, kSub); return;
    case Op::Compl:
      out += "‾(";
      print(e->lhs, out);
      out += ")";
      return;
    case Op::Conv:
      wrap(e->lhs, prec(e->lhs) < 6, out);
      out += "°";
      return;
    case Op::Star:
      wrap(e->lhs, prec(e->lhs) < 6, out);
      out += "*";
      return;
    case Op::Rotate:
      out += "rot(";
      print(e->lhs, out);
      out += ")";
      return;
    default:
      break;
  }
  const char* sym = "";
  std::string nsym;
  switch (e->op) {
    case Op::Union: sym = " ∪ "; break;
    case Op::Inter: sym = " ∩ "; break;
    case Op::LDiv: sym = " \\ "; break;
    case Op::RDiv: sym = " / "; break;
    case Op::Comp: sym = "·"; break;
    case Op::Fork: sym = " ∇ "; break;
    case Op::Prod: sym = " × "; break;
    case Op::NComp:
      nsym = " •" + digits(e->n, kSup) + " ";
      sym = nsym.c_str();
      break;
    default: break;
  }
  int p = prec(e);
  wrap(e->lhs, prec(e->lhs) < p || (prec(e->lhs) == p && e->lhs->op != e->op), out);
  out += sym;
  wrap(e->rhs, prec(e->rhs) <= p, out);
}

}  // namespace

std::string toString(const Expr& e) {
  if (!e) return "<null>";
  std::string out;
  print(e, out);
  return out;
}

Fact equation(Expr lhs, Expr rhs, std::string label) {
  need(lhs), need(rhs);
  return Fact{Fact::Kind::Eq, std::move(lhs), std::move(rhs), std::move(label)};
}

Fact inclusion(Expr lhs, Expr rhs, std::string label) {
  need(lhs), need(rhs);
  return Fact{Fact::Kind::Sub, std::move(lhs), std::move(rhs), std::move(label)};
}

bool equal(const Fact& a, const Fact& b) {
  return a.kind == b.kind && equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

Fact canonicalize(const Fact& f) {
  return Fact{f.kind, canonicalize(f.lhs), canonicalize(f.rhs), f.label};
}

int countOps(const Fact& f) { return countOps(f.lhs) + countOps(f.rhs); }

std::string toString(const Fact& f) {
  return toString(f.lhs) + (f.kind == Fact::Kind::Eq ? " = " : " ⊆ ") + toString(f.rhs);
}

}  // namespace alloyfa::fa
