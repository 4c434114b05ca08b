#include "alloyfa/heuristics.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace alloyfa::heuristics {

using rl::Op;
using strategy::Context;
using FOp = fa::Op;

namespace {

using Out = std::optional<Term>;
using F = rl::Formula;

const rl::Node* node(const Term& t) {
  auto f = asFormula(t);
  return f ? f->get() : nullptr;
}

Rule formulaRule(std::string name, std::function<std::optional<F>(const F&, const Context&)> fn) {
  return {std::move(name), [fn = std::move(fn)](const Term& t, const Context& c) -> Out {
            auto f = asFormula(t);
            if (!f) return std::nullopt;
            auto r = fn(*f, c);
            if (!r) return std::nullopt;
            return Term(*r);
          }};
}

Rule exprRule(std::string name, std::function<fa::Expr(const fa::Expr&)> fn) {
  return {std::move(name), [fn = std::move(fn)](const Term& t, const Context&) -> Out {
            auto e = asExpr(t);
            if (!e) return std::nullopt;
            auto r = fn(*e);
            if (!r) return std::nullopt;
            return Term(r);
          }};
}

Rule factRule(std::string name, std::function<std::optional<fa::Fact>(const fa::Fact&)> fn) {
  return {std::move(name), [fn = std::move(fn)](const Term& t, const Context&) -> Out {
            auto f = asFact(t);
            if (!f) return std::nullopt;
            auto r = fn(*f);
            if (!r) return std::nullopt;
            return Term(*r);
          }};
}

std::vector<F> parts(const F& f, Op op) {
  std::vector<F> out;
  rl::spine(f, op, out);
  return out;
}

bool isQuant(const F& f) { return (f->op == Op::Forall || f->op == Op::Exists) && !f->special; }

// Rebuilds a quantifier; zero variables leave the range as a guard.
F quant(Op op, int count, F range, F body) {
  if (count == 0) {
    if (!range) return body;
    return op == Op::Forall ? rl::implies(range, body) : rl::and_(range, body);
  }
  return op == Op::Forall ? rl::forall(count, range, body) : rl::exists(count, range, body);
}

F drop(const F& f, int level) { return f ? rl::removeLevel(f, level, rl::bv(level)) : f; }

int occurrences(const rl::Tuple& t, int level) {
  int n = 0;
  for (const auto& v : t)
    if (v.kind == rl::Var::Kind::Bound && v.level == level) ++n;
  return n;
}

int occurrences(const F& f, int level) {
  if (!f) return 0;
  if (f->op == Op::App) return occurrences(f->lhs, level) + occurrences(f->rhs, level);
  return occurrences(f->a, level) + occurrences(f->b, level) + occurrences(f->range, level);
}

bool boundOnly(const rl::Tuple& t) {
  for (const auto& v : t)
    if (v.kind != rl::Var::Kind::Bound) return false;
  return true;
}

// An application of an atom to a tuple of bound variables.
bool simple(const F& f) {
  return f->op == Op::App && f->lhs.size() == 1 && boundOnly(f->lhs) && boundOnly(f->rhs);
}

// u T u for a single bound u.
bool diagonal(const F& f, int level) {
  return simple(f) && f->rhs.size() == 1 && f->lhs[0] == rl::bv(level) && f->rhs[0] == rl::bv(level);
}

fa::Expr diag(const fa::Expr& t) { return fa::isCoreflexive(t) ? t : fa::inter(fa::id(), t); }

fa::Expr withArity(const fa::Expr& e, int n) {
  if (e->arity == n) return e;
  auto c = std::make_shared<fa::Node>(*e);
  c->arity = n;
  return c;
}

struct Lit {
  rl::Tuple lhs;
  fa::Expr rel;
  rl::Tuple rhs;
};

// Index of `level` in lhs ++ rhs when it occurs exactly once, else -1.
int position(const F& f, int level) {
  if (occurrences(f->lhs, level) + occurrences(f->rhs, level) != 1) return -1;
  if (f->lhs[0] == rl::bv(level)) return 0;
  for (std::size_t k = 0; k < f->rhs.size(); ++k)
    if (f->rhs[k] == rl::bv(level)) return static_cast<int>(k) + 1;
  return -1;
}

// k rotations: the last component moves to the front each time.
Lit rotated(const F& f, int k) {
  int n = static_cast<int>(f->rhs.size()) + 1;
  k = ((k % n) + n) % n;
  if (k == 0) return {f->lhs, withArity(f->rel, n), f->rhs};
  rl::Tuple t = f->lhs;
  t.insert(t.end(), f->rhs.begin(), f->rhs.end());
  rl::Tuple r(t.size());
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(((i - k) % n + n) % n)];
  return {{r[0]}, fa::rotateN(withArity(f->rel, n), k), rl::Tuple(r.begin() + 1, r.end())};
}

Lit toLast(const F& f, int level) {
  int n = static_cast<int>(f->rhs.size()) + 1;
  return rotated(f, n - 1 - position(f, level));
}

Lit toFirst(const F& f, int level) {
  int n = static_cast<int>(f->rhs.size()) + 1;
  return rotated(f, n - position(f, level));
}

rl::Tuple concat(rl::Tuple a, const rl::Tuple& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<F> without(const std::vector<F>& xs, std::size_t i, std::size_t j = static_cast<std::size_t>(-1)) {
  std::vector<F> out;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (k != i && k != j) out.push_back(xs[k]);
  return out;
}

std::vector<F> mentioning(const std::vector<F>& xs, int level, std::vector<std::size_t>& idx) {
  std::vector<F> out;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (rl::mentions(xs[k], level)) {
      out.push_back(xs[k]);
      idx.push_back(k);
    }
  return out;
}

// ---------------------------------------------------------------- FOL

Rule andTrue() {
  return formulaRule("∧ true", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::And) return std::nullopt;
    std::vector<F> keep;
    for (auto& p : parts(f, Op::And))
      if (p->op != Op::True) keep.push_back(p);
    return rl::rebuild(Op::And, keep);
  });
}

Rule andFalse() {
  return formulaRule("∧ false", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::And) return std::nullopt;
    for (auto& p : parts(f, Op::And))
      if (p->op == Op::False) return rl::falsity();
    return std::nullopt;
  });
}

Rule orFalse() {
  return formulaRule("∨ false", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Or) return std::nullopt;
    std::vector<F> keep;
    for (auto& p : parts(f, Op::Or))
      if (p->op != Op::False) keep.push_back(p);
    return rl::rebuild(Op::Or, keep);
  });
}

Rule orTrue() {
  return formulaRule("∨ true", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Or) return std::nullopt;
    for (auto& p : parts(f, Op::Or))
      if (p->op == Op::True) return rl::truth();
    return std::nullopt;
  });
}

Rule idempotent(Op op) {
  return formulaRule(op == Op::And ? "∧ idempotent" : "∨ idempotent",
                     [op](const F& f, const Context&) -> std::optional<F> {
                       if (f->op != op) return std::nullopt;
                       auto ps = parts(f, op);
                       std::vector<F> keep;
                       for (auto& p : ps) {
                         bool dup = false;
                         for (auto& q : keep) dup = dup || rl::equal(p, q);
                         if (!dup) keep.push_back(p);
                       }
                       if (keep.size() == ps.size()) return std::nullopt;
                       return rl::rebuild(op, keep);
                     });
}

// ¬ψ ∨ φ ~> ψ ⇒ φ, taking the first negated disjunct.
Rule orToImplies() {
  return formulaRule("¬ψ ∨ φ", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Or) return std::nullopt;
    auto ps = parts(f, Op::Or);
    for (std::size_t k = 0; k < ps.size(); ++k)
      if (ps[k]->op == Op::Not) return rl::implies(ps[k]->a, rl::rebuild(Op::Or, without(ps, k)));
    return std::nullopt;
  });
}

Rule impliesConst() {
  return formulaRule("⇒ constant", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Implies) return std::nullopt;
    if (f->a->op == Op::False || f->b->op == Op::True) return rl::truth();
    if (f->a->op == Op::True) return f->b;
    if (f->b->op == Op::False) return rl::not_(f->a);
    return std::nullopt;
  });
}

Rule curry() {
  return formulaRule("⇒ curry", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Implies || f->b->op != Op::Implies) return std::nullopt;
    return rl::implies(rl::and_(f->a, f->b->a), f->b->b);
  });
}

Rule deMorgan(Op op) {
  return formulaRule(op == Op::And ? "¬∧" : "¬∨", [op](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Not || f->a->op != op) return std::nullopt;
    auto a = rl::not_(f->a->a), b = rl::not_(f->a->b);
    return op == Op::And ? rl::or_(a, b) : rl::and_(a, b);
  });
}

Rule notConst() {
  return formulaRule("¬ constant", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Not) return std::nullopt;
    if (f->a->op == Op::Not) return f->a->a;
    if (f->a->op == Op::True) return rl::falsity();
    if (f->a->op == Op::False) return rl::truth();
    return std::nullopt;
  });
}

Rule notForall() {
  return formulaRule("¬∀", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Not || f->a->op != Op::Forall || f->a->special) return std::nullopt;
    auto q = f->a;
    auto body = rl::not_(q->a);
    return rl::exists(q->count, nullptr, q->range ? rl::and_(q->range, body) : body);
  });
}

Rule notExists() {
  return formulaRule("¬∃", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Not || f->a->op != Op::Exists || f->a->special) return std::nullopt;
    auto q = f->a;
    return rl::forall(q->count, q->range, rl::not_(q->a));
  });
}

Rule forallRange() {
  return formulaRule("∀ range", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Forall || f->special) return std::nullopt;
    if (f->range && f->range->op == Op::True) return rl::forall(f->count, nullptr, f->a);
    if (f->range && f->range->op == Op::False) return rl::truth();
    if (f->a->op != Op::Implies) return std::nullopt;
    auto r = f->range ? rl::and_(f->range, f->a->a) : f->a->a;
    return rl::forall(f->count, r, f->a->b);
  });
}

Rule existsRange() {
  return formulaRule("∃ range", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::Exists || f->special || !f->range) return std::nullopt;
    if (f->range->op == Op::True) return rl::exists(f->count, nullptr, f->a);
    return rl::exists(f->count, nullptr, rl::and_(f->range, f->a));
  });
}

Rule fuse(Op op) {
  return formulaRule(op == Op::Forall ? "∀ fuse" : "∃ fuse", [op](const F& f, const Context&) -> std::optional<F> {
    if (f->op != op || f->special || f->a->op != op || f->a->special) return std::nullopt;
    if (op == Op::Exists && (f->range || f->a->range)) return std::nullopt;
    auto in = f->a;
    F r = f->range;
    if (in->range) r = r ? rl::and_(r, in->range) : in->range;
    return quant(op, f->count + in->count, r, in->a);
  });
}

Rule unusedVar() {
  return formulaRule("unused variable", [](const F& f, const Context& c) -> std::optional<F> {
    if (!isQuant(f)) return std::nullopt;
    for (int l = c.depth + f->count; l > c.depth; --l)
      if (!rl::mentions(f->range, l) && !rl::mentions(f->a, l))
        return quant(f->op, f->count - 1, drop(f->range, l), drop(f->a, l));
    return std::nullopt;
  });
}

// ∀ over ∧ in the body, ∃ over ∨.
Rule distribute(Op op) {
  return formulaRule(op == Op::Forall ? "∀ split ∧" : "∃ split ∨", [op](const F& f, const Context&) -> std::optional<F> {
    Op conn = op == Op::Forall ? Op::And : Op::Or;
    if (f->op != op || f->special || f->a->op != conn) return std::nullopt;
    if (op == Op::Exists && f->range) return std::nullopt;
    auto a = quant(op, f->count, f->range, f->a->a), b = quant(op, f->count, f->range, f->a->b);
    return conn == Op::And ? rl::and_(a, b) : rl::or_(a, b);
  });
}

// Conjuncts free of the block move out of ∃ bodies and ∀ ranges.
Rule miniscope() {
  return formulaRule("miniscope", [](const F& f, const Context& c) -> std::optional<F> {
    if (!isQuant(f)) return std::nullopt;
    F src = f->op == Op::Exists ? f->a : f->range;
    if (!src || (f->op == Op::Exists && f->range)) return std::nullopt;
    std::vector<F> dep, free;
    for (auto& p : parts(src, Op::And)) {
      bool m = false;
      for (int l = c.depth + 1; l <= c.depth + f->count; ++l) m = m || rl::mentions(p, l);
      (m ? dep : free).push_back(p);
    }
    if (free.empty() || dep.empty()) return std::nullopt;
    auto out = rl::shiftDown(rl::rebuild(Op::And, free), c.depth, f->count);
    if (f->op == Op::Exists) return rl::and_(rl::exists(f->count, nullptr, rl::rebuild(Op::And, dep)), out);
    return rl::implies(out, rl::forall(f->count, rl::rebuild(Op::And, dep), f->a));
  });
}

// ---------------------------------------------------------------- definitions

// ⟨∃ … w … :: w id v ∧ φ⟩ ~> φ[w := v], and the ∀ form with w id v in the range.
Rule onePoint() {
  return formulaRule("one-point", [](const F& f, const Context& c) -> std::optional<F> {
    if (!isQuant(f)) return std::nullopt;
    F src = f->op == Op::Exists ? f->a : f->range;
    if (!src || (f->op == Op::Exists && f->range)) return std::nullopt;
    auto ps = parts(src, Op::And);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const auto& p = ps[k];
      if (p->op != Op::App || p->rel->op != FOp::Id || p->lhs.size() != 1 || p->rhs.size() != 1) continue;
      if (!boundOnly(p->lhs) || !boundOnly(p->rhs)) continue;
      int a = p->lhs[0].level, b = p->rhs[0].level;
      if (a == b) continue;
      int w = 0;
      rl::Var v;
      if (a > c.depth) {
        w = a, v = p->rhs[0];
      } else if (b > c.depth) {
        w = b, v = p->lhs[0];
      } else {
        continue;
      }
      auto rest = rl::rebuild(Op::And, without(ps, k));
      if (f->op == Op::Exists) return quant(Op::Exists, f->count - 1, nullptr, rl::removeLevel(rest, w, v));
      auto r = ps.size() == 1 ? F() : rl::removeLevel(rest, w, v);
      return quant(Op::Forall, f->count - 1, r, rl::removeLevel(f->a, w, v));
    }
    return std::nullopt;
  });
}

// v T v ∧ C(v) ~> C with the coreflexive folded in at v's position.
Rule absorb() {
  return formulaRule("absorb coreflexive", [](const F& f, const Context&) -> std::optional<F> {
    if (f->op != Op::And) return std::nullopt;
    auto ps = parts(f, Op::And);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!simple(ps[i]) || ps[i]->rhs.size() != 1 || ps[i]->lhs[0] != ps[i]->rhs[0]) continue;
      int v = ps[i]->lhs[0].level;
      auto d = diag(ps[i]->rel);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == i || !simple(ps[j]) || !rl::mentions(ps[j], v)) continue;
        const auto& q = ps[j];
        F merged;
        if (q->lhs[0] == rl::bv(v)) {
          merged = rl::app(q->lhs, fa::comp(d, q->rel), q->rhs);
        } else if (q->rhs.back() == rl::bv(v)) {
          int n = static_cast<int>(q->rhs.size()) + 1;
          merged = rl::app(q->lhs, fa::ncomp(withArity(q->rel, n), d), q->rhs);
        } else {
          continue;
        }
        auto out = ps;
        out[j] = merged;
        out.erase(out.begin() + static_cast<long>(i));
        return rl::rebuild(Op::And, out);
      }
    }
    return std::nullopt;
  });
}

// ⟨∃ w :: u R (p⃗,w) ∧ w S q⃗⟩ ~> u (R •ⁿ S) (p⃗,q⃗), after rotating each
// application so that w sits at the joint.
Rule compose() {
  return formulaRule("compose", [](const F& f, const Context& c) -> std::optional<F> {
    if (f->op != Op::Exists || f->special || f->range) return std::nullopt;
    auto ps = parts(f->a, Op::And);
    for (int w = c.depth + f->count; w > c.depth; --w) {
      std::vector<std::size_t> idx;
      auto ms = mentioning(ps, w, idx);
      if (ms.size() != 2 || !simple(ms[0]) || !simple(ms[1])) continue;
      if (position(ms[0], w) < 0 || position(ms[1], w) < 0) continue;
      auto a = toLast(ms[0], w), b = toFirst(ms[1], w);
      rl::Tuple p(a.rhs.begin(), a.rhs.end() - 1);
      auto rel = p.empty() ? fa::comp(a.rel, b.rel) : fa::ncomp(a.rel, b.rel);
      auto rest = without(ps, idx[0], idx[1]);
      rest.insert(rest.begin() + static_cast<long>(idx[0]), rl::app(a.lhs, rel, concat(p, b.rhs)));
      return quant(Op::Exists, f->count - 1, nullptr, drop(rl::rebuild(Op::And, rest), w));
    }
    return std::nullopt;
  });
}

// ⟨∃ w :: u R (p⃗,w)⟩ ~> u (R·cut) p⃗, or u (R·⊤) u when p⃗ is empty.
Rule project() {
  return formulaRule("project", [](const F& f, const Context& c) -> std::optional<F> {
    if (f->op != Op::Exists || f->special || f->range) return std::nullopt;
    auto ps = parts(f->a, Op::And);
    for (int w = c.depth + f->count; w > c.depth; --w) {
      std::vector<std::size_t> idx;
      auto ms = mentioning(ps, w, idx);
      if (ms.size() != 1 || !simple(ms[0]) || position(ms[0], w) < 0) continue;
      auto a = toLast(ms[0], w);
      rl::Tuple p(a.rhs.begin(), a.rhs.end() - 1);
      F out = p.empty() ? rl::app(a.lhs, fa::comp(a.rel, fa::top()), a.lhs)
                        : rl::app(a.lhs, fa::comp(a.rel, fa::cut(static_cast<int>(a.rhs.size()))), p);
      auto rest = ps;
      rest[idx[0]] = out;
      return quant(Op::Exists, f->count - 1, nullptr, drop(rl::rebuild(Op::And, rest), w));
    }
    return std::nullopt;
  });
}

// ⟨∀ w : w R p⃗ : w S q⃗⟩ ~> p⃗ (R\S) q⃗. A side that is a diagonal w T w reads
// as w (T̂·⊤) t⃗ for the other side's tuple.
Rule divide() {
  return formulaRule("divide", [](const F& f, const Context& c) -> std::optional<F> {
    if (f->op != Op::Forall || f->special || !f->range) return std::nullopt;
    auto ps = parts(f->range, Op::And);
    const F& body = f->a;
    for (int w = c.depth + f->count; w > c.depth; --w) {
      std::vector<std::size_t> idx;
      auto ms = mentioning(ps, w, idx);
      if (ms.size() != 1 || !simple(body) || !simple(ms[0])) continue;
      bool rd = diagonal(ms[0], w), bd = diagonal(body, w);
      bool ro = position(ms[0], w) >= 0, bo = position(body, w) >= 0;
      if (!((ro && bo) || (rd && bo) || (ro && bd))) continue;
      std::optional<Lit> r, b;
      if (ro) r = toFirst(ms[0], w);
      if (bo) b = toFirst(body, w);
      if (rd) r = Lit{{rl::bv(w)}, fa::comp(diag(ms[0]->rel), fa::top()), b->rhs};
      if (bd) b = Lit{{rl::bv(w)}, fa::comp(diag(body->rel), fa::top()), r->rhs};
      auto out = rl::app(r->rhs, fa::ldiv(r->rel, b->rel), b->rhs);
      auto rest = without(ps, idx[0]);
      F range = rest.empty() ? F() : drop(rl::rebuild(Op::And, rest), w);
      return quant(Op::Forall, f->count - 1, range, drop(out, w));
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- FA

void faSpine(const fa::Expr& e, FOp op, std::vector<fa::Expr>& out) {
  if (e->op == op) {
    faSpine(e->lhs, op, out);
    faSpine(e->rhs, op, out);
  } else {
    out.push_back(e);
  }
}

fa::Expr rebuildFa(FOp op, const std::vector<fa::Expr>& xs) {
  return op == FOp::Inter ? fa::interAll(xs) : fa::uniAll(xs);
}

// Unit, zero and idempotence laws of ∩ (⊤ unit, ⊥ zero) and ∪ (⊥ unit, ⊤ zero).
Rule lattice(FOp op) {
  return exprRule(op == FOp::Inter ? "∩ laws" : "∪ laws", [op](const fa::Expr& e) -> fa::Expr {
    if (e->op != op) return nullptr;
    FOp unit = op == FOp::Inter ? FOp::Top : FOp::Bot;
    FOp zero = op == FOp::Inter ? FOp::Bot : FOp::Top;
    std::vector<fa::Expr> xs, keep;
    faSpine(e, op, xs);
    for (auto& x : xs) {
      if (x->op == zero) return x;
      if (x->op == unit) continue;
      bool dup = false;
      for (auto& k : keep) dup = dup || fa::equal(k, x);
      if (!dup) keep.push_back(x);
    }
    if (keep.size() == xs.size()) return nullptr;
    if (keep.empty()) return op == FOp::Inter ? fa::top() : fa::bot();
    return rebuildFa(op, keep);
  });
}

Rule convDistrib() {
  return exprRule("° distributes", [](const fa::Expr& e) -> fa::Expr {
    if (e->op != FOp::Conv) return nullptr;
    const auto& a = e->lhs;
    switch (a->op) {
      case FOp::Inter: return fa::inter(fa::conv(a->lhs), fa::conv(a->rhs));
      case FOp::Union: return fa::uni(fa::conv(a->lhs), fa::conv(a->rhs));
      case FOp::Comp: return fa::comp(fa::conv(a->rhs), fa::conv(a->lhs));
      case FOp::Conv: return a->lhs;
      case FOp::Id:
      case FOp::Top:
      case FOp::Bot:
      case FOp::Coref: return a;
      default: return nullptr;
    }
  });
}

Rule complLaws() {
  return exprRule("‾ laws", [](const fa::Expr& e) -> fa::Expr {
    if (e->op != FOp::Compl) return nullptr;
    const auto& a = e->lhs;
    switch (a->op) {
      case FOp::Union: return fa::inter(fa::compl_(a->lhs), fa::compl_(a->rhs));
      case FOp::Inter: return fa::uni(fa::compl_(a->lhs), fa::compl_(a->rhs));
      case FOp::Comp: return fa::ldiv(fa::conv(a->lhs), fa::compl_(a->rhs));
      case FOp::LDiv: return fa::comp(fa::conv(a->lhs), fa::compl_(a->rhs));
      case FOp::Compl: return a->lhs;
      case FOp::Top: return fa::bot();
      case FOp::Bot: return fa::top();
      case FOp::Conv:
        if (a->lhs->op == FOp::Compl) return fa::conv(a->lhs->lhs);
        return nullptr;
      default: return nullptr;
    }
  });
}

Rule divisionLaws() {
  return exprRule("\\ laws", [](const fa::Expr& e) -> fa::Expr {
    if (e->op != FOp::LDiv) return nullptr;
    if (e->lhs->op == FOp::Bot || e->rhs->op == FOp::Top) return fa::top();
    if (e->lhs->op == FOp::Id) return e->rhs;
    return nullptr;
  });
}

Rule compLaws() {
  return exprRule("· laws", [](const fa::Expr& e) -> fa::Expr {
    if (e->op != FOp::Comp) return nullptr;
    if (e->lhs->op == FOp::Id) return e->rhs;
    if (e->rhs->op == FOp::Id) return e->lhs;
    if (e->lhs->op == FOp::Bot || e->rhs->op == FOp::Bot) return fa::bot();
    if (e->lhs->op == FOp::Top && e->rhs->op == FOp::Top) return fa::top();
    if (e->lhs->op == FOp::Coref && fa::equal(e->lhs, e->rhs)) return e->lhs;
    return nullptr;
  });
}

bool isConvOf(const fa::Expr& e, FOp leaf) { return e->op == FOp::Conv && e->lhs->op == leaf; }

// π₁°·R ∩ π₂°·S ~> R ∇ S
Rule forkIntro() {
  return exprRule("fork intro", [](const fa::Expr& e) -> fa::Expr {
    if (e->op != FOp::Inter) return nullptr;
    std::vector<fa::Expr> xs;
    faSpine(e, FOp::Inter, xs);
    auto tail = [](const fa::Expr& x, FOp p) -> fa::Expr {
      if (x->op != FOp::Comp) return nullptr;
      std::vector<fa::Expr> fs;
      faSpine(x, FOp::Comp, fs);
      if (fs.size() < 2 || !isConvOf(fs[0], p)) return nullptr;
      return fa::compAll(std::vector<fa::Expr>(fs.begin() + 1, fs.end()));
    };
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (i == j) continue;
        auto r = tail(xs[i], FOp::Pi1), s = tail(xs[j], FOp::Pi2);
        if (!r || !s) continue;
        std::vector<fa::Expr> keep{fa::fork(r, s)};
        for (std::size_t k = 0; k < xs.size(); ++k)
          if (k != i && k != j) keep.push_back(xs[k]);
        return fa::interAll(keep);
      }
    return nullptr;
  });
}

Rule forkLaws() {
  return exprRule("fork laws", [](const fa::Expr& e) -> fa::Expr {
    if (e->op == FOp::Comp && e->lhs->op == FOp::Conv && e->lhs->lhs->op == FOp::Fork && e->rhs->op == FOp::Fork) {
      const auto& rs = e->lhs->lhs;
      return fa::inter(fa::comp(fa::conv(rs->lhs), e->rhs->lhs), fa::comp(fa::conv(rs->rhs), e->rhs->rhs));
    }
    if (e->op == FOp::Comp && e->lhs->op == FOp::Fork && e->lhs->lhs->op == FOp::Id && e->lhs->rhs->op == FOp::Top)
      return fa::fork(e->rhs, fa::comp(fa::top(), e->rhs));
    if (e->op == FOp::Fork && e->lhs->op == FOp::Comp && e->rhs->op == FOp::Comp && e->lhs->rhs->op == FOp::Pi1 &&
        e->rhs->rhs->op == FOp::Pi2)
      return fa::prod(e->lhs->lhs, e->rhs->lhs);
    return nullptr;
  });
}

Rule factLaws() {
  return factRule("fact laws", [](const fa::Fact& f) -> std::optional<fa::Fact> {
    const auto &l = f.lhs, &r = f.rhs;
    if (f.kind == fa::Fact::Kind::Eq) {
      if (r->op == FOp::Top) return fa::inclusion(fa::top(), l, f.label);
      if (l->op == FOp::Top) return fa::inclusion(fa::top(), r, f.label);
      return std::nullopt;
    }
    if (l->op == FOp::Compl && r->op == FOp::Compl) return fa::inclusion(r->lhs, l->lhs, f.label);
    if (l->op == FOp::Top && r->op == FOp::Conv) return fa::inclusion(l, r->lhs, f.label);
    if (l->op == FOp::Top && r->op == FOp::Compl) return fa::inclusion(r->lhs, fa::bot(), f.label);
    if (l->op == FOp::Conv && r->op == FOp::Bot) return fa::inclusion(l->lhs, r, f.label);
    if (l->op == FOp::Conv && r->op == FOp::Conv) return fa::inclusion(l->lhs, r->lhs, f.label);
    if (r->op == FOp::LDiv) return fa::inclusion(fa::comp(r->lhs, l), r->rhs, f.label);
    return std::nullopt;
  });
}

// A literal u T v or ¬(u T v) over single bound variables.
bool literal(const F& f, Lit& out) {
  bool neg = f->op == Op::Not;
  const F& a = neg ? f->a : f;
  if (a->op != Op::App || a->lhs.size() != 1 || a->rhs.size() != 1 || !boundOnly(a->lhs) || !boundOnly(a->rhs))
    return false;
  out = {a->lhs, neg ? fa::compl_(a->rel) : a->rel, a->rhs};
  return true;
}

}  // namespace

std::vector<Rule> folNormalRules() {
  return {andTrue(),  andFalse(),  orFalse(),         orTrue(),        idempotent(Op::And),
          idempotent(Op::Or), deMorgan(Op::And), deMorgan(Op::Or), notConst(), existsRange(),
          fuse(Op::Exists), unusedVar(), distribute(Op::Exists), miniscope()};
}

std::vector<Rule> folRules() {
  auto rs = folNormalRules();
  for (auto r : {orToImplies(), impliesConst(), curry(), notForall(), notExists(), forallRange(), fuse(Op::Forall),
                 distribute(Op::Forall)})
    rs.push_back(r);
  return rs;
}

std::vector<Rule> definitionNormalRules() {
  return {onePoint(), absorb(), compose(), project()};
}

std::vector<Rule> definitionRules() {
  auto rs = definitionNormalRules();
  rs.push_back(divide());
  return rs;
}

std::vector<Rule> faRules() {
  return {lattice(FOp::Inter), lattice(FOp::Union), convDistrib(), complLaws(), divisionLaws(),
          compLaws(),          forkIntro(),         forkLaws(),    factLaws()};
}

Rule dropVarsRule() {
  return {"dropVars ⊆", [](const Term& t, const Context& c) -> Out {
            auto n = node(t);
            if (!n || c.depth != 0 || c.special || n->op != Op::Forall || n->special) return std::nullopt;
            Lit body, range;
            if (!literal(n->a, body) || (n->range && !literal(n->range, range))) return std::nullopt;
            auto u = body.lhs[0], v = body.rhs[0];
            if (n->count == 1) {
              if (u != rl::bv(1) || v != rl::bv(1)) return std::nullopt;
              if (!n->range) return Term(fa::inclusion(fa::id(), body.rel));
              if (range.lhs[0] != u || range.rhs[0] != u) return std::nullopt;
              return Term(fa::inclusion(diag(range.rel), body.rel));
            }
            if (n->count != 2 || u == v) return std::nullopt;
            if (!n->range) return Term(fa::inclusion(fa::top(), body.rel));
            if (range.lhs[0] == u && range.rhs[0] == v) return Term(fa::inclusion(range.rel, body.rel));
            if (range.lhs[0] == v && range.rhs[0] == u) return Term(fa::inclusion(fa::conv(range.rel), body.rel));
            return std::nullopt;
          }};
}

std::vector<Rule> registry() {
  auto rs = rl2fa::registry();
  for (auto& group : {folRules(), definitionRules(), faRules()}) rs.insert(rs.end(), group.begin(), group.end());
  rs.push_back(dropVarsRule());
  return rs;
}

namespace {

std::vector<Rule> join(std::vector<Rule> a, const std::vector<Rule>& b, const std::vector<Rule>& c) {
  a.insert(a.end(), b.begin(), b.end());
  a.insert(a.end(), c.begin(), c.end());
  return a;
}

}  // namespace

Strategy simplify() {
  return Engine::many(Engine::once(Engine::rules(join(folRules(), definitionRules(), faRules()))));
}

Strategy simplifyNormal() {
  return Engine::many(Engine::once(Engine::rules(join(folNormalRules(), definitionNormalRules(), faRules()))));
}

Strategy simplifyFA() { return Engine::many(Engine::once(Engine::rules(faRules()))); }

Strategy translateStrategy() {
  auto uniformAny = Engine::rules({rl2fa::uniformConstRule(), rl2fa::uniformRule()});
  auto loop = Engine::choice({Engine::rule(rl2fa::dropVarsRule()), Engine::seq(simplifyNormal(), rl2fa::shorten()),
                              Engine::once(rl2fa::aggregate()), Engine::once(uniformAny)});
  auto raw = Engine::seq(Engine::seq(rl2fa::normalize(), Engine::rule(rl2fa::insertVarsRule())), Engine::many(loop));
  return Engine::seq(Engine::seq(simplify(), Engine::choice(Engine::rule(dropVarsRule()), raw)), simplifyFA());
}

rl2fa::Result translate(const rl::Formula& f, long budget, bool record) {
  Engine e(budget, record);
  auto r = e.run(translateStrategy(), Term(f));
  if (!r || !asFact(*r))
    throw rl2fa::NonConvergence("translation stopped at " + (r ? toString(*r) : std::string("failure")));
  return {*asFact(*r), e.trace(), e.steps()};
}

}  // namespace alloyfa::heuristics
