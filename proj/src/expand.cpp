#include "alloyfa/expand.hpp"

#include <algorithm>
#include <stdexcept>

namespace alloyfa::expand {

using alloy::EOp;
using alloy::ExprP;
using alloy::FOp;

namespace {

[[noreturn]] void internal(const std::string& msg) { throw std::logic_error("expand: " + msg); }

int levelOf(const Env& env, const std::string& v) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == v) return it->second;
  internal("unbound variable " + v);
}

fa::Expr termOf(const TermEnv& env, const std::string& v) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == v) return it->second;
  internal("unbound variable " + v);
}

std::vector<std::string> freeOf(const ExprP& e) {
  std::vector<std::string> raw, out;
  alloy::freeVars(e, raw);
  for (const auto& v : raw)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

rl::Tuple slice(const rl::Tuple& t, std::size_t from, std::size_t to) {
  return rl::Tuple(t.begin() + static_cast<long>(from), t.begin() + static_cast<long>(to));
}

rl::Tuple concat(rl::Tuple a, const rl::Tuple& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<fa::Expr> sliceCols(const std::vector<fa::Expr>& c, std::size_t from, std::size_t to) {
  return {c.begin() + static_cast<long>(from), c.begin() + static_cast<long>(to)};
}

// v ↦ (P₁(v), ..., Pₘ(v)) as a term relating the tuple to v.
fa::Expr columnsTerm(const std::vector<fa::Expr>& cols) { return fa::forkAll(cols); }

fa::Expr diag(const fa::Expr& e) { return fa::inter(fa::id(), e); }

}  // namespace

fa::Expr directTerm(const ExprP& e) {
  auto d = [](const ExprP& x) { return directTerm(x); };
  switch (e->op) {
    case EOp::Name:
      if (e->arity == 1) return fa::coref(e->name);
      if (e->arity == 2) return fa::rel(e->name);
      return nullptr;
    case EOp::Univ: return e->arity == 1 ? fa::id() : nullptr;
    case EOp::NoneE: return e->arity <= 2 ? fa::bot() : nullptr;
    case EOp::Iden: return fa::id();
    case EOp::Transpose: {
      auto a = d(e->a);
      return a ? fa::conv(a) : nullptr;
    }
    case EOp::Closure: {
      auto a = d(e->a);
      return a ? fa::star(a) : nullptr;
    }
    case EOp::Union:
    case EOp::Inter:
    case EOp::Diff: {
      if (e->arity > 2) return nullptr;
      auto a = d(e->a), b = d(e->b);
      if (!a || !b) return nullptr;
      if (e->op == EOp::Union) return fa::uni(a, b);
      if (e->op == EOp::Inter) return fa::inter(a, b);
      return fa::inter(a, fa::compl_(b));
    }
    case EOp::Join: {
      int p = e->a->arity, q = e->b->arity;
      if (p > 2 || q > 2) return nullptr;
      auto a = d(e->a), b = d(e->b);
      if (!a || !b) return nullptr;
      if (p == 2 && q == 2) return fa::comp(a, b);
      if (p == 1) return diag(fa::compAll({fa::conv(b), a, fa::top()}));
      return diag(fa::compAll({a, b, fa::top()}));
    }
    case EOp::Product: {
      if (e->a->arity != 1 || e->b->arity != 1) return nullptr;
      auto a = d(e->a), b = d(e->b);
      if (!a || !b) return nullptr;
      return fa::compAll({a, fa::top(), b});
    }
    case EOp::DomRestr:
    case EOp::RanRestr: {
      if (e->arity != 2) return nullptr;
      auto a = d(e->a), b = d(e->b);
      if (!a || !b) return nullptr;
      return fa::comp(a, b);
    }
    default: return nullptr;
  }
}

fa::Expr test(const ExprP& e, const std::vector<fa::Expr>& cols, const TermEnv& env) {
  if (static_cast<int>(cols.size()) != e->arity) internal("column count mismatch");
  const std::size_t m = cols.size();
  switch (e->op) {
    case EOp::Name:
      if (m == 1) return diag(fa::compAll({fa::conv(cols[0]), fa::coref(e->name), cols[0]}));
      return diag(fa::compAll({fa::conv(cols[0]), fa::rel(e->name, static_cast<int>(m)),
                               columnsTerm(sliceCols(cols, 1, m))}));
    case EOp::Var: return diag(fa::comp(fa::conv(cols[0]), termOf(env, e->name)));
    case EOp::Univ: return fa::id();
    case EOp::NoneE: return fa::bot();
    case EOp::Iden: return diag(fa::comp(fa::conv(cols[0]), cols[1]));
    case EOp::Transpose: return test(e->a, {cols[1], cols[0]}, env);
    case EOp::Closure: {
      if (auto t = directTerm(e->a)) return diag(fa::compAll({fa::conv(cols[0]), fa::star(t), cols[1]}));
      auto vars = freeOf(e->a);
      std::vector<fa::Expr> from, to;
      for (const auto& v : vars) {
        from.push_back(termOf(env, v));
        to.push_back(termOf(env, v));
      }
      from.push_back(cols[0]);
      to.push_back(cols[1]);
      auto step = liftedStep(e->a, vars);
      return diag(fa::compAll({fa::conv(fa::forkAll(from)), fa::star(step), fa::forkAll(to)}));
    }
    case EOp::TClosure: internal("transitive closure is outside the core");
    case EOp::Union: return fa::uni(test(e->a, cols, env), test(e->b, cols, env));
    case EOp::Inter: return fa::inter(test(e->a, cols, env), test(e->b, cols, env));
    case EOp::Diff:
      return fa::inter(test(e->a, cols, env), diag(fa::compl_(test(e->b, cols, env))));
    case EOp::Product: {
      auto p = static_cast<std::size_t>(e->a->arity);
      return fa::inter(test(e->a, sliceCols(cols, 0, p), env), test(e->b, sliceCols(cols, p, m), env));
    }
    case EOp::DomRestr: return fa::inter(test(e->a, {cols[0]}, env), test(e->b, cols, env));
    case EOp::RanRestr: return fa::inter(test(e->a, cols, env), test(e->b, {cols[m - 1]}, env));
    case EOp::Join: {
      // Extend the context v to (v,k) for the joined column k.
      auto p = static_cast<std::size_t>(e->a->arity);
      std::vector<fa::Expr> lifted;
      for (const auto& c : cols) lifted.push_back(fa::comp(c, fa::pi1()));
      TermEnv env2;
      for (const auto& [n, t] : env) env2.emplace_back(n, fa::comp(t, fa::pi1()));
      auto left = sliceCols(lifted, 0, p - 1);
      left.push_back(fa::pi2());
      std::vector<fa::Expr> right{fa::pi2()};
      for (std::size_t k = p - 1; k < m; ++k) right.push_back(lifted[k]);
      auto inner = fa::inter(test(e->a, left, env2), test(e->b, right, env2));
      return fa::compAll({fa::pi1(), inner, fa::conv(fa::pi1())});
    }
    default: internal("unexpected expression");
  }
}

fa::Expr liftedStep(const ExprP& e, const std::vector<std::string>& vars) {
  if (e->arity != 2) internal("closure of a non-binary expression");
  const int n = static_cast<int>(vars.size()) + 1;
  TermEnv env;
  fa::Expr frame = fa::id();
  for (int i = 1; i < n; ++i) {
    auto a = fa::projX(n, i);
    env.emplace_back(vars[static_cast<std::size_t>(i - 1)], fa::comp(a, fa::pi1()));
    frame = fa::inter(frame, fa::comp(fa::conv(fa::comp(a, fa::pi1())), fa::comp(a, fa::pi2())));
  }
  auto u = fa::projX(n, n);
  std::vector<fa::Expr> cols{fa::comp(u, fa::pi1()), fa::comp(u, fa::pi2())};
  fa::Expr d = test(e, cols, env);
  if (n > 1) d = fa::inter(frame, d);
  return fa::compAll({fa::pi1(), d, fa::conv(fa::pi2())});
}

rl::Formula membership(const rl::Tuple& xs, const ExprP& e, const Env& env, int depth) {
  if (static_cast<int>(xs.size()) != e->arity) internal("width mismatch for " + alloy::toString(e));
  const std::size_t m = xs.size();
  auto mem = [&](const rl::Tuple& t, const ExprP& x) { return membership(t, x, env, depth); };
  switch (e->op) {
    case EOp::Name:
      if (m == 1) return rl::app(xs, fa::coref(e->name), xs);
      return rl::app({xs[0]}, fa::rel(e->name, static_cast<int>(m)), slice(xs, 1, m));
    case EOp::Var: return rl::app(xs, fa::id(), {rl::bv(levelOf(env, e->name))});
    case EOp::Univ: return rl::truth();
    case EOp::NoneE: return rl::falsity();
    case EOp::Iden: return rl::app({xs[0]}, fa::id(), {xs[1]});
    case EOp::Transpose: return mem({xs[1], xs[0]}, e->a);
    case EOp::Closure: {
      if (auto t = directTerm(e->a)) return rl::app({xs[0]}, fa::star(t), {xs[1]});
      auto vars = freeOf(e->a);
      rl::Tuple ctx;
      for (const auto& v : vars) ctx.push_back(rl::bv(levelOf(env, v)));
      auto step = liftedStep(e->a, vars);
      return rl::app(concat(ctx, {xs[0]}), fa::star(step), concat(ctx, {xs[1]}));
    }
    case EOp::TClosure: internal("transitive closure is outside the core");
    case EOp::Union: return rl::or_(mem(xs, e->a), mem(xs, e->b));
    case EOp::Inter: return rl::and_(mem(xs, e->a), mem(xs, e->b));
    case EOp::Diff: return rl::and_(mem(xs, e->a), rl::not_(mem(xs, e->b)));
    case EOp::Product: {
      auto p = static_cast<std::size_t>(e->a->arity);
      return rl::and_(mem(slice(xs, 0, p), e->a), mem(slice(xs, p, m), e->b));
    }
    case EOp::DomRestr: return rl::and_(mem({xs[0]}, e->a), mem(xs, e->b));
    case EOp::RanRestr: return rl::and_(mem({xs[m - 1]}, e->b), mem(xs, e->a));
    case EOp::Join: {
      auto p = static_cast<std::size_t>(e->a->arity);
      rl::Var k = rl::bv(depth + 1);
      rl::Tuple left = slice(xs, 0, p - 1);
      left.push_back(k);
      rl::Tuple right{k};
      for (std::size_t i = p - 1; i < m; ++i) right.push_back(xs[i]);
      return rl::exists(1, nullptr,
                        rl::and_(membership(left, e->a, env, depth + 1),
                                 membership(right, e->b, env, depth + 1)));
    }
    default: internal("unexpected expression");
  }
}

rl::Formula formula(const alloy::FormP& f, const Env& env, int depth) {
  switch (f->op) {
    case FOp::True: return rl::truth();
    case FOp::Not: return rl::not_(formula(f->f, env, depth));
    case FOp::And: return rl::and_(formula(f->f, env, depth), formula(f->g, env, depth));
    case FOp::In: {
      int m = f->x->arity;
      auto xs = rl::levels(depth + 1, depth + m);
      return rl::forall(m, membership(xs, f->x, env, depth + m), membership(xs, f->y, env, depth + m));
    }
    case FOp::Some: {
      int m = f->x->arity;
      return rl::exists(m, nullptr, membership(rl::levels(depth + 1, depth + m), f->x, env, depth + m));
    }
    case FOp::All: {
      Env inner = env;
      inner.emplace_back(f->var, depth + 1);
      return rl::forall(1, membership({rl::bv(depth + 1)}, f->x, env, depth + 1),
                        formula(f->f, inner, depth + 1));
    }
    default: internal("non-core formula " + alloy::toString(f));
  }
}

rl::Formula formula(const alloy::FormP& f) { return formula(f, {}, 0); }

rl::Formula uniformStar(const rl::Formula& a, const rl::Tuple& xs, rl::Var u, rl::Var w) {
  if (a->op != rl::Op::App || a->lhs.size() != 1 || a->rhs.size() != 1) return nullptr;
  auto pos = [&](const rl::Var& v) {
    auto it = std::find(xs.begin(), xs.end(), v);
    return it == xs.end() ? 0 : static_cast<int>(it - xs.begin()) + 1;
  };
  int i = pos(a->lhs[0]), j = pos(a->rhs[0]);
  if (!i || !j) return nullptr;
  int n = static_cast<int>(xs.size()) + 1;
  auto rel = fa::compAll({fa::conv(fa::projNode(n, i)), a->rel, fa::projNode(n, j)});
  return rl::app(concat(xs, {u}), rel, concat(xs, {w}));
}

}  // namespace alloyfa::expand
