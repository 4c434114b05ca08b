#include "alloyfa/semantics.hpp"

#include <stdexcept>

namespace alloyfa::oracle {

using alloy::EOp;
using alloy::FOp;

Vocabulary vocabularyOf(const alloy::SymbolTable& st) {
  Vocabulary v;
  for (const auto& s : st.sigs) v.sigs.push_back({s.name, -1, s.abstract});
  for (std::size_t k = 0; k < st.sigs.size(); ++k)
    if (!st.sigs[k].parent.empty()) v.sigs[k].parent = v.sigIndex(st.sigs[k].parent);
  for (const auto& r : st.rels) {
    RelInfo ri{r.name, {}};
    for (const auto& c : r.columns) ri.columns.push_back(st.sortsAreUniverse ? -1 : v.sigIndex(c));
    v.rels.push_back(ri);
  }
  return v;
}

namespace {

int lookup(const AlloyEnv& env, const std::string& n) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == n) return it->second;
  throw std::runtime_error("unbound variable " + n);
}

TupleSet atomsOf(const FiniteModel& m, std::uint64_t mask) {
  TupleSet t(m.universe, 1);
  for (int a = 0; a < m.universe; ++a)
    if ((mask >> a) & 1U) t.put(static_cast<std::size_t>(a));
  return t;
}

std::uint64_t allAtoms(const FiniteModel& m) {
  return m.universe >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.universe) - 1;
}

template <class F>
TupleSet pointwise(const TupleSet& a, const TupleSet& b, F f) {
  TupleSet r(a.universe(), a.arity());
  for (std::size_t w = 0; w < r.words().size(); ++w) r.words()[w] = f(a.words()[w], b.words()[w]);
  return r;
}

std::size_t power(int n, int k) {
  std::size_t s = 1;
  for (int j = 0; j < k; ++j) s *= static_cast<std::size_t>(n);
  return s;
}

}  // namespace

TupleSet evalAlloy(const alloy::ExprP& e, const FiniteModel& m, const AlloyEnv& env) {
  const int n = m.universe;
  auto ev = [&](const alloy::ExprP& x) { return evalAlloy(x, m, env); };
  switch (e->op) {
    case EOp::Name: {
      int s = m.vocab->sigIndex(e->name);
      if (s >= 0) return atomsOf(m, m.sigAtoms[static_cast<std::size_t>(s)]);
      int r = m.vocab->relIndex(e->name);
      if (r < 0) throw std::runtime_error("unbound symbol " + e->name);
      return m.rels[static_cast<std::size_t>(r)];
    }
    case EOp::Var: {
      TupleSet t(n, 1);
      t.put(static_cast<std::size_t>(lookup(env, e->name)));
      return t;
    }
    case EOp::Univ: return atomsOf(m, allAtoms(m));
    case EOp::NoneE: return TupleSet(n, std::max(1, e->arity));
    case EOp::Iden: {
      TupleSet t(n, 2);
      for (int a = 0; a < n; ++a) t.put({a, a});
      return t;
    }
    case EOp::Transpose: {
      auto a = ev(e->a);
      TupleSet t(n, 2);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (a.has({x, y})) t.put({y, x});
      return t;
    }
    case EOp::Closure:
    case EOp::TClosure: {
      auto a = ev(e->a);
      Matrix mx(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (a.has({x, y})) mx.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      Matrix c;
      closure(mx, c);
      if (e->op == EOp::TClosure) {
        Matrix t;
        compose(c, mx, t);
        c = t;
      }
      TupleSet t(n, 2);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (c.get(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) t.put({x, y});
      return t;
    }
    case EOp::Union: return pointwise(ev(e->a), ev(e->b), [](auto x, auto y) { return x | y; });
    case EOp::Inter: return pointwise(ev(e->a), ev(e->b), [](auto x, auto y) { return x & y; });
    case EOp::Diff: return pointwise(ev(e->a), ev(e->b), [](auto x, auto y) { return x & ~y; });
    case EOp::Join: {
      auto a = ev(e->a), b = ev(e->b);
      int p = a.arity(), q = b.arity();
      TupleSet t(n, p + q - 2);
      std::size_t tailB = power(n, q - 1);
      for (std::size_t i = 0; i < a.capacity(); ++i) {
        if (!a.has(i)) continue;
        std::size_t head = i / static_cast<std::size_t>(n), k = i % static_cast<std::size_t>(n);
        for (std::size_t j = 0; j < tailB; ++j)
          if (b.has(k * tailB + j)) t.put(head * tailB + j);
      }
      return t;
    }
    case EOp::Product: {
      auto a = ev(e->a), b = ev(e->b);
      TupleSet t(n, a.arity() + b.arity());
      for (std::size_t i = 0; i < a.capacity(); ++i) {
        if (!a.has(i)) continue;
        for (std::size_t j = 0; j < b.capacity(); ++j)
          if (b.has(j)) t.put(i * b.capacity() + j);
      }
      return t;
    }
    case EOp::DomRestr: {
      auto s = ev(e->a), r = ev(e->b);
      std::size_t tail = power(n, r.arity() - 1);
      for (std::size_t i = 0; i < r.capacity(); ++i)
        if (r.has(i) && !s.has(i / tail)) r.put(i, false);
      return r;
    }
    case EOp::RanRestr: {
      auto r = ev(e->a), s = ev(e->b);
      for (std::size_t i = 0; i < r.capacity(); ++i)
        if (r.has(i) && !s.has(i % static_cast<std::size_t>(n))) r.put(i, false);
      return r;
    }
  }
  throw std::logic_error("evalAlloy: unknown operator");
}

bool holdsAlloy(const alloy::FormP& f, const FiniteModel& m, const AlloyEnv& env) {
  auto h = [&](const alloy::FormP& g) { return holdsAlloy(g, m, env); };
  switch (f->op) {
    case FOp::True: return true;
    case FOp::In: {
      auto a = evalAlloy(f->x, m, env), b = evalAlloy(f->y, m, env);
      for (std::size_t w = 0; w < a.words().size(); ++w)
        if (a.words()[w] & ~b.words()[w]) return false;
      return true;
    }
    case FOp::Eq: return evalAlloy(f->x, m, env) == evalAlloy(f->y, m, env);
    case FOp::Some: return !evalAlloy(f->x, m, env).empty();
    case FOp::Lone: return evalAlloy(f->x, m, env).count() <= 1;
    case FOp::Not: return !h(f->f);
    case FOp::And: return h(f->f) && h(f->g);
    case FOp::Or: return h(f->f) || h(f->g);
    case FOp::Implies: return !h(f->f) || h(f->g);
    case FOp::All:
    case FOp::Exists: {
      auto range = evalAlloy(f->x, m, env);
      AlloyEnv inner = env;
      inner.emplace_back(f->var, 0);
      for (int a = 0; a < m.universe; ++a) {
        if (!range.has(static_cast<std::size_t>(a))) continue;
        inner.back().second = a;
        bool b = holdsAlloy(f->f, m, inner);
        if (f->op == FOp::All && !b) return false;
        if (f->op == FOp::Exists && b) return true;
      }
      return f->op == FOp::All;
    }
    case FOp::Call: throw std::runtime_error("predicate call " + f->name + " was not inlined");
  }
  throw std::logic_error("holdsAlloy: unknown operator");
}

RLChecker::RLChecker(const rl::Formula& f, int universe) : f_(f), prog_(universe) {
  auto& tt = prog_.types();
  tx_ = tt.fresh();
  ty_ = tt.fresh();
  compile(f);
  prog_.finish();
  nx_ = prog_.carrier(tx_);
  ny_ = prog_.carrier(ty_);
}

void RLChecker::compile(const rl::Formula& f) {
  if (!f) return;
  if (f->op != rl::Op::App) {
    compile(f->a);
    compile(f->b);
    compile(f->range);
    return;
  }
  auto& tt = prog_.types();
  int h = prog_.add(f->rel);
  auto shape = [&](const rl::Tuple& t) {
    std::vector<int> comps;
    for (const auto& v : t)
      comps.push_back(v.kind == rl::Var::Kind::X ? tx_ : v.kind == rl::Var::Kind::Y ? ty_ : tt.atom());
    return tt.tuple(comps);
  };
  tt.unify(prog_.outType(h), shape(f->lhs));
  tt.unify(prog_.inType(h), shape(f->rhs));
  apps_.emplace(f.get(), h);
}

std::size_t RLChecker::index(const rl::Tuple& t) const {
  std::size_t idx = 0;
  const auto n = static_cast<std::size_t>(prog_.universe());
  for (const auto& v : t) {
    switch (v.kind) {
      case rl::Var::Kind::X: idx = idx * nx_ + x_; break;
      case rl::Var::Kind::Y: idx = idx * ny_ + y_; break;
      default:
        if (v.level < 1 || static_cast<std::size_t>(v.level) > vals_.size())
          throw std::logic_error("level " + std::to_string(v.level) + " out of scope");
        idx = idx * n + static_cast<std::size_t>(vals_[static_cast<std::size_t>(v.level - 1)]);
    }
  }
  return idx;
}

bool RLChecker::eval(const rl::Node* f, int depth) {
  switch (f->op) {
    case rl::Op::True: return true;
    case rl::Op::False: return false;
    case rl::Op::Not: return !eval(f->a.get(), depth);
    case rl::Op::And: return eval(f->a.get(), depth) && eval(f->b.get(), depth);
    case rl::Op::Or: return eval(f->a.get(), depth) || eval(f->b.get(), depth);
    case rl::Op::Implies: return !eval(f->a.get(), depth) || eval(f->b.get(), depth);
    case rl::Op::App: {
      return prog_.value(apps_.at(f)).get(index(f->lhs), index(f->rhs));
    }
    case rl::Op::Forall:
    case rl::Op::Exists: break;
  }
  const bool all = f->op == rl::Op::Forall;
  if (f->special) {
    auto sx = x_, sy = y_;
    bool result = true;
    for (x_ = 0; x_ < nx_ && result; ++x_)
      for (y_ = 0; y_ < ny_ && result; ++y_) result = eval(f->a.get(), depth);
    x_ = sx;
    y_ = sy;
    return result;
  }
  const int n = prog_.universe();
  const int k = f->count;
  if (n == 0) return all;
  vals_.resize(static_cast<std::size_t>(depth + k));
  std::fill(vals_.begin() + depth, vals_.end(), 0);
  while (true) {
    bool in = !f->range || eval(f->range.get(), depth + k);
    if (in) {
      bool b = eval(f->a.get(), depth + k);
      if (all && !b) break;
      if (!all && b) break;
    }
    // Next assignment of the k new levels.
    int j = depth + k - 1;
    while (j >= depth && ++vals_[static_cast<std::size_t>(j)] == n) vals_[static_cast<std::size_t>(j--)] = 0;
    if (j < depth) {
      vals_.resize(static_cast<std::size_t>(depth));
      return all;
    }
  }
  vals_.resize(static_cast<std::size_t>(depth));
  return !all;
}

bool RLChecker::holds(const FiniteModel& m) { return holds(m, {}); }

bool RLChecker::holds(const FiniteModel& m, const std::vector<int>& free) {
  prog_.eval(m);
  vals_ = free;
  x_ = y_ = 0;
  return eval(f_.get(), static_cast<int>(free.size()));
}

bool holdsRL(const rl::Formula& f, const FiniteModel& m) {
  RLChecker c(f, m.universe);
  return c.holds(m);
}

}  // namespace alloyfa::oracle
