#include "alloyfa/fa_eval.hpp"

#include <bit>

namespace alloyfa::oracle {

using fa::Op;

int TypeTable::fresh() {
  int id = static_cast<int>(ts_.size());
  ts_.push_back(T{K::Var, -1, -1, id});
  return id;
}

int TypeTable::atom() {
  int id = static_cast<int>(ts_.size());
  ts_.push_back(T{K::Atom, -1, -1, id});
  return id;
}

int TypeTable::pair(int a, int b) {
  int id = static_cast<int>(ts_.size());
  ts_.push_back(T{K::Pair, a, b, id});
  return id;
}

int TypeTable::tuple(const std::vector<int>& comps) {
  if (comps.empty()) throw TypeError("empty tuple type");
  int t = comps.back();
  for (std::size_t k = comps.size() - 1; k-- > 0;) t = pair(comps[k], t);
  return t;
}

int TypeTable::find(int t) {
  while (ts_[static_cast<std::size_t>(t)].parent != t) {
    auto& p = ts_[static_cast<std::size_t>(t)].parent;
    p = ts_[static_cast<std::size_t>(p)].parent;
    t = p;
  }
  return t;
}

bool TypeTable::occurs(int v, int t) {
  t = find(t);
  if (t == v) return true;
  const T& x = ts_[static_cast<std::size_t>(t)];
  if (x.k != K::Pair) return false;
  return occurs(v, x.a) || occurs(v, x.b);
}

void TypeTable::unify(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  T& x = ts_[static_cast<std::size_t>(a)];
  T& y = ts_[static_cast<std::size_t>(b)];
  if (x.k == K::Var) {
    if (occurs(a, b)) throw TypeError("cyclic shape");
    x.parent = b;
    return;
  }
  if (y.k == K::Var) {
    if (occurs(b, a)) throw TypeError("cyclic shape");
    y.parent = a;
    return;
  }
  if (x.k != y.k) throw TypeError("shape mismatch: " + show(a) + " vs " + show(b));
  if (x.k == K::Atom) {
    y.parent = a;
    return;
  }
  int xa = x.a, xb = x.b, ya = y.a, yb = y.b;
  y.parent = a;
  unify(xa, ya);
  unify(xb, yb);
}

int TypeTable::leaves(int t) {
  t = find(t);
  const T& x = ts_[static_cast<std::size_t>(t)];
  if (x.k != K::Pair) return 1;
  int a = x.a, b = x.b;
  return leaves(a) + leaves(b);
}

std::string TypeTable::show(int t) {
  t = find(t);
  const T& x = ts_[static_cast<std::size_t>(t)];
  switch (x.k) {
    case K::Var: return "?" + std::to_string(t);
    case K::Atom: return "U";
    case K::Pair: {
      int a = x.a, b = x.b;
      return "(" + show(a) + "," + show(b) + ")";
    }
  }
  return "";
}

std::pair<int, int> Program::metaTypes(const std::string& name) {
  auto it = metas_.find(name);
  if (it != metas_.end()) return it->second;
  auto p = std::make_pair(tt_.fresh(), tt_.fresh());
  metas_.emplace(name, p);
  return p;
}

int Program::add(const fa::Expr& e) { return build(fa::unfold(e)); }

int Program::build(const fa::Expr& e) {
  PNode p;
  p.op = e->op;
  p.name = e->name;
  switch (e->op) {
    case Op::Rel: {
      p.out = tt_.atom();
      std::vector<int> comps(static_cast<std::size_t>(e->arity - 1), -1);
      for (auto& c : comps) c = tt_.atom();
      p.in = tt_.tuple(comps);
      p.dynamic = true;
      break;
    }
    case Op::Coref:
      p.out = p.in = tt_.atom();
      p.dynamic = true;
      break;
    case Op::Meta: {
      auto [o, i] = metaTypes(e->name);
      p.out = o;
      p.in = i;
      p.dynamic = true;
      break;
    }
    case Op::Top:
    case Op::Bot:
      p.out = tt_.fresh();
      p.in = tt_.fresh();
      break;
    case Op::Id:
      p.out = p.in = tt_.fresh();
      break;
    case Op::Pi1:
    case Op::Pi2: {
      int a = tt_.fresh(), b = tt_.fresh();
      p.out = e->op == Op::Pi1 ? a : b;
      p.in = tt_.pair(a, b);
      p.ta = a;
      p.tb = b;
      break;
    }
    case Op::Proj:
    case Op::Rotate:
    case Op::NComp:
      return build(fa::unfold(e));
    default: {
      p.a = build(e->lhs);
      if (e->rhs) p.b = build(e->rhs);
      const PNode& A = nodes_[static_cast<std::size_t>(p.a)];
      int ao = A.out, ai = A.in;
      int bo = -1, bi = -1;
      p.dynamic = A.dynamic;
      if (p.b >= 0) {
        const PNode& B = nodes_[static_cast<std::size_t>(p.b)];
        bo = B.out;
        bi = B.in;
        p.dynamic = p.dynamic || B.dynamic;
      }
      switch (e->op) {
        case Op::Union:
        case Op::Inter:
          tt_.unify(ao, bo);
          tt_.unify(ai, bi);
          p.out = ao;
          p.in = ai;
          break;
        case Op::Compl:
          p.out = ao;
          p.in = ai;
          break;
        case Op::Conv:
          p.out = ai;
          p.in = ao;
          break;
        case Op::Comp:
          tt_.unify(ai, bo);
          p.out = ao;
          p.in = bi;
          break;
        case Op::Fork:
          tt_.unify(ai, bi);
          p.out = tt_.pair(ao, bo);
          p.in = ai;
          break;
        case Op::Prod:
          p.out = tt_.pair(ao, bo);
          p.in = tt_.pair(ai, bi);
          break;
        case Op::LDiv:
          tt_.unify(ao, bo);
          p.out = ai;
          p.in = bi;
          break;
        case Op::RDiv:
          tt_.unify(ai, bi);
          p.out = ao;
          p.in = bo;
          break;
        case Op::Star:
          tt_.unify(ao, ai);
          p.out = ao;
          p.in = ai;
          break;
        default:
          throw TypeError("unexpected operator in evaluator");
      }
    }
  }
  nodes_.push_back(std::move(p));
  finished_ = false;
  return static_cast<int>(nodes_.size()) - 1;
}

std::size_t Program::carrier(int type) {
  std::size_t s = 1;
  int l = tt_.leaves(type);
  for (int k = 0; k < l; ++k) s *= static_cast<std::size_t>(n_);
  return s;
}

std::vector<std::string> Program::metaNames() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : metas_) out.push_back(k);
  return out;
}

void Program::setMeta(const std::string& name, Matrix value) {
  auto [o, i] = metaTypes(name);
  if (value.rows() != carrier(o) || value.cols() != carrier(i))
    throw TypeError("value for ?" + name + " has the wrong shape");
  metaVals_[name] = std::move(value);
}

void Program::finish() {
  for (auto& p : nodes_) {
    p.rows = carrier(p.out);
    p.cols = carrier(p.in);
    if (p.ta >= 0) {
      p.sa = carrier(p.ta);
      p.sb = carrier(p.tb);
    }
  }
  for (auto& p : nodes_)
    if (!p.dynamic) compute(p);
  finished_ = true;
}

std::vector<Program::NodeInfo> Program::layout() const {
  std::vector<NodeInfo> out;
  for (const auto& p : nodes_) out.push_back({p.op, p.name, p.a, p.b, p.rows, p.cols, p.dynamic});
  return out;
}

void Program::bind(const Vocabulary& v) {
  for (auto& p : nodes_) {
    if (p.op == Op::Rel) {
      p.slot = v.relIndex(p.name);
      if (p.slot < 0) throw TypeError("relation " + p.name + " is not in the vocabulary");
    } else if (p.op == Op::Coref) {
      p.slot = v.sigIndex(p.name);
      p.unarySig = p.slot >= 0;
      if (p.slot < 0) {
        p.slot = v.relIndex(p.name);
        if (p.slot < 0 || v.rels[static_cast<std::size_t>(p.slot)].arity() != 1)
          throw TypeError("no signature or unary relation named " + p.name);
      }
    }
  }
  bound_ = &v;
}

void Program::eval(const FiniteModel& m) {
  if (m.universe != n_) throw TypeError("program compiled for another universe size");
  if (!finished_) finish();
  if (bound_ != m.vocab) bind(*m.vocab);
  model_ = &m;
  for (auto& p : nodes_)
    if (p.dynamic) compute(p);
}

void Program::compute(PNode& p) {
  auto child = [&](int h) -> const Matrix& { return nodes_[static_cast<std::size_t>(h)].val; };
  std::size_t ro = p.rows, ci = p.cols;
  switch (p.op) {
    case Op::Rel: {
      const TupleSet& ts = model_->rels[static_cast<std::size_t>(p.slot)];
      p.val.reset(ro, ci);
      const auto& w = ts.words();
      for (std::size_t k = 0; k < w.size(); ++k) {
        std::uint64_t bits = w[k];
        while (bits) {
          std::size_t idx = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          p.val.set(idx / ci, idx % ci);
        }
      }
      return;
    }
    case Op::Coref: {
      p.val.reset(ro, ci);
      if (p.unarySig) {
        std::uint64_t mask = model_->sigAtoms[static_cast<std::size_t>(p.slot)];
        for (std::size_t a = 0; a < ro; ++a)
          if ((mask >> a) & 1U) p.val.set(a, a);
      } else {
        const TupleSet& ts = model_->rels[static_cast<std::size_t>(p.slot)];
        for (std::size_t a = 0; a < ro; ++a)
          if (ts.has(a)) p.val.set(a, a);
      }
      return;
    }
    case Op::Meta: {
      auto it = metaVals_.find(p.name);
      if (it == metaVals_.end()) throw TypeError("no value for ?" + p.name);
      p.val = it->second;
      return;
    }
    case Op::Top:
      p.val.reset(ro, ci);
      p.val.fill();
      return;
    case Op::Bot:
      p.val.reset(ro, ci);
      return;
    case Op::Id:
      identity(ro, p.val);
      return;
    case Op::Pi1:
      firstProjection(p.sa, p.sb, p.val);
      return;
    case Op::Pi2:
      secondProjection(p.sa, p.sb, p.val);
      return;
    case Op::Union: unite(child(p.a), child(p.b), p.val); return;
    case Op::Inter: intersect(child(p.a), child(p.b), p.val); return;
    case Op::Compl: complement(child(p.a), p.val); return;
    case Op::Conv: transpose(child(p.a), p.val); return;
    case Op::Comp: compose(child(p.a), child(p.b), p.val); return;
    case Op::Fork: forkOf(child(p.a), child(p.b), p.val); return;
    case Op::Prod: productOf(child(p.a), child(p.b), p.val); return;
    case Op::Star: closure(child(p.a), p.val); return;
    case Op::LDiv: {
      // x (R\S) y  iff  for all w, w R x implies w S y
      Matrix t, c, k;
      transpose(child(p.a), t);
      complement(child(p.b), c);
      compose(t, c, k);
      complement(k, p.val);
      return;
    }
    case Op::RDiv: {
      // x (R/S) y  iff  for all w, x R w implies y S w
      Matrix c, t, k;
      complement(child(p.b), c);
      transpose(c, t);
      compose(child(p.a), t, k);
      complement(k, p.val);
      return;
    }
    default:
      throw TypeError("unexpected operator in evaluator");
  }
}

FactChecker::FactChecker(const fa::Fact& f, int universe) : prog_(universe), kind_(f.kind) {
  l_ = prog_.add(f.lhs);
  r_ = prog_.add(f.rhs);
  prog_.types().unify(prog_.outType(l_), prog_.outType(r_));
  prog_.types().unify(prog_.inType(l_), prog_.inType(r_));
  prog_.finish();
}

bool FactChecker::holds(const FiniteModel& m) {
  prog_.eval(m);
  const Matrix& a = prog_.value(l_);
  const Matrix& b = prog_.value(r_);
  return kind_ == fa::Fact::Kind::Eq ? a == b : a.subsetOf(b);
}

Matrix evaluate(const fa::Expr& e, const FiniteModel& m) {
  Program p(m.universe);
  int h = p.add(e);
  p.eval(m);
  return p.value(h);
}

bool holds(const fa::Fact& f, const FiniteModel& m) {
  FactChecker c(f, m.universe);
  return c.holds(m);
}

}  // namespace alloyfa::oracle
