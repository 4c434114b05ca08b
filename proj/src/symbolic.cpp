#include "alloyfa/symbolic.hpp"

#include <climits>
#include <cmath>

namespace alloyfa::oracle::symbolic {

using fa::Op;

Bdd::Bdd() {
  nodes_.push_back({INT_MAX, 0, 0});
  nodes_.push_back({INT_MAX, 1, 1});
}

int Bdd::mk(int v, int lo, int hi) {
  if (lo == hi) return lo;
  std::array<int, 3> key{v, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_.emplace(key, id);
  return id;
}

int Bdd::var(int v) { return mk(v, False, True); }

int Bdd::ite(int f, int g, int h) {
  if (f == True) return g;
  if (f == False) return h;
  if (g == h) return g;
  if (g == True && h == False) return f;
  std::array<int, 3> key{f, g, h};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  int v = std::min({top(f), top(g), top(h)});
  auto co = [&](int x, bool hi) {
    const Node& n = nodes_[static_cast<std::size_t>(x)];
    if (n.var != v) return x;
    return hi ? n.hi : n.lo;
  };
  int lo = ite(co(f, false), co(g, false), co(h, false));
  int hi = ite(co(f, true), co(g, true), co(h, true));
  int r = mk(v, lo, hi);
  cache_.emplace(key, r);
  return r;
}

bool Bdd::satisfy(int f, std::vector<bool>& values) const {
  if (f == False) return false;
  while (f != True) {
    const Node& n = nodes_[static_cast<std::size_t>(f)];
    if (static_cast<std::size_t>(n.var) >= values.size()) values.resize(static_cast<std::size_t>(n.var) + 1, false);
    if (n.lo != False) {
      values[static_cast<std::size_t>(n.var)] = false;
      f = n.lo;
    } else {
      values[static_cast<std::size_t>(n.var)] = true;
      f = n.hi;
    }
  }
  return true;
}

double Bdd::count(int f, int vars) const {
  std::unordered_map<int, double> memo;
  // Assignments of variables var(g)..vars-1 that satisfy g.
  auto rec = [&](auto& self, int g) -> double {
    if (g == False) return 0;
    if (g == True) return 1;
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[static_cast<std::size_t>(g)];
    auto below = [&](int c) {
      int cv = c <= True ? vars : top(c);
      return self(self, c) * std::ldexp(1.0, cv - n.var - 1);
    };
    double r = below(n.lo) + below(n.hi);
    memo.emplace(g, r);
    return r;
  };
  int tv = f <= True ? vars : top(f);
  return rec(rec, f) * std::ldexp(1.0, tv);
}

Evaluator::Evaluator(const std::vector<fa::Fact>& facts, const std::map<std::string, MetaShape>& shapes,
                     int universe)
    : prog_(universe), facts_(facts) {
  handles_ = compileLaws(prog_, facts, shapes);
  for (const auto& m : prog_.metaNames()) {
    auto [o, i] = prog_.metaTypes(m);
    std::size_t r = prog_.carrier(o), c = prog_.carrier(i);
    metas_[m] = {nvars_, {r, c}};
    nvars_ += static_cast<int>(r * c);
  }
  auto layout = prog_.layout();
  vals_.resize(layout.size());
  for (std::size_t h = 0; h < layout.size(); ++h) compute(layout[h], h);
}

void Evaluator::compute(const Program::NodeInfo& n, std::size_t h) {
  SymMatrix& out = vals_[h];
  out.rows = n.rows;
  out.cols = n.cols;
  out.cells.assign(n.rows * n.cols, Bdd::False);
  if (!n.dynamic) {
    const Matrix& m = prog_.value(static_cast<int>(h));
    for (std::size_t r = 0; r < n.rows; ++r)
      for (std::size_t c = 0; c < n.cols; ++c) out.at(r, c) = m.get(r, c) ? Bdd::True : Bdd::False;
    return;
  }
  auto& b = bdd_;
  auto child = [&](int k) -> const SymMatrix& { return vals_[static_cast<std::size_t>(k)]; };
  auto compose = [&](const SymMatrix& x, const SymMatrix& y, SymMatrix& z) {
    z.rows = x.rows;
    z.cols = y.cols;
    z.cells.assign(z.rows * z.cols, Bdd::False);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        int xk = x.at(i, k);
        if (xk == Bdd::False) continue;
        for (std::size_t j = 0; j < y.cols; ++j) {
          int yk = y.at(k, j);
          if (yk != Bdd::False) z.at(i, j) = b.disj(z.at(i, j), b.conj(xk, yk));
        }
      }
  };
  auto transpose = [](const SymMatrix& x) {
    SymMatrix t{x.cols, x.rows, std::vector<int>(x.cells.size())};
    for (std::size_t r = 0; r < x.rows; ++r)
      for (std::size_t c = 0; c < x.cols; ++c) t.at(c, r) = x.at(r, c);
    return t;
  };
  auto complement = [&](const SymMatrix& x) {
    SymMatrix t = x;
    for (auto& c : t.cells) c = b.neg(c);
    return t;
  };
  switch (n.op) {
    case Op::Meta: {
      const auto& [first, shape] = metas_.at(n.name);
      for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] = b.var(first + static_cast<int>(k));
      return;
    }
    case Op::Union:
    case Op::Inter: {
      const auto &x = child(n.a), &y = child(n.b);
      for (std::size_t k = 0; k < out.cells.size(); ++k)
        out.cells[k] = n.op == Op::Union ? b.disj(x.cells[k], y.cells[k]) : b.conj(x.cells[k], y.cells[k]);
      return;
    }
    case Op::Compl: out = complement(child(n.a)); return;
    case Op::Conv: out = transpose(child(n.a)); return;
    case Op::Comp: compose(child(n.a), child(n.b), out); return;
    case Op::Fork: {
      const auto &x = child(n.a), &y = child(n.b);
      for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < y.rows; ++j)
          for (std::size_t c = 0; c < x.cols; ++c) out.at(i * y.rows + j, c) = b.conj(x.at(i, c), y.at(j, c));
      return;
    }
    case Op::Prod: {
      const auto &x = child(n.a), &y = child(n.b);
      for (std::size_t i1 = 0; i1 < x.rows; ++i1)
        for (std::size_t j1 = 0; j1 < x.cols; ++j1)
          for (std::size_t i2 = 0; i2 < y.rows; ++i2)
            for (std::size_t j2 = 0; j2 < y.cols; ++j2)
              out.at(i1 * y.rows + i2, j1 * y.cols + j2) = b.conj(x.at(i1, j1), y.at(i2, j2));
      return;
    }
    case Op::Star: {
      out = child(n.a);
      std::size_t m = out.rows;
      for (std::size_t k = 0; k < m; ++k) out.at(k, k) = Bdd::True;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) {
          int ik = out.at(i, k);
          if (i == k || ik == Bdd::False) continue;
          for (std::size_t j = 0; j < m; ++j) out.at(i, j) = b.disj(out.at(i, j), b.conj(ik, out.at(k, j)));
        }
      return;
    }
    case Op::LDiv: {
      SymMatrix k;
      compose(transpose(child(n.a)), complement(child(n.b)), k);
      out = complement(k);
      return;
    }
    case Op::RDiv: {
      SymMatrix k;
      compose(child(n.a), transpose(complement(child(n.b))), k);
      out = complement(k);
      return;
    }
    default:
      throw TypeError("symbolic evaluation covers pattern variables only, found " + std::string(n.name.empty() ? "a constant" : n.name));
  }
}

int Evaluator::truth(std::size_t fact) {
  auto [l, r] = handles_[fact];
  const auto &a = vals_[static_cast<std::size_t>(l)], &c = vals_[static_cast<std::size_t>(r)];
  bool eq = facts_[fact].kind == fa::Fact::Kind::Eq;
  int t = Bdd::True;
  for (std::size_t k = 0; k < a.cells.size() && t != Bdd::False; ++k)
    t = bdd_.conj(t, eq ? bdd_.iff(a.cells[k], c.cells[k]) : bdd_.implies(a.cells[k], c.cells[k]));
  return t;
}

int Evaluator::truth() {
  int t = Bdd::True;
  for (std::size_t k = 0; k < facts_.size(); ++k) t = bdd_.conj(t, truth(k));
  return t;
}

std::size_t Evaluator::rows(const std::string& meta) const { return metas_.at(meta).second.first; }
std::size_t Evaluator::cols(const std::string& meta) const { return metas_.at(meta).second.second; }

int Evaluator::variable(const std::string& meta, std::size_t row, std::size_t col) const {
  const auto& [first, shape] = metas_.at(meta);
  return first + static_cast<int>(row * shape.second + col);
}

Matrix Evaluator::metaValue(const std::string& meta, const std::vector<bool>& values) const {
  Matrix m(rows(meta), cols(meta));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      auto v = static_cast<std::size_t>(variable(meta, r, c));
      m.set(r, c, v < values.size() && values[v]);
    }
  return m;
}

std::string Evaluator::describe(const std::vector<bool>& values) const {
  std::string s = "universe of " + std::to_string(prog_.universe());
  for (const auto& [name, info] : metas_) s += "; ?" + name + " = " + metaValue(name, values).str();
  return s;
}

CheckResult proveLaw(const fa::Fact& law, const std::map<std::string, MetaShape>& shapes, const CheckOptions& opt) {
  CheckResult res;
  for (int n = std::max(1, opt.minUniverse); n <= opt.bound; ++n) {
    Evaluator ev({law}, shapes, n);
    int t = ev.truth();
    int vars = ev.variables();
    std::uint64_t covered = vars >= 64 ? UINT64_MAX : std::uint64_t{1} << vars;
    res.models = covered > UINT64_MAX - res.models ? UINT64_MAX : res.models + covered;
    if (t != Bdd::True) {
      std::vector<bool> values(static_cast<std::size_t>(vars), false);
      ev.bdd().satisfy(ev.bdd().neg(t), values);
      res.verdict = Verdict::Fail;
      res.counterexample = ev.describe(values);
      return res;
    }
  }
  return res;
}

}  // namespace alloyfa::oracle::symbolic
