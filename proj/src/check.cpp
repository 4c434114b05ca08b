#include "alloyfa/check.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "alloyfa/fa_eval.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/semantics.hpp"

namespace alloyfa::oracle {

const char* toString(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "SAMPLED";
  }
}

CheckResult checkAll(const Vocabulary& v, const PropertyFactory& prop, const CheckOptions& opt) {
  CheckResult res;
  for (int n = opt.minUniverse; n <= opt.bound && res.verdict != Verdict::Fail; ++n) {
    EnumOptions eo;
    eo.minUniverse = eo.maxUniverse = n;
    eo.exhaustiveCap = opt.exhaustiveCap;
    eo.samples = opt.samples;
    eo.seed = opt.seed + static_cast<std::uint64_t>(n);
    Property p = prop(n);
    auto st = enumerateModels(v, eo, [&](const FiniteModel& m) {
      if (p(m)) return true;
      res.verdict = Verdict::Fail;
      res.counterexample = m.describe();
      return false;
    });
    res.models += st.models;
    if (!st.exhaustive && res.verdict == Verdict::Pass) res.verdict = Verdict::Sampled;
  }
  return res;
}

PropertyFactory alloyProperty(const alloy::FormP& f) {
  return [f](int) { return [f](const FiniteModel& m) { return holdsAlloy(f, m); }; };
}

PropertyFactory rlProperty(const rl::Formula& f) {
  return [f](int n) {
    auto c = std::make_shared<RLChecker>(f, n);
    return [c](const FiniteModel& m) { return c->holds(m); };
  };
}

PropertyFactory faProperty(const fa::Fact& f) { return faProperty(std::vector<fa::Fact>{f}); }

PropertyFactory faProperty(const std::vector<fa::Fact>& fs) {
  return [fs](int n) {
    auto cs = std::make_shared<std::vector<std::unique_ptr<FactChecker>>>();
    for (const auto& f : fs) cs->push_back(std::make_unique<FactChecker>(f, n));
    return [cs](const FiniteModel& m) {
      for (auto& c : *cs)
        if (!c->holds(m)) return false;
      return true;
    };
  };
}

CheckResult checkEquiv(const Vocabulary& v, const PropertyFactory& a, const PropertyFactory& b,
                       const CheckOptions& opt) {
  return checkAll(
      v,
      [&](int n) {
        Property pa = a(n), pb = b(n);
        return [pa, pb](const FiniteModel& m) { return pa(m) == pb(m); };
      },
      opt);
}

CheckResult checkEntails(const Vocabulary& v, const PropertyFactory& hyps, const PropertyFactory& goal,
                         const CheckOptions& opt) {
  return checkAll(
      v,
      [&](int n) {
        Property ph = hyps(n), pg = goal(n);
        return [ph, pg](const FiniteModel& m) { return !ph(m) || pg(m); };
      },
      opt);
}

std::vector<std::pair<int, int>> compileLaws(Program& p, const std::vector<fa::Fact>& laws,
                                             const std::map<std::string, MetaShape>& shapes) {
  std::vector<std::pair<int, int>> out;
  auto& tt = p.types();
  for (const auto& law : laws) {
    int l = p.add(law.lhs), r = p.add(law.rhs);
    tt.unify(p.outType(l), p.outType(r));
    tt.unify(p.inType(l), p.inType(r));
    out.emplace_back(l, r);
  }
  auto tuple = [&](int k) {
    std::vector<int> c;
    for (int j = 0; j < k; ++j) c.push_back(tt.atom());
    return tt.tuple(c);
  };
  for (const auto& [name, sh] : shapes) {
    auto [o, i] = p.metaTypes(name);
    tt.unify(o, tuple(sh.out));
    tt.unify(i, tuple(sh.in));
  }
  p.finish();
  return out;
}

std::pair<int, int> compileLaw(Program& p, const fa::Fact& law, const std::map<std::string, MetaShape>& shapes) {
  return compileLaws(p, {law}, shapes).front();
}

CheckResult checkLaw(const fa::Fact& law, const std::map<std::string, MetaShape>& shapes, const CheckOptions& opt) {
  CheckResult res;
  static const Vocabulary empty;
  for (int n = std::max(1, opt.minUniverse); n <= opt.bound && res.verdict != Verdict::Fail; ++n) {
    Program p(n);
    auto [l, r] = compileLaw(p, law, shapes);
    auto names = p.metaNames();
    std::vector<Matrix> vals;
    std::size_t bits = 0;
    for (const auto& m : names) {
      auto [o, i] = p.metaTypes(m);
      vals.emplace_back(p.carrier(o), p.carrier(i));
      bits += p.carrier(o) * p.carrier(i);
    }
    FiniteModel model;
    model.universe = n;
    model.vocab = &empty;
    bool exhaustive = bits < 63 && (std::uint64_t{1} << bits) <= opt.exhaustiveCap;
    std::uint64_t total = exhaustive ? std::uint64_t{1} << bits : opt.samples;
    std::uint64_t st = opt.seed + static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 0; k < total; ++k) {
      // Bit b of the assignment goes to the b-th cell, variables in name order.
      std::uint64_t word = k, left = 0;
      for (auto& v : vals) {
        for (std::size_t row = 0; row < v.rows(); ++row)
          for (std::size_t col = 0; col < v.cols(); ++col) {
            if (!exhaustive && left == 0) {
              word = nextRandom(st);
              left = 64;
            }
            v.set(row, col, word & 1U);
            word >>= 1;
            if (!exhaustive) --left;
          }
      }
      for (std::size_t j = 0; j < names.size(); ++j) p.setMeta(names[j], vals[j]);
      p.eval(model);
      const Matrix& a = p.value(l);
      const Matrix& b = p.value(r);
      ++res.models;
      if (law.kind == fa::Fact::Kind::Eq ? a == b : a.subsetOf(b)) continue;
      res.verdict = Verdict::Fail;
      res.counterexample = "universe of " + std::to_string(n);
      for (std::size_t j = 0; j < names.size(); ++j) res.counterexample += "; ?" + names[j] + " = " + vals[j].str();
      break;
    }
    if (!exhaustive && res.verdict == Verdict::Pass) res.verdict = Verdict::Sampled;
  }
  return res;
}

alloy::Model genVocabulary() {
  return frontend::parse(
      "sig A { r : set B, s : set A, t : B -> A }\n"
      "sig B {}\n"
      "sig C extends A {}\n");
}

namespace {

using alloy::EOp;
using alloy::ExprP;
using alloy::FormP;

struct Generator {
  std::uint64_t st;
  GenOptions opt;
  std::vector<std::string> vars;
  int quantifiers = 0;
  int fresh = 0;

  int pick(int n) { return static_cast<int>(nextRandom(st) % static_cast<std::uint64_t>(n)); }

  ExprP leaf(int arity) {
    if (arity == 1) {
      std::vector<ExprP> opts{alloy::name("A"), alloy::name("B"), alloy::name("C"),
                              alloy::constant(EOp::Univ)};
      for (const auto& v : vars) {
        opts.push_back(alloy::var(v));
        opts.push_back(alloy::var(v));
      }
      if (pick(12) == 0) return alloy::constant(EOp::NoneE);
      return opts[static_cast<std::size_t>(pick(static_cast<int>(opts.size())))];
    }
    if (arity == 2) {
      switch (pick(5)) {
        case 0:
        case 1: return alloy::name("r");
        case 2:
        case 3: return alloy::name("s");
        default: return alloy::constant(EOp::Iden);
      }
    }
    return alloy::name("t");
  }

  ExprP expr(int arity, int d) {
    if (d == 0 || pick(3) == 0) return leaf(arity);
    auto bin = [&](EOp op, ExprP a, ExprP b) { return alloy::binary(op, std::move(a), std::move(b)); };
    int c = pick(8);
    if (c <= 1) {
      EOp op = c == 0 ? EOp::Union : (pick(2) ? EOp::Inter : EOp::Diff);
      return bin(op, expr(arity, d - 1), expr(arity, d - 1));
    }
    if (arity == 1) {
      switch (c) {
        case 2: return bin(EOp::Join, expr(1, d - 1), expr(2, d - 1));
        case 3: return bin(EOp::Join, expr(2, d - 1), expr(1, d - 1));
        case 4: return bin(EOp::Join, expr(1, d - 1), alloy::unary(EOp::Closure, expr(2, d - 1)));
        case 5: return bin(EOp::Join, expr(1, d - 1), bin(EOp::Join, expr(3, 0), expr(1, d - 1)));
        default: return leaf(1);
      }
    }
    if (arity == 2) {
      switch (c) {
        case 2: return alloy::unary(EOp::Transpose, expr(2, d - 1));
        case 3: return bin(EOp::Product, expr(1, d - 1), expr(1, d - 1));
        case 4: return bin(EOp::Join, expr(2, d - 1), expr(2, d - 1));
        case 5: return alloy::unary(EOp::Closure, expr(2, d - 1));
        case 6: return bin(EOp::DomRestr, expr(1, d - 1), expr(2, d - 1));
        default: return pick(2) ? bin(EOp::RanRestr, expr(2, d - 1), expr(1, d - 1))
                                : bin(EOp::Join, expr(1, d - 1), expr(3, 0));
      }
    }
    switch (c) {
      case 2: return bin(EOp::Product, expr(1, d - 1), expr(2, d - 1));
      case 3: return bin(EOp::Product, expr(2, d - 1), expr(1, d - 1));
      case 4: return bin(EOp::DomRestr, expr(1, d - 1), expr(3, d - 1));
      case 5: return bin(EOp::RanRestr, expr(3, d - 1), expr(1, d - 1));
      default: return leaf(3);
    }
  }

  int arity() {
    int a = pick(10);
    return a < 5 ? 1 : a < 9 ? 2 : 3;
  }

  FormP atom() {
    int k = arity();
    if (pick(2)) return alloy::some(expr(k, opt.exprDepth));
    return alloy::in(expr(k, opt.exprDepth), expr(k, opt.exprDepth));
  }

  FormP form(int d) {
    if (d <= 1 || pick(4) == 0) return pick(30) == 0 ? alloy::truth() : atom();
    int c = pick(5);
    if (c == 0) return alloy::not_(form(d - 1));
    if (c <= 2 || quantifiers >= opt.maxQuantifiers) return alloy::and_(form(d - 1), form(d - 1));
    ++quantifiers;
    std::string v = "v" + std::to_string(fresh++);
    auto range = expr(1, 1);
    vars.push_back(v);
    auto body = form(d - 1);
    vars.pop_back();
    return alloy::all(v, range, body);
  }
};

}  // namespace

alloy::FormP genFormula(std::uint64_t seed, const GenOptions& opt) {
  std::uint64_t st = seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL;
  nextRandom(st);
  Generator g{st, opt, {}, 0, 0};
  auto m = genVocabulary();
  m.asserts.push_back({"gen", {}, g.form(opt.maxDepth), {}});
  return frontend::checkArities(m).asserts[0].body;
}

}  // namespace alloyfa::oracle
