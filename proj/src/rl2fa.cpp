#include "alloyfa/rl2fa.hpp"

namespace alloyfa::rl2fa {

using rl::Op;
using strategy::Context;

namespace {

using Out = std::optional<Term>;

const rl::Node* node(const Term& t) {
  auto f = asFormula(t);
  return f ? f->get() : nullptr;
}

bool boundOnly(const rl::Tuple& t) {
  for (const auto& v : t)
    if (v.kind != rl::Var::Kind::Bound) return false;
  return true;
}

rl::Tuple uniformRhs(int n) { return n == 0 ? rl::Tuple{rl::vy()} : rl::levels(1, n); }

bool isUniform(const rl::Node* f, int n) {
  return f && f->op == Op::App && f->lhs == rl::Tuple{rl::vx()} && f->rhs == uniformRhs(n);
}

bool sameSides(const rl::Node* a, const rl::Node* b) {
  return a->op == Op::App && b->op == Op::App && a->lhs == b->lhs && a->rhs == b->rhs;
}

// Merges the first pair of applications with equal sides in a ∧/∨ spine.
Out mergeSpine(const Term& t, Op op) {
  auto n = node(t);
  if (!n || n->op != op) return std::nullopt;
  std::vector<rl::Formula> parts;
  rl::spine(*asFormula(t), op, parts);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!sameSides(parts[i].get(), parts[j].get())) continue;
      auto rel = op == Op::And ? fa::inter(parts[i]->rel, parts[j]->rel) : fa::uni(parts[i]->rel, parts[j]->rel);
      parts[i] = rl::app(parts[i]->lhs, rel, parts[i]->rhs);
      parts.erase(parts.begin() + static_cast<long>(j));
      return Term(rl::rebuild(op, parts));
    }
  return std::nullopt;
}

}  // namespace

fa::Expr select(int n, int i) { return n <= 2 ? fa::projX(n, i) : fa::projNode(n, i); }

fa::Expr selectTuple(int n, const rl::Tuple& t) {
  std::vector<fa::Expr> parts;
  for (const auto& v : t) parts.push_back(select(n, v.level));
  return fa::forkAll(parts);
}

Rule implicationRule() {
  return {"(1) implication", [](const Term& t, const Context&) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::Implies) return std::nullopt;
            return Term(rl::or_(rl::not_(f->a), f->b));
          }};
}

Rule universalRule() {
  return {"(2) universal", [](const Term& t, const Context&) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::Forall || f->special || f->range) return std::nullopt;
            return Term(rl::not_(rl::exists(f->count, nullptr, rl::not_(f->a))));
          }};
}

Rule rangeRule() {
  return {"(3) range", [](const Term& t, const Context&) -> Out {
            auto f = node(t);
            if (!f || (f->op != Op::Forall && f->op != Op::Exists) || !f->range) return std::nullopt;
            bool trivial = f->range->op == Op::True;
            if (f->op == Op::Forall)
              return Term(rl::forall(f->count, nullptr, trivial ? f->a : rl::implies(f->range, f->a)));
            return Term(rl::exists(f->count, nullptr, trivial ? f->a : rl::and_(f->range, f->a)));
          }};
}

Rule insertVarsRule() {
  return {"insertVars", [](const Term& t, const Context&) -> Out {
            auto f = asFormula(t);
            if (!f) return std::nullopt;
            return Term(rl::forallXY(*f));
          }};
}

Rule uniformRule() {
  return {"uniform", [](const Term& t, const Context& c) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::App || !c.special || c.depth < 1) return std::nullopt;
            if (!boundOnly(f->lhs) || !boundOnly(f->rhs)) return std::nullopt;
            int n = c.depth;
            auto rel = fa::comp(fa::top(), fa::inter(selectTuple(n, f->lhs), fa::comp(f->rel, selectTuple(n, f->rhs))));
            return Term(rl::app({rl::vx()}, rel, rl::levels(1, n)));
          }};
}

Rule uniformConstRule() {
  return {"uniform-const", [](const Term& t, const Context& c) -> Out {
            auto f = node(t);
            if (!f || (f->op != Op::True && f->op != Op::False) || !c.special) return std::nullopt;
            return Term(rl::app({rl::vx()}, f->op == Op::True ? fa::top() : fa::bot(), uniformRhs(c.depth)));
          }};
}

Rule aggregateAndRule() {
  return {"(4) aggregate ∧", [](const Term& t, const Context&) { return mergeSpine(t, Op::And); }};
}

Rule aggregateOrRule() {
  return {"(5) aggregate ∨", [](const Term& t, const Context&) { return mergeSpine(t, Op::Or); }};
}

Rule aggregateNotRule() {
  return {"(6) aggregate ¬", [](const Term& t, const Context&) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::Not || f->a->op != Op::App) return std::nullopt;
            return Term(rl::app(f->a->lhs, fa::compl_(f->a->rel), f->a->rhs));
          }};
}

Rule dropExistsRule() {
  return {"(7-8) dropExists", [](const Term& t, const Context& c) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::Exists || f->range) return std::nullopt;
            int n = c.depth + f->count;
            if (!isUniform(f->a.get(), n)) return std::nullopt;
            if (n == 1) return Term(rl::app({rl::vx()}, fa::comp(f->a->rel, fa::top()), {rl::vy()}));
            auto body = rl::app({rl::vx()}, fa::comp(f->a->rel, fa::cut(n)), rl::levels(1, n - 1));
            if (f->count == 1) return Term(body);
            return Term(rl::exists(f->count - 1, nullptr, body));
          }};
}

Rule dropVarsRule() {
  return {"dropVars", [](const Term& t, const Context&) -> Out {
            auto f = node(t);
            if (!f || f->op != Op::Forall || !f->special || !isUniform(f->a.get(), 0)) return std::nullopt;
            return Term(fa::equation(f->a->rel, fa::top()));
          }};
}

std::vector<Rule> registry() {
  return {implicationRule(), universalRule(),    rangeRule(),       insertVarsRule(),
          uniformRule(),     uniformConstRule(), aggregateAndRule(), aggregateOrRule(),
          aggregateNotRule(), dropExistsRule(),  dropVarsRule()};
}

Strategy normalize() {
  return Engine::many(Engine::once(Engine::rules({rangeRule(), implicationRule(), universalRule()})));
}

Strategy aggregate() { return Engine::rules({aggregateAndRule(), aggregateOrRule(), aggregateNotRule()}); }

namespace {

Strategy uniformAny() { return Engine::rules({uniformConstRule(), uniformRule()}); }

}  // namespace

Strategy shorten() {
  return Engine::seq(Engine::seq(Engine::many(Engine::once(uniformAny())), Engine::many(Engine::once(aggregate()))),
                     Engine::once(Engine::rule(dropExistsRule())));
}

Strategy translateStrategy() {
  // Besides full shorten cycles, lone uniform/aggregate steps let the
  // quantifier-free remainder under ∀𝐱,𝐲 reach dropVars.
  auto loop = Engine::choice({Engine::rule(dropVarsRule()), shorten(), Engine::once(aggregate()),
                              Engine::once(uniformAny())});
  return Engine::seq(Engine::seq(normalize(), Engine::rule(insertVarsRule())), Engine::many(loop));
}

Result translate(const rl::Formula& f, long budget, bool record) {
  Engine e(budget, record);
  auto r = e.run(translateStrategy(), Term(f));
  if (!r || !asFact(*r)) throw NonConvergence("translation stopped at " + (r ? toString(*r) : std::string("failure")));
  return {*asFact(*r), e.trace(), e.steps()};
}

}  // namespace alloyfa::rl2fa
