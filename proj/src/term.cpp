#include "alloyfa/term.hpp"

#include <memory>
#include <stdexcept>

namespace alloyfa {

namespace {

std::vector<rl::Formula> formulaKids(const rl::Formula& f) {
  switch (f->op) {
    case rl::Op::Not: return {f->a};
    case rl::Op::And:
    case rl::Op::Or:
    case rl::Op::Implies: return {f->a, f->b};
    case rl::Op::Forall:
    case rl::Op::Exists:
      if (f->range) return {f->range, f->a};
      return {f->a};
    default: return {};
  }
}

}  // namespace

std::vector<Term> TermTraits::children(const Term& t) {
  std::vector<Term> out;
  if (auto f = asFormula(t)) {
    if ((*f)->op == rl::Op::App) {
      out.emplace_back((*f)->rel);
    } else {
      for (auto& k : formulaKids(*f)) out.emplace_back(k);
    }
  } else if (auto e = asExpr(t)) {
    if ((*e)->lhs) out.emplace_back((*e)->lhs);
    if ((*e)->rhs) out.emplace_back((*e)->rhs);
  } else if (auto fact = asFact(t)) {
    out.emplace_back(fact->lhs);
    out.emplace_back(fact->rhs);
  }
  return out;
}

Term TermTraits::withChild(const Term& t, std::size_t i, Term child) {
  if (auto f = asFormula(t)) {
    const auto& n = **f;
    if (n.op == rl::Op::App) return rl::withRel(*f, std::get<fa::Expr>(child));
    auto c = std::get<rl::Formula>(std::move(child));
    switch (n.op) {
      case rl::Op::Not: return rl::withChildren(*f, c, nullptr, nullptr);
      case rl::Op::And:
      case rl::Op::Or:
      case rl::Op::Implies:
        return i == 0 ? rl::withChildren(*f, c, n.b, nullptr) : rl::withChildren(*f, n.a, c, nullptr);
      default:
        if (n.range && i == 0) return rl::withChildren(*f, n.a, nullptr, c);
        return rl::withChildren(*f, c, nullptr, n.range);
    }
  }
  if (auto e = asExpr(t)) {
    auto n = std::make_shared<fa::Node>(**e);
    auto c = std::get<fa::Expr>(std::move(child));
    if (i == 0 && n->lhs)
      n->lhs = c;
    else
      n->rhs = c;
    return fa::Expr(n);
  }
  auto fact = std::get<fa::Fact>(t);
  (i == 0 ? fact.lhs : fact.rhs) = std::get<fa::Expr>(std::move(child));
  return fact;
}

strategy::Context TermTraits::childContext(const Term& t, std::size_t, strategy::Context c) {
  if (auto f = asFormula(t)) {
    const auto& n = **f;
    if (n.op == rl::Op::Forall || n.op == rl::Op::Exists) {
      if (n.special)
        c.special = true;
      else
        c.depth += n.count;
    }
  }
  return c;
}

bool TermTraits::equal(const Term& a, const Term& b) {
  if (a.index() != b.index()) return false;
  if (auto f = asFormula(a)) return rl::equal(*f, std::get<rl::Formula>(b));
  if (auto e = asExpr(a)) return fa::equal(*e, std::get<fa::Expr>(b));
  return fa::equal(std::get<fa::Fact>(a), std::get<fa::Fact>(b));
}

std::string toString(const Term& t) {
  if (auto f = asFormula(t)) return rl::toString(*f);
  if (auto e = asExpr(t)) return fa::toString(*e);
  return fa::toString(std::get<fa::Fact>(t));
}

}  // namespace alloyfa
