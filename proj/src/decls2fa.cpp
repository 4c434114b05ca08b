#include "alloyfa/decls2fa.hpp"

namespace alloyfa::decls2fa {

using alloy::Mult;

namespace {

std::vector<fa::Expr> corefs(const std::vector<std::string>& names) {
  std::vector<fa::Expr> out;
  for (const auto& n : names) out.push_back(fa::coref(n));
  return out;
}

bool hasLone(Mult m) { return m == Mult::Lone || m == Mult::One; }
bool hasSome(Mult m) { return m == Mult::Some || m == Mult::One; }

fa::Expr flip(const fa::Expr& e) { return e->op == fa::Op::Conv ? e->lhs : fa::conv(e); }

}  // namespace

std::vector<fa::Fact> sigFacts(const alloy::SymbolTable& t) {
  std::vector<fa::Fact> cover, hier, disj, abs;
  auto top = t.topLevel();
  if (!top.empty()) cover.push_back(fa::equation(fa::id(), fa::uniAll(corefs(top)), "top-cover"));
  for (const auto& s : t.sigs) {
    if (s.children.empty()) continue;
    auto kids = corefs(s.children);
    hier.push_back(fa::inclusion(fa::uniAll(kids), fa::coref(s.name), "hierarchy"));
    for (std::size_t a = 0; a < kids.size(); ++a)
      for (std::size_t b = a + 1; b < kids.size(); ++b)
        disj.push_back(fa::equation(fa::inter(kids[a], kids[b]), fa::bot(), "disjointness"));
    if (s.abstract) abs.push_back(fa::equation(fa::coref(s.name), fa::uniAll(kids), "abstract-cover"));
  }
  std::vector<fa::Fact> out = cover;
  out.insert(out.end(), hier.begin(), hier.end());
  out.insert(out.end(), disj.begin(), disj.end());
  out.insert(out.end(), abs.begin(), abs.end());
  return out;
}

fa::Fact typingFact(const alloy::RelSym& r) {
  if (r.arity() < 2) throw fa::ArityError("unary relation " + r.name + " has no typing fact");
  std::vector<std::string> rest(r.columns.begin() + 1, r.columns.end());
  auto range = fa::compAll({fa::coref(r.columns.front()), fa::top(), fa::prodAll(corefs(rest))});
  return fa::inclusion(fa::rel(r.name, r.arity()), range, "typing");
}

std::vector<fa::Fact> sigMultFacts(const std::string& sig, Mult m) {
  std::vector<fa::Fact> out;
  auto phi = fa::coref(sig);
  if (hasSome(m))
    out.push_back(fa::inclusion(fa::top(), fa::compAll({fa::top(), phi, fa::top()}), "multiplicity"));
  if (hasLone(m))
    out.push_back(fa::inclusion(fa::compAll({phi, fa::top(), phi}), fa::id(), "multiplicity"));
  return out;
}

fa::Expr columnView(const std::string& rel, int arity, int column) {
  if (arity < 2 || column < 1 || column > arity)
    throw fa::ArityError("column " + std::to_string(column) + " of a relation of arity " + std::to_string(arity));
  return fa::rotateN(fa::rel(rel, arity), (arity - column + 1) % arity);
}

std::vector<fa::Fact> columnMultFacts(const std::string& rel, int arity, int column, Mult m) {
  std::vector<fa::Fact> out;
  if (!hasLone(m) && !hasSome(m)) return out;
  // v has column i as output; lone: v·v° ⊆ id, some: id ⊆ v°·v.
  auto v = columnView(rel, arity, column);
  if (hasSome(m)) out.push_back(fa::inclusion(fa::id(), fa::comp(flip(v), v), "multiplicity"));
  if (hasLone(m)) out.push_back(fa::inclusion(fa::comp(v, flip(v)), fa::id(), "multiplicity"));
  return out;
}

std::vector<fa::Fact> relMultFacts(const alloy::RelSym& r) {
  std::vector<fa::Fact> out;
  for (std::size_t i = 0; i < r.mults.size(); ++i) {
    auto fs = columnMultFacts(r.name, r.arity(), static_cast<int>(i) + 1, r.mults[i]);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<fa::Fact> declFacts(const alloy::SymbolTable& t) {
  std::vector<fa::Fact> out;
  if (!t.sortsAreUniverse) out = sigFacts(t);
  for (const auto& r : t.rels)
    if (r.arity() >= 2 && !t.sortsAreUniverse) out.push_back(typingFact(r));
  for (const auto& s : t.sigs) {
    auto fs = sigMultFacts(s.name, s.mult);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  for (const auto& r : t.rels) {
    auto fs = relMultFacts(r);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

}  // namespace alloyfa::decls2fa
