#pragma once

#include <vector>

#include "alloyfa/alloy.hpp"
#include "alloyfa/fa.hpp"

// Facts induced by signature and field declarations. Every fact carries one
// of the labels top-cover, hierarchy, disjointness, abstract-cover, typing or
// multiplicity.
namespace alloyfa::decls2fa {

// top-cover, then one hierarchy fact per parent, pairwise sibling
// disjointness and covers of abstract parents. Top-level signatures are not
// made disjoint.
std::vector<fa::Fact> sigFacts(const alloy::SymbolTable& t);

// R ⊆ Φ_A1·⊤·(Φ_A2 × … × Φ_An). Throws fa::ArityError for unary relations.
fa::Fact typingFact(const alloy::RelSym& r);

// some: ⊤ ⊆ ⊤·Φ_A·⊤; lone: Φ_A·⊤·Φ_A ⊆ id; one: both; otherwise nothing.
std::vector<fa::Fact> sigMultFacts(const std::string& sig, alloy::Mult m);

// The relation as a term whose output is column `column` (1-based) and whose
// input is the right-nested tuple of the remaining columns in cyclic order.
fa::Expr columnView(const std::string& rel, int arity, int column);

// Multiplicity `m` on column `column` (1-based) of an n-ary relation, with
// V = columnView(R, n, column): lone → V·V° ⊆ id, some → id ⊆ V°·V. For a
// binary relation and the last column these are R°·R ⊆ id and id ⊆ R·R°.
std::vector<fa::Fact> columnMultFacts(const std::string& rel, int arity, int column, alloy::Mult m);

// Multiplicity facts for every annotated column of r.
std::vector<fa::Fact> relMultFacts(const alloy::RelSym& r);

// Everything, in the order top-cover, hierarchy, disjointness,
// abstract-cover, typing, multiplicity. Relations over univ (rl-direct input)
// get no typing fact.
std::vector<fa::Fact> declFacts(const alloy::SymbolTable& t);

}  // namespace alloyfa::decls2fa
