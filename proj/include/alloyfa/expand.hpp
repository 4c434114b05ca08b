#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alloyfa/alloy.hpp"
#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"

// Alloy core formulas to relational logic: memberships are expanded
// structurally, and reflexive-transitive closures become applications of a
// starred fork-algebra term.
namespace alloyfa::expand {

// Alloy variable name to level, innermost last.
using Env = std::vector<std::pair<std::string, int>>;

// Expands a closed core formula (after frontend::desugar).
rl::Formula formula(const alloy::FormP& f);
rl::Formula formula(const alloy::FormP& f, const Env& env, int depth);

// ⟦xs ∈ e⟧ with `depth` levels already bound.
rl::Formula membership(const rl::Tuple& xs, const alloy::ExprP& e, const Env& env, int depth);

// A closed binary or unary expression as a single term (coreflexive for
// unary ones), when it is built from names with operators that have a direct
// counterpart. Returns null otherwise.
fa::Expr directTerm(const alloy::ExprP& e);

// Coreflexive over the shape of a context tuple v that holds exactly when
// (cols[0](v), ..., cols[m-1](v)) ∈ e. A column term c relates the column
// value to v (a c v); env maps free Alloy variables to such terms too.
using TermEnv = std::vector<std::pair<std::string, fa::Expr>>;
fa::Expr test(const alloy::ExprP& e, const std::vector<fa::Expr>& cols, const TermEnv& env);

// The lifted step of *e for free variables `vars`: relates (a⃗,u) to
// (a⃗,u') when (u,u') ∈ e under a⃗.
fa::Expr liftedStep(const alloy::ExprP& e, const std::vector<std::string>& vars);

// The lifting rule for closure bodies: an application aᵢ R aⱼ between two
// members of xs becomes (xs,u) (Xᵢ°·R·Xⱼ) (xs,w), with X over |xs|+1
// components. Null when a side is not a single member of xs.
rl::Formula uniformStar(const rl::Formula& app, const rl::Tuple& xs, rl::Var u, rl::Var w);

}  // namespace alloyfa::expand
