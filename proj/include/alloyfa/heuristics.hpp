#pragma once

#include <vector>

#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"
#include "alloyfa/rl2fa.hpp"
#include "alloyfa/term.hpp"

// Simplification rules layered on the raw translation: first-order
// identities, definitions of the derived relational operators read right to
// left, and fork-algebra identities.
namespace alloyfa::heuristics {

// Connective and quantifier identities.
std::vector<Rule> folRules();
// The subset of folRules() that keeps a normalized formula normalized (no ⇒,
// no ranges, no ∀ besides the special block).
std::vector<Rule> folNormalRules();
// Composition, projection, division, one-point and coreflexive absorption.
std::vector<Rule> definitionRules();
// The subset of definitionRules() that never introduces ⇒ or ∀.
std::vector<Rule> definitionNormalRules();
// Identities on FA terms and facts.
std::vector<Rule> faRules();

// ⟨∀ u,v : u P v : u T v⟩ ~> P ⊆ T at the root, and the one-variable form
// ⟨∀ u : u P u : u T u⟩ ~> id ∩ P ⊆ T.
Rule dropVarsRule();

// Every rule used by translate(), including the raw ones.
std::vector<Rule> registry();

// many(once(FOL ⊘ definitions ⊘ FA)).
Strategy simplify();
// Same, restricted to rules that keep normal form.
Strategy simplifyNormal();
// many(once(FA)).
Strategy simplifyFA();

// simplify ▷ (dropVars ⊘ (normalize ▷ insertVars ▷ many(dropVars ⊘ (simplify ▷
// shorten) ⊘ …))) ▷ simplifyFA.
Strategy translateStrategy();

// Throws strategy::BudgetExceeded or rl2fa::NonConvergence.
rl2fa::Result translate(const rl::Formula& f, long budget = 10000, bool record = true);

}  // namespace alloyfa::heuristics
