#pragma once

#include <stdexcept>
#include <vector>

#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"
#include "alloyfa/term.hpp"

// Variable elimination: RL formulas to a single FA equation.
namespace alloyfa::rl2fa {

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Xⁿᵢ, with π₁/π₂ for n = 2 and id for n = 1.
fa::Expr select(int n, int i);
// Fork of selections for the components of a tuple of levels ≤ n.
fa::Expr selectTuple(int n, const rl::Tuple& t);

Rule implicationRule();  // φ ⇒ ψ  ~>  ¬φ ∨ ψ
Rule universalRule();    // ⟨∀ k :: φ⟩  ~>  ¬⟨∃ k :: ¬φ⟩
Rule rangeRule();        // ranges into the body (⇒ for ∀, ∧ for ∃); true ranges vanish
Rule insertVarsRule();   // φ  ~>  ⟨∀𝐱,𝐲 :: φ⟩
Rule uniformRule();      // u R v  ~>  𝐱 (⊤·(F(u) ∩ R·F(v))) (1,…,n)
Rule uniformConstRule(); // true/false  ~>  𝐱 ⊤ (1,…,n) / 𝐱 ⊥ (1,…,n)
Rule aggregateAndRule(); // u R v ∧ u S v  ~>  u (R∩S) v
Rule aggregateOrRule();  // u R v ∨ u S v  ~>  u (R∪S) v
Rule aggregateNotRule(); // ¬(u R v)  ~>  u R̄ v
Rule dropExistsRule();   // ⟨∃ :: 𝐱 R (1,…,n)⟩  ~>  𝐱 (R·cut) (1,…,n-1), or 𝐱 (R·⊤) 𝐲
Rule dropVarsRule();     // ⟨∀𝐱,𝐲 :: 𝐱 R 𝐲⟩  ~>  R = ⊤

// Every rule above, for trace replay.
std::vector<Rule> registry();

Strategy normalize();
Strategy aggregate();
Strategy shorten();
Strategy translateStrategy();

struct Result {
  fa::Fact fact;
  std::vector<Step> trace;
  long steps = 0;
};

// normalize ▷ insertVars ▷ many(dropVars ⊘ shorten). Throws
// strategy::BudgetExceeded or NonConvergence.
Result translate(const rl::Formula& f, long budget = 10000, bool record = true);

}  // namespace alloyfa::rl2fa
