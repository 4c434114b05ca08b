#pragma once

#include <string>
#include <variant>
#include <vector>

#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"
#include "alloyfa/strategy.hpp"

// The term type rewritten by the translation: RL formulas whose applications
// carry FA terms, FA terms themselves, and FA facts.
namespace alloyfa {

using Term = std::variant<rl::Formula, fa::Expr, fa::Fact>;

struct TermTraits {
  static std::vector<Term> children(const Term& t);
  static Term withChild(const Term& t, std::size_t i, Term child);
  static strategy::Context childContext(const Term& t, std::size_t i, strategy::Context c);
  static bool equal(const Term& a, const Term& b);
};

std::string toString(const Term& t);

using Engine = strategy::Engine<Term, TermTraits>;
using Rule = Engine::Rule;
using Strategy = Engine::Strategy;
using Step = Engine::Step;

inline const rl::Formula* asFormula(const Term& t) { return std::get_if<rl::Formula>(&t); }
inline const fa::Expr* asExpr(const Term& t) { return std::get_if<fa::Expr>(&t); }
inline const fa::Fact* asFact(const Term& t) { return std::get_if<fa::Fact>(&t); }

}  // namespace alloyfa
