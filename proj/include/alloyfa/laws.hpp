#pragma once

#include <map>
#include <string>
#include <vector>

#include "alloyfa/check.hpp"
#include "alloyfa/fa.hpp"

// Equational theory handed to the prover, and the typed n-ary laws the
// translation relies on. Pattern variables are fa::meta terms.
namespace alloyfa::laws {

enum class Group {
  RelationAlgebra,  // Boolean algebra, composition, converse
  Fork,             // the closure fork algebra axioms
  Definition,       // π₁, π₂, ×, \, / in terms of the primitives
  Lemma,            // derived simplification equations
  Nary,             // n-ary composition, rotation, projections (typed)
};

const char* toString(Group g);

struct Law {
  std::string name;
  Group group;
  fa::Fact fact;
  // Shapes under which the law is checked; empty means all atoms.
  std::map<std::string, oracle::MetaShape> shapes;
};

// Axioms, definitions and lemmas valid for arbitrary elements of a fork
// algebra. This is what the prover input contains.
std::vector<Law> library();

// Laws of •ⁿ, rotate and Xⁿᵢ for relations of arity up to maxArity. They only
// hold for tuple-shaped relations, so they are checked but never emitted.
std::vector<Law> naryLaws(int maxArity = 4);

}  // namespace alloyfa::laws
