#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alloyfa/alloy.hpp"
#include "alloyfa/fa_eval.hpp"
#include "alloyfa/model.hpp"
#include "alloyfa/rl.hpp"

namespace alloyfa::oracle {

// Signatures and relations of a symbol table, in declaration order.
Vocabulary vocabularyOf(const alloy::SymbolTable& st);

using AlloyEnv = std::vector<std::pair<std::string, int>>;

// Set-of-tuples semantics of the full supported subset (predicate calls must
// be inlined first). Closures range over all atoms.
TupleSet evalAlloy(const alloy::ExprP& e, const FiniteModel& m, const AlloyEnv& env = {});
bool holdsAlloy(const alloy::FormP& f, const FiniteModel& m, const AlloyEnv& env = {});

// Compiled relational-logic formula. The special variables 𝐱 and 𝐲 get the
// shapes their applications demand and range over those carriers.
class RLChecker {
 public:
  RLChecker(const rl::Formula& f, int universe);
  bool holds(const FiniteModel& m);
  // Truth under explicit values for the free levels (atoms, outermost first).
  bool holds(const FiniteModel& m, const std::vector<int>& free);

 private:
  bool eval(const rl::Node* f, int depth);
  std::size_t index(const rl::Tuple& t) const;
  void compile(const rl::Formula& f);

  rl::Formula f_;
  Program prog_;
  int tx_, ty_;
  std::size_t nx_ = 1, ny_ = 1;
  std::unordered_map<const rl::Node*, int> apps_;
  std::vector<int> vals_;
  std::size_t x_ = 0, y_ = 0;
};

bool holdsRL(const rl::Formula& f, const FiniteModel& m);

}  // namespace alloyfa::oracle
