#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "alloyfa/alloy.hpp"
#include "alloyfa/fa.hpp"
#include "alloyfa/fa_eval.hpp"
#include "alloyfa/model.hpp"
#include "alloyfa/rl.hpp"

namespace alloyfa::oracle {

enum class Verdict { Pass, Fail, Sampled };
const char* toString(Verdict v);

struct CheckOptions {
  int bound = 3;
  int minUniverse = 1;
  std::uint64_t exhaustiveCap = 200000;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0x5eed;
};

struct CheckResult {
  Verdict verdict = Verdict::Pass;
  std::uint64_t models = 0;
  std::string counterexample;  // model description on Fail
  bool ok() const { return verdict != Verdict::Fail; }
};

// A property of a model; built per universe size so compiled checkers can
// be reused across the models of that size.
using Property = std::function<bool(const FiniteModel&)>;
using PropertyFactory = std::function<Property(int universe)>;

// Checks prop on every model up to the bound (or a sample of sizes whose
// model count exceeds the cap, reported as Sampled).
CheckResult checkAll(const Vocabulary& v, const PropertyFactory& prop, const CheckOptions& opt);

PropertyFactory alloyProperty(const alloy::FormP& f);
PropertyFactory rlProperty(const rl::Formula& f);
PropertyFactory faProperty(const fa::Fact& f);
// Conjunction of several facts.
PropertyFactory faProperty(const std::vector<fa::Fact>& fs);

// a ⟺ b on every model.
CheckResult checkEquiv(const Vocabulary& v, const PropertyFactory& a, const PropertyFactory& b,
                       const CheckOptions& opt);
// hyps ⟹ goal on every model.
CheckResult checkEntails(const Vocabulary& v, const PropertyFactory& hyps, const PropertyFactory& goal,
                         const CheckOptions& opt);

// Shape of a pattern variable: a right-nested tuple of `out` atoms related
// to one of `in` atoms. Variables without a shape get whatever the law forces,
// with free positions read as atoms.
struct MetaShape {
  int out = 1;
  int in = 1;
};

// Adds both sides of a law to a fresh program, unifies their shapes and the
// given variable shapes, and finishes it. Returns the two handles.
std::pair<int, int> compileLaw(Program& p, const fa::Fact& law, const std::map<std::string, MetaShape>& shapes);
// Several laws sharing their pattern variables.
std::vector<std::pair<int, int>> compileLaws(Program& p, const std::vector<fa::Fact>& laws,
                                             const std::map<std::string, MetaShape>& shapes);

// Checks a law over pattern variables (fa::meta) on universes up to the
// bound. Every assignment of the variables is tried when there are at most
// exhaustiveCap of them, otherwise `samples` seeded ones.
CheckResult checkLaw(const fa::Fact& law, const std::map<std::string, MetaShape>& shapes, const CheckOptions& opt);

// Vocabulary of generated formulas: sig A { r : set B, s : set A,
// t : B -> A }, sig B, sig C extends A.
alloy::Model genVocabulary();

struct GenOptions {
  int maxDepth = 3;
  int maxQuantifiers = 2;
  int exprDepth = 2;
};

// Deterministic random closed core formula over genVocabulary(), arity
// annotated.
alloy::FormP genFormula(std::uint64_t seed, const GenOptions& opt = {});

}  // namespace alloyfa::oracle
