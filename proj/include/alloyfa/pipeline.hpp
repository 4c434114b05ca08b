#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "alloyfa/alloy.hpp"
#include "alloyfa/check.hpp"
#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"
#include "alloyfa/term.hpp"

// Source text to FA: parse, desugar, declaration facts, expansion and
// variable elimination, for every fact and assertion of a model.
namespace alloyfa::pipeline {

enum class Mode { Alloy, RlDirect };

struct Options {
  Mode mode = Mode::Alloy;
  bool heuristics = true;
  long budget = 10000;
  bool record = true;  // keep rewriting traces
};

struct Translated {
  std::string name;
  alloy::FormP source;  // desugared core formula
  rl::Formula formula;  // its expansion
  fa::Fact fact;
  std::vector<Step> trace;
  long steps = 0;
};

struct Result {
  alloy::Model model;  // desugared
  alloy::SymbolTable symbols;
  std::vector<fa::Fact> declarations;
  std::vector<Translated> facts;       // Alloy `fact` blocks
  std::vector<Translated> assertions;

  // Declarations and translated fact blocks.
  std::vector<fa::Fact> hypotheses() const;
};

// Throws alloy::AlloyError on parse and arity errors, strategy::BudgetExceeded
// and rl2fa::NonConvergence when a translation does not finish.
Result run(std::string_view source, const Options& opt = {});
Translated translate(const std::string& name, const alloy::FormP& core, const Options& opt = {});

// The fact against the formula it came from, on every model of the
// declarations up to the bound.
oracle::CheckResult checkTranslation(const Result& r, const Translated& t, const oracle::CheckOptions& opt);
// The hypotheses entail the assertion's fact.
oracle::CheckResult checkGoal(const Result& r, const Translated& t, const oracle::CheckOptions& opt);

}  // namespace alloyfa::pipeline
