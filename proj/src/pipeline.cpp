#include "alloyfa/pipeline.hpp"

#include "alloyfa/decls2fa.hpp"
#include "alloyfa/expand.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/heuristics.hpp"
#include "alloyfa/rl2fa.hpp"
#include "alloyfa/semantics.hpp"

namespace alloyfa::pipeline {

std::vector<fa::Fact> Result::hypotheses() const {
  auto out = declarations;
  for (const auto& f : facts) out.push_back(f.fact);
  return out;
}

Translated translate(const std::string& name, const alloy::FormP& core, const Options& opt) {
  Translated t;
  t.name = name;
  t.source = core;
  t.formula = expand::formula(core);
  auto r = opt.heuristics ? heuristics::translate(t.formula, opt.budget, opt.record)
                          : rl2fa::translate(t.formula, opt.budget, opt.record);
  t.fact = r.fact;
  t.fact.label = name;
  t.trace = std::move(r.trace);
  t.steps = r.steps;
  return t;
}

Result run(std::string_view source, const Options& opt) {
  Result r;
  auto parsed = opt.mode == Mode::Alloy ? frontend::parse(source) : frontend::parseRlDirect(source);
  r.model = frontend::desugar(parsed);
  r.symbols = frontend::buildSymbols(r.model);
  r.declarations = decls2fa::declFacts(r.symbols);
  for (std::size_t k = 0; k < r.model.facts.size(); ++k) {
    const auto& f = r.model.facts[k];
    r.facts.push_back(translate(f.name.empty() ? "fact" + std::to_string(k + 1) : f.name, f.body, opt));
  }
  for (std::size_t k = 0; k < r.model.asserts.size(); ++k) {
    const auto& a = r.model.asserts[k];
    r.assertions.push_back(translate(a.name.empty() ? "assertion" + std::to_string(k + 1) : a.name, a.body, opt));
  }
  return r;
}

oracle::CheckResult checkTranslation(const Result& r, const Translated& t, const oracle::CheckOptions& opt) {
  return oracle::checkEquiv(oracle::vocabularyOf(r.symbols), oracle::alloyProperty(t.source),
                            oracle::faProperty(t.fact), opt);
}

oracle::CheckResult checkGoal(const Result& r, const Translated& t, const oracle::CheckOptions& opt) {
  return oracle::checkEntails(oracle::vocabularyOf(r.symbols), oracle::faProperty(r.hypotheses()),
                              oracle::faProperty(t.fact), opt);
}

}  // namespace alloyfa::pipeline
