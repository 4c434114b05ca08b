#include "alloyfa/check.hpp"
#include "alloyfa/expand.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/heuristics.hpp"
#include "alloyfa/semantics.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alloyfa;
using namespace testsupport;
using strategy::Context;

namespace {

rl::Formula app(int a, const char* r, int b) { return rl::app({rl::bv(a)}, fa::rel(r), {rl::bv(b)}); }

rl::Formula benchmark() {
  return rl::forall(1, nullptr, rl::exists(1, nullptr, rl::and_(app(1, "R", 2), app(1, "S", 2))));
}

oracle::PropertyFactory property(const Term& t) {
  if (auto f = asFormula(t)) return oracle::rlProperty(*f);
  return oracle::faProperty(std::get<fa::Fact>(t));
}

// Applies a rule at the root and checks the result against the input.
std::string applyChecked(const Rule& r, const rl::Formula& f, const oracle::Vocabulary& v, int bound = 2) {
  auto out = r.fn(Term(f), Context{});
  if (!out) return "<fail>";
  oracle::CheckOptions opt;
  opt.bound = bound;
  opt.exhaustiveCap = 1u << 20;
  auto res = oracle::checkEquiv(v, oracle::rlProperty(f), property(*out), opt);
  CHECK((res.verdict == oracle::Verdict::Pass));
  if (!res.ok()) MESSAGE(res.counterexample);
  return toString(*out);
}

const Rule& byName(const std::vector<Rule>& rs, const std::string& n) {
  for (const auto& r : rs)
    if (r.name == n) return r;
  throw std::runtime_error("no rule " + n);
}

}  // namespace

TEST_CASE("the benchmark reaches a three-operator inclusion") {
  auto res = heuristics::translate(benchmark());
  CHECK(fa::toString(res.fact) == "id ⊆ R·S°");
  CHECK(fa::countOps(res.fact) <= 3);
  // Under the opposite orientation the same fact reads id ⊆ R°·S.
  auto flipped = heuristics::translate(rl::forall(
      1, nullptr, rl::exists(1, nullptr, rl::and_(app(2, "R", 1), app(2, "S", 1)))));
  CHECK(fa::toString(flipped.fact) == "id ⊆ R°·S");
  auto v = untyped({{"R", 2}, {"S", 2}});
  oracle::CheckOptions opt;
  opt.exhaustiveCap = 1u << 20;
  auto r = oracle::checkEquiv(v, oracle::rlProperty(benchmark()), oracle::faProperty(res.fact), opt);
  CHECK((r.verdict == oracle::Verdict::Pass));
  auto replayed = Engine::replay(Term(benchmark()), res.trace, heuristics::registry());
  CHECK(TermTraits::equal(replayed, Term(res.fact)));
}

TEST_CASE("the benchmark from rl-direct source") {
  auto m = frontend::desugar(frontend::parseRlDirect(
      "rel R : A -> B;\nrel S : A -> B;\nall a : A | some b : B | a in R.b && a in S.b\n"));
  REQUIRE(m.asserts.size() == 1);
  auto f = expand::formula(m.asserts[0].body);
  auto res = heuristics::translate(f);
  CHECK(fa::toString(res.fact) == "id ⊆ R·S°");
}

TEST_CASE("definition rules keep the meaning") {
  auto v = untyped({{"R", 2}, {"S", 2}, {"T", 3}, {"A", 1}});
  auto defs = heuristics::definitionRules();
  const auto& compose = byName(defs, "compose");
  const auto& project = byName(defs, "project");
  const auto& divide = byName(defs, "divide");
  const auto& onePoint = byName(defs, "one-point");
  const auto& absorb = byName(defs, "absorb coreflexive");

  CHECK(applyChecked(compose, rl::exists(2, nullptr, rl::and_(app(1, "R", 2), app(2, "S", 1))), v) ==
        "⟨∃ 1 :: 1 (R·S) 1⟩");
  CHECK(applyChecked(compose, rl::exists(2, nullptr, rl::and_(app(2, "R", 1), app(2, "S", 1))), v) ==
        "⟨∃ 1 :: 1 (R°·S) 1⟩");
  // The middle column of a ternary relation.
  auto t = rl::app({rl::bv(1)}, fa::rel("T", 3), {rl::bv(2), rl::bv(3)});
  auto tc = applyChecked(compose, rl::exists(3, nullptr, rl::and_(t, app(2, "R", 3))), v);
  CHECK(tc != "<fail>");
  auto tp = applyChecked(project, rl::exists(3, nullptr, t), v);
  CHECK(tp != "<fail>");
  CHECK(applyChecked(project, rl::exists(2, nullptr, app(2, "R", 1)), v) == "⟨∃ 1 :: 1 (R°·⊤) 1⟩");

  auto div = rl::forall(3, app(3, "R", 1), app(3, "S", 2));
  CHECK(applyChecked(divide, div, v) == "⟨∀ 1,2 :: 1 (R \\ S) 2⟩");
  auto divDiag = rl::forall(2, rl::app({rl::bv(2)}, fa::coref("A"), {rl::bv(2)}), app(2, "S", 1));
  CHECK(applyChecked(divide, divDiag, v) == "⟨∀ 1 :: 1 (Φ_A·⊤ \\ S) 1⟩");
  auto divTern = rl::forall(3, rl::app({rl::bv(1)}, fa::rel("T", 3), {rl::bv(3), rl::bv(2)}), app(3, "R", 2));
  CHECK(applyChecked(divide, divTern, v) != "<fail>");

  auto eq = rl::app({rl::bv(2)}, fa::id(), {rl::bv(1)});
  CHECK(applyChecked(onePoint, rl::exists(2, nullptr, rl::and_(eq, app(2, "R", 2))), v) == "⟨∃ 1 :: 1 R 1⟩");
  CHECK(applyChecked(onePoint, rl::forall(2, eq, app(1, "S", 2)), v) == "⟨∀ 1 :: 1 S 1⟩");

  auto phi = rl::app({rl::bv(1)}, fa::coref("A"), {rl::bv(1)});
  CHECK(applyChecked(absorb, rl::forall(2, nullptr, rl::and_(phi, app(2, "R", 1))), v) == "<fail>");
  auto conj = rl::exists(2, nullptr, rl::and_(phi, app(2, "R", 1)));
  Engine e;
  auto out = e.run(Engine::once(Engine::rule(absorb)), Term(conj));
  REQUIRE(static_cast<bool>(out));
  CHECK(toString(*out) == "⟨∃ 1,2 :: 2 (R·Φ_A) 1⟩");
  auto tern = rl::exists(3, nullptr, rl::and_(phi, rl::app({rl::bv(2)}, fa::rel("T", 3), {rl::bv(3), rl::bv(1)})));
  Engine e2;
  auto out2 = e2.run(Engine::once(Engine::rule(absorb)), Term(tern));
  REQUIRE(static_cast<bool>(out2));
  oracle::CheckOptions opt;
  opt.bound = 2;
  opt.exhaustiveCap = 1u << 20;
  CHECK((oracle::checkEquiv(v, oracle::rlProperty(tern), property(*out2), opt).verdict == oracle::Verdict::Pass));
}

TEST_CASE("first-order rules") {
  auto v = untyped({{"R", 2}, {"S", 2}});
  auto fol = heuristics::folRules();
  auto r12 = app(1, "R", 2), s12 = app(1, "S", 2);
  CHECK(applyChecked(byName(fol, "∧ true"), rl::exists(2, nullptr, rl::and_(r12, rl::truth())), v) == "<fail>");
  Engine e;
  auto simp = e.run(heuristics::simplify(),
                    Term(rl::forall(2, nullptr, rl::not_(rl::and_(r12, rl::not_(rl::and_(s12, rl::truth())))))));
  // The range is read off, then the inner variable is divided out.
  CHECK(toString(*simp) == "⟨∀ 1 :: 1 (R° \\ S°) 1⟩");
  auto h = heuristics::translate(rl::not_(rl::exists(2, nullptr, rl::and_(r12, rl::not_(s12)))));
  CHECK(fa::toString(h.fact) == "R ⊆ S");
  Engine e3;
  auto n = e3.run(Engine::many(Engine::once(Engine::rules(heuristics::folRules()))),
                  Term(rl::not_(rl::exists(2, nullptr, rl::and_(r12, rl::not_(s12))))));
  CHECK(toString(*n) == "⟨∀ 1,2 : 1 R 2 : 1 S 2⟩");
  Engine e2;
  auto r = e2.run(Engine::rule(heuristics::dropVarsRule()), *n);
  CHECK(toString(*r) == "R ⊆ S");
  Engine e4;
  auto fuse = e4.run(heuristics::simplify(), Term(rl::forall(1, app(1, "R", 1), rl::forall(1, s12, rl::falsity()))));
  CHECK(toString(*fuse) == "⟨∀ 1,2 : 1 ((id ∩ R)·S) 2 : false⟩");
  oracle::CheckOptions opt;
  opt.bound = 2;
  CHECK((oracle::checkEquiv(v, oracle::rlProperty(rl::forall(1, app(1, "R", 1), rl::forall(1, s12, rl::falsity()))),
                            property(*fuse), opt)
             .verdict == oracle::Verdict::Pass));
}

TEST_CASE("fork-algebra rules") {
  auto fr = heuristics::faRules();
  auto R = fa::rel("R"), S = fa::rel("S");
  auto run = [&](const fa::Expr& x) {
    Engine e;
    return fa::toString(std::get<fa::Expr>(*e.run(heuristics::simplifyFA(), Term(x))));
  };
  CHECK(run(fa::inter(R, fa::inter(fa::top(), R))) == "R");
  CHECK(run(fa::uni(R, fa::bot())) == "R");
  CHECK(run(fa::conv(fa::comp(R, fa::conv(S)))) == "S·R°");
  CHECK(run(fa::compl_(fa::compl_(R))) == "R");
  CHECK(run(fa::compl_(fa::comp(R, S))) == "R° \\ ‾(S)");
  CHECK(run(fa::ldiv(fa::id(), R)) == "R");
  CHECK(run(fa::inter(fa::comp(fa::conv(fa::pi1()), R), fa::comp(fa::conv(fa::pi2()), S))) == "R ∇ S");
  CHECK(run(fa::fork(fa::comp(R, fa::pi1()), fa::comp(S, fa::pi2()))) == "R × S");
  Engine e;
  auto f = e.run(heuristics::simplifyFA(), Term(fa::inclusion(fa::compl_(S), fa::compl_(R))));
  CHECK(toString(*f) == "R ⊆ S");
  Engine e2;
  auto g = e2.run(heuristics::simplifyFA(), Term(fa::inclusion(R, fa::ldiv(S, fa::rel("T")))));
  CHECK(toString(*g) == "S·R ⊆ T");

  // Every FA rule is an identity on small models.
  auto v = untyped({{"R", 2}, {"S", 2}});
  std::vector<fa::Expr> samples{fa::compl_(fa::comp(R, S)),
                                fa::compl_(fa::ldiv(R, S)),
                                fa::conv(fa::inter(R, S)),
                                fa::compl_(fa::conv(fa::compl_(R))),
                                fa::comp(fa::conv(fa::fork(R, S)), fa::fork(S, R)),
                                fa::comp(fa::fork(fa::id(), fa::top()), R),
                                fa::ldiv(fa::bot(), R),
                                fa::comp(fa::top(), fa::top())};
  for (const auto& x : samples) {
    Engine ex;
    auto y = std::get<fa::Expr>(*ex.run(heuristics::simplifyFA(), Term(x)));
    INFO(fa::toString(x) << "  ~>  " << fa::toString(y));
    CHECK(checkAll(fa::equation(x, y), v, 2) > 0);
  }
}

TEST_CASE("every heuristic step preserves the meaning") {
  auto voc = oracle::vocabularyOf(frontend::buildSymbols(oracle::genVocabulary()));
  oracle::CheckOptions opt;
  opt.bound = 2;
  opt.exhaustiveCap = 100;
  long steps = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto f = oracle::genFormula(seed);
    auto res = heuristics::translate(expand::formula(f));
    for (const auto& st : res.trace) {
      INFO(seed << " " << st.rule << ": " << toString(st.before) << "  ~>  " << toString(st.after));
      auto r = oracle::checkEquiv(voc, property(st.before), property(st.after), opt);
      CHECK(r.ok());
      ++steps;
    }
  }
  CHECK(steps > 50);
}

TEST_CASE("heuristic translation is sound on generated formulas") {
  auto voc = oracle::vocabularyOf(frontend::buildSymbols(oracle::genVocabulary()));
  oracle::CheckOptions opt;
  opt.exhaustiveCap = 2000;
  opt.samples = 300;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto f = oracle::genFormula(seed);
    auto rlf = expand::formula(f);
    auto res = heuristics::translate(rlf, 10000, seed < 5);
    INFO(alloy::toString(f));
    INFO(fa::toString(res.fact));
    auto r = oracle::checkEquiv(voc, oracle::alloyProperty(f), oracle::faProperty(res.fact), opt);
    CHECK(r.ok());
    if (!r.ok()) MESSAGE(r.counterexample);
    if (seed < 5) {
      auto replayed = Engine::replay(Term(rlf), res.trace, heuristics::registry());
      CHECK(TermTraits::equal(replayed, Term(res.fact)));
    }
  }
}
