#include "alloyfa/check.hpp"
#include "alloyfa/laws.hpp"
#include "doctest.h"

using namespace alloyfa;

namespace {

oracle::CheckResult check(const laws::Law& l, int bound = 3) {
  oracle::CheckOptions opt;
  opt.bound = bound;
  opt.exhaustiveCap = 1u << 14;
  opt.samples = 300;
  return oracle::checkLaw(l.fact, l.shapes, opt);
}

}  // namespace

TEST_CASE("the prover library holds in the finite models") {
  for (const auto& l : laws::library()) {
    auto r = check(l);
    INFO(l.name << ": " << r.counterexample);
    CHECK(r.ok());
    CHECK(r.models > 0);
  }
}

TEST_CASE("n-ary laws hold for tuple-shaped relations") {
  auto ls = laws::naryLaws(4);
  CHECK(ls.size() > 20);
  for (const auto& l : ls) {
    auto r = check(l, 2);
    INFO(l.name << ": " << r.counterexample);
    CHECK(r.ok());
  }
}

TEST_CASE("small universes are covered exhaustively") {
  for (const auto& l : laws::library()) {
    if (l.name != "fork-converse" && l.name != "star-induction") continue;
    auto r = check(l, 1);
    CHECK((r.verdict == oracle::Verdict::Pass));
  }
}

TEST_CASE("false laws are refuted") {
  using namespace fa;
  auto R = meta("R"), S = meta("S");
  oracle::CheckOptions opt;
  CHECK((oracle::checkLaw(equation(comp(R, S), comp(S, R)), {}, opt).verdict == oracle::Verdict::Fail));
  CHECK((oracle::checkLaw(inclusion(top(), star(R)), {}, opt).verdict == oracle::Verdict::Fail));
  // Rotation is not the identity on ternary relations.
  auto T = meta("T", 3);
  auto r = oracle::checkLaw(equation(rotateNode(rotateNode(T)), T), {{"T", {1, 2}}}, opt);
  CHECK((r.verdict == oracle::Verdict::Fail));
  CHECK(r.counterexample.find("?T") != std::string::npos);
}
