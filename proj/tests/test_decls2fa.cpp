#include <bit>
#include <fstream>
#include <sstream>

#include "alloyfa/check.hpp"
#include "alloyfa/decls2fa.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/semantics.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alloyfa;
using namespace testsupport;
using alloy::Mult;

namespace {

alloy::SymbolTable universityModel() {
  std::ifstream in(std::string(ALLOYFA_SOURCE_DIR) + "/models/university.als");
  std::stringstream ss;
  ss << in.rdbuf();
  return frontend::buildSymbols(frontend::parse(ss.str()));
}

fa::Expr phi(const char* s) { return fa::coref(s); }

std::vector<fa::Fact> expectedDeclFacts() {
  using namespace fa;
  auto lect = rel("lecturer");
  return {
      equation(id(), uniAll({phi("Person"), phi("Course"), phi("University")})),
      inclusion(uni(phi("Student"), phi("Professor")), phi("Person")),
      equation(inter(phi("Student"), phi("Professor")), bot()),
      inclusion(lect, compAll({phi("Course"), top(), phi("Professor")})),
      inclusion(rel("depends"), compAll({phi("Course"), top(), phi("Course")})),
      inclusion(rel("enrolled"), compAll({phi("University"), top(), phi("Student")})),
      inclusion(rel("courses", 3), compAll({phi("University"), top(), prod(phi("Student"), phi("Course"))})),
      inclusion(id(), comp(lect, conv(lect))),
  };
}

std::string joined(const std::vector<fa::Fact>& fs) {
  std::string s;
  for (const auto& f : fs) s += fa::toString(f) + "\n";
  return s;
}

oracle::Vocabulary single(int arity) { return untyped({{"R", arity}}); }

struct Bounds {
  int lo, hi;
};

Bounds bounds(Mult m) {
  switch (m) {
    case Mult::Some: return {1, 1 << 20};
    case Mult::Lone: return {0, 1};
    default: return {1, 1};
  }
}

// Every model of one untyped relation: emitted facts hold iff the counting
// constraint does. Returns the number of models checked.
long checkColumn(int arity, int column, Mult m, int bound, bool exhaustive) {
  auto facts = decls2fa::columnMultFacts("R", arity, column, m);
  REQUIRE(!facts.empty());
  auto v = single(arity);
  oracle::EnumOptions opt;
  opt.maxUniverse = bound;
  opt.exhaustiveCap = exhaustive ? ~std::uint64_t{0} : 4096;
  opt.samples = 3000;
  std::vector<std::vector<oracle::FactChecker>> chk(static_cast<std::size_t>(bound) + 1);
  for (int n = 1; n <= bound; ++n)
    for (const auto& f : facts) chk[static_cast<std::size_t>(n)].emplace_back(f, n);
  auto b = bounds(m);
  bool ok = true;
  std::string bad;
  auto st = oracle::enumerateModels(v, opt, [&](const oracle::FiniteModel& mod) {
    bool lhs = true;
    for (auto& c : chk[static_cast<std::size_t>(mod.universe)]) lhs = lhs && c.holds(mod);
    ok = lhs == countingHolds(mod.rels[0], column - 1, b.lo, b.hi);
    if (!ok) bad = mod.describe();
    return ok;
  });
  if (!ok) MESSAGE(arity << "-ary column " << column << " " << alloy::toString(m) << ": " << bad);
  CHECK(st.exhaustive == exhaustive);
  return ok ? static_cast<long>(st.models) : -1;
}

}  // namespace

TEST_CASE("university declarations give the expected facts") {
  auto facts = decls2fa::declFacts(universityModel());
  std::vector<fa::Fact> compared;
  for (const auto& f : facts)
    if (f.label != "abstract-cover") compared.push_back(f);
  auto want = expectedDeclFacts();
  REQUIRE(compared.size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    INFO(fa::toString(compared[k]) << " vs " << fa::toString(want[k]));
    CHECK(fa::equal(fa::canonicalize(compared[k]), fa::canonicalize(want[k])));
  }
  CHECK(joined(facts) ==
        "id = Φ_Person ∪ Φ_Course ∪ Φ_University\n"
        "Φ_Student ∪ Φ_Professor ⊆ Φ_Person\n"
        "Φ_Student ∩ Φ_Professor = ⊥\n"
        "Φ_Person = Φ_Student ∪ Φ_Professor\n"
        "lecturer ⊆ Φ_Course·⊤·Φ_Professor\n"
        "depends ⊆ Φ_Course·⊤·Φ_Course\n"
        "enrolled ⊆ Φ_University·⊤·Φ_Student\n"
        "courses ⊆ Φ_University·⊤·(Φ_Student × Φ_Course)\n"
        "id ⊆ lecturer·lecturer°\n");
  std::vector<std::string> labels;
  for (const auto& f : facts) labels.push_back(f.label);
  CHECK(labels == std::vector<std::string>{"top-cover", "hierarchy", "disjointness", "abstract-cover", "typing",
                                           "typing", "typing", "typing", "multiplicity"});
}

TEST_CASE("declaration facts hold on every declaration-respecting model") {
  auto st = universityModel();
  auto facts = decls2fa::declFacts(st);
  std::vector<fa::Fact> structural;
  for (const auto& f : facts)
    if (f.label != "multiplicity") structural.push_back(f);
  oracle::CheckOptions opt;
  opt.bound = 3;
  auto r = oracle::checkAll(oracle::vocabularyOf(st), oracle::faProperty(structural), opt);
  CHECK(r.ok());
  CHECK(r.models > 0);
}

TEST_CASE("every signature and relation shows up in the facts") {
  auto st = universityModel();
  auto text = joined(decls2fa::declFacts(st));
  for (const auto& s : st.sigs) CHECK(text.find("Φ_" + s.name) != std::string::npos);
  for (const auto& r : st.rels) {
    int typing = 0;
    for (const auto& f : decls2fa::declFacts(st))
      if (f.label == "typing" && f.lhs->op == fa::Op::Rel && f.lhs->name == r.name) ++typing;
    CHECK(typing == 1);
  }
  alloy::RelSym unary{"u", "A", {"A"}, {Mult::None}};
  CHECK_THROWS_AS(decls2fa::typingFact(unary), fa::ArityError);
}

TEST_CASE("a single non-abstract signature only covers the identity") {
  alloy::SymbolTable t;
  t.sigs.push_back({"A", "", false, Mult::None, {}});
  CHECK(joined(decls2fa::declFacts(t)) == "id = Φ_A\n");
}

TEST_CASE("rl-direct relations induce no facts") {
  auto m = frontend::parseRlDirect("rel R : A -> B;\nall a : A | some b : B | a in R.b");
  CHECK(decls2fa::declFacts(frontend::buildSymbols(m)).empty());
}

TEST_CASE("typed compositions with disjoint middles are empty") {
  auto st = universityModel();
  auto facts = decls2fa::declFacts(st);
  // Relations left untyped so that only the typing facts restrict them.
  auto v = oracle::vocabularyOf(st);
  for (auto& r : v.rels) r.columns.assign(r.columns.size(), -1);
  struct Case {
    const char* r;
    const char* s;
  };
  for (auto c : {Case{"lecturer", "depends"}, Case{"enrolled", "lecturer"}, Case{"depends", "enrolled"}}) {
    auto goal = fa::equation(fa::comp(fa::rel(c.r), fa::rel(c.s)), fa::bot());
    std::vector<fa::Fact> hyps;
    for (const auto& f : facts)
      if (f.label == "typing" && (f.lhs->name == c.r || f.lhs->name == c.s)) hyps.push_back(f);
    auto sub = v.restrictedTo({c.r, c.s});
    oracle::CheckOptions opt;
    opt.bound = 3;
    opt.exhaustiveCap = 1u << 22;
    auto res = oracle::checkEntails(sub, oracle::faProperty(hyps), oracle::faProperty(goal), opt);
    std::string what = std::string(c.r) + "·" + c.s + ": " + oracle::toString(res.verdict) + " " + res.counterexample;
    INFO(what);
    CHECK(res.ok());
    opt.bound = 2;
    CHECK((oracle::checkEntails(sub, oracle::faProperty(hyps), oracle::faProperty(goal), opt).verdict ==
           oracle::Verdict::Pass));
    // Without the typing facts the composition can be inhabited.
    auto bare = oracle::checkAll(sub, oracle::faProperty(goal), opt);
    CHECK(!bare.ok());
  }
}

TEST_CASE("signature multiplicities match cardinalities") {
  CHECK(joined(decls2fa::sigMultFacts("A", Mult::Some)) == "⊤ ⊆ ⊤·Φ_A·⊤\n");
  CHECK(joined(decls2fa::sigMultFacts("A", Mult::Lone)) == "Φ_A·⊤·Φ_A ⊆ id\n");
  CHECK(decls2fa::sigMultFacts("A", Mult::One).size() == 2);
  CHECK(decls2fa::sigMultFacts("A", Mult::Set).empty());
  oracle::Vocabulary v;
  v.sigs = {{"A", -1, false}, {"B", -1, false}};
  for (auto m : {Mult::Some, Mult::Lone, Mult::One}) {
    auto facts = decls2fa::sigMultFacts("A", m);
    auto b = bounds(m);
    oracle::EnumOptions opt;
    opt.maxUniverse = 3;
    long models = 0;
    bool ok = true;
    oracle::enumerateModels(v, opt, [&](const oracle::FiniteModel& mod) {
      bool lhs = true;
      for (const auto& f : facts) lhs = lhs && oracle::holds(f, mod);
      int card = std::popcount(mod.sigAtoms[0]);
      ok = lhs == (card >= b.lo && card <= b.hi);
      ++models;
      return ok;
    });
    INFO(alloy::toString(m));
    CHECK(ok);
    CHECK(models > 0);
  }
}

TEST_CASE("column multiplicities of binary relations") {
  CHECK(joined(decls2fa::columnMultFacts("R", 2, 2, Mult::Lone)) == "R°·R ⊆ id\n");
  CHECK(joined(decls2fa::columnMultFacts("R", 2, 2, Mult::Some)) == "id ⊆ R·R°\n");
  CHECK(joined(decls2fa::columnMultFacts("R", 2, 1, Mult::Lone)) == "R·R° ⊆ id\n");
  CHECK(decls2fa::columnMultFacts("R", 2, 2, Mult::Set).empty());
  for (int col = 1; col <= 2; ++col)
    for (auto m : {Mult::Some, Mult::Lone, Mult::One}) CHECK(checkColumn(2, col, m, 3, true) == 2 + 16 + 512);
}

TEST_CASE("column multiplicities of ternary relations") {
  CHECK(joined(decls2fa::columnMultFacts("R", 3, 3, Mult::Lone)) == "rot(R)·rot(R)° ⊆ id\n");
  CHECK(joined(decls2fa::columnMultFacts("R", 3, 2, Mult::Some)) == "id ⊆ rot(rot(R))°·rot(rot(R))\n");
  CHECK(joined(decls2fa::columnMultFacts("R", 3, 1, Mult::Lone)) == "R·R° ⊆ id\n");
  // Exhaustive up to two atoms here; the acceptance run covers three.
  for (int col = 1; col <= 3; ++col)
    for (auto m : {Mult::Some, Mult::Lone, Mult::One}) {
      CHECK(checkColumn(3, col, m, 2, true) == 2 + 256);
      CHECK(checkColumn(3, col, m, 3, false) > 0);
    }
}
