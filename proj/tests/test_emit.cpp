#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "alloyfa/check.hpp"
#include "alloyfa/decls2fa.hpp"
#include "alloyfa/emit.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/heuristics.hpp"
#include "alloyfa/laws.hpp"
#include "alloyfa/semantics.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alloyfa;
using namespace testsupport;

namespace {

alloy::SymbolTable universityModel() {
  std::ifstream in(std::string(ALLOYFA_SOURCE_DIR) + "/models/university.als");
  std::stringstream ss;
  ss << in.rdbuf();
  return frontend::buildSymbols(frontend::parse(ss.str()));
}

fa::Fact someGoal() { return fa::inclusion(fa::id(), fa::comp(fa::rel("lecturer"), fa::conv(fa::rel("lecturer")))); }

std::vector<std::string> formulas(const emit::Prover9Doc& d) {
  std::vector<std::string> out;
  for (const auto* list : {&d.assumptions, &d.goals})
    for (const auto& f : *list) out.push_back(f.label + ": " + fa::toString(f.fact));
  std::sort(out.begin(), out.end());
  return out;
}

rl::Formula benchmark() {
  auto app = [](int a, const char* r, int b) { return rl::app({rl::bv(a)}, fa::rel(r), {rl::bv(b)}); };
  return rl::forall(1, nullptr, rl::exists(1, nullptr, rl::and_(app(1, "R", 2), app(1, "S", 2))));
}

int lineOf(const std::string& text, const std::string& needle) {
  auto p = text.find(needle);
  return p == std::string::npos ? -1 : 1 + static_cast<int>(std::count(text.begin(), text.begin() + p, '\n'));
}

}  // namespace

TEST_CASE("inclusions are encoded as joins") {
  auto f = emit::encode(fa::inclusion(fa::rel("R"), fa::rel("S")));
  CHECK(fa::toString(f) == "R ∪ S = S");
  auto n = emit::lower(fa::ncompNode(3, fa::rel("T", 3), fa::rel("U")));
  CHECK(fa::toString(n) == "T·((id·π₁) ∇ (U·π₂))");
  auto doc = emit::buildProver9({}, fa::inclusion(fa::rel("R"), fa::rel("S")));
  CHECK(emit::formulaText(doc.goals[0].fact, doc.symbols) == "join(r,s) = s");
}

TEST_CASE("encoded facts mean what the facts mean") {
  auto st = universityModel();
  auto facts = decls2fa::declFacts(st);
  facts.push_back(fa::inclusion(fa::rotateNode(fa::rel("courses", 3)), fa::top(), "rotated"));
  auto v = oracle::vocabularyOf(st);
  oracle::CheckOptions opt;
  opt.bound = 2;
  for (const auto& f : facts) {
    auto res = oracle::checkEquiv(v, oracle::faProperty(f), oracle::faProperty(emit::encode(f)), opt);
    INFO(fa::toString(f));
    CHECK((res.verdict == oracle::Verdict::Pass));
  }
}

TEST_CASE("the emitted library is valid") {
  oracle::CheckOptions opt;
  opt.bound = 2;
  opt.exhaustiveCap = 1u << 12;
  opt.samples = 200;
  for (const auto& law : laws::library()) {
    auto res = oracle::checkLaw(emit::encode(law.fact), {}, opt);
    INFO(law.name << ": " << res.counterexample);
    CHECK(res.ok());
  }
}

TEST_CASE("documents read back to the same formulas") {
  auto facts = decls2fa::declFacts(universityModel());
  auto doc = emit::buildProver9(facts, someGoal());
  auto text = emit::render(doc);
  auto back = emit::selfParse(text);
  CHECK(formulas(back) == formulas(doc));
  CHECK(back.symbols.size() == doc.symbols.size());
  CHECK(emit::render(back) == text);
  CHECK(emit::emitProver9(facts, someGoal()) == text);
  CHECK(text.find("set(prolog_style_variables).") != std::string::npos);
  CHECK(text.find("% symbol phi_Person = coreflexive Person") != std::string::npos);
  CHECK(text.find("% symbol courses = relation courses/3") != std::string::npos);
  CHECK(text.find("# label(abstract_cover).") != std::string::npos);
  CHECK(text.find("\nstar(R) = join(one,comp(star(R),R)) # label(star_unfold).\n") != std::string::npos);
  CHECK(text.find("prod") == std::string::npos);
  // Library first, then the declaration facts, then the goal.
  CHECK(lineOf(text, "label(huntington)") < lineOf(text, "label(top_cover)"));
  CHECK(lineOf(text, "label(multiplicity)") < lineOf(text, "formulas(goals)"));
  CHECK(back.goals.size() == 1);
}

TEST_CASE("identifiers avoid operator names and each other") {
  auto goal = fa::equation(fa::uni(fa::rel("Join"), fa::rel("join")), fa::uni(fa::rel("A"), fa::rel("a")));
  auto doc = emit::buildProver9({fa::inclusion(fa::coref("a"), fa::rel("x'"))}, goal);
  std::set<std::string> ids;
  for (const auto& s : doc.symbols) {
    CHECK(ids.insert(s.prover).second);
    CHECK(emit::selfParse(emit::render(doc)).symbols.size() == doc.symbols.size());
  }
  CHECK(ids.count("join") == 0);
  CHECK(ids.count("phi_a") == 1);
  auto back = emit::selfParse(emit::render(doc));
  CHECK(fa::equal(back.goals[0].fact.lhs, emit::encode(goal).lhs));
}

TEST_CASE("an empty assumption list is still a document") {
  emit::Prover9Doc doc;
  doc.goals.push_back({"goal", fa::equation(fa::conv(fa::conv(fa::meta("X"))), fa::meta("X"))});
  auto text = emit::render(doc);
  CHECK(text.find("formulas(assumptions).\n\nend_of_list.") != std::string::npos);
  auto back = emit::selfParse(text);
  CHECK(back.assumptions.empty());
  CHECK(fa::toString(back.goals[0].fact) == "(?X°)° = ?X");
  doc.goals.push_back(doc.goals[0]);
  CHECK_THROWS_AS(emit::render(doc), emit::EmitError);
}

TEST_CASE("templates") {
  auto tmpl = std::string("% custom\nassign(max_seconds, 60).\n{{symbols}}\nformulas(assumptions).\n{{assumptions}}\n"
                          "end_of_list.\nformulas(goals).\n{{goals}}\nend_of_list.\n");
  auto text = emit::emitProver9({}, someGoal(), tmpl);
  CHECK(text.rfind("% custom\nassign(max_seconds, 60).\n", 0) == 0);
  CHECK(emit::selfParse(text).goals.size() == 1);
  CHECK_THROWS_AS(emit::emitProver9({}, someGoal(), "{{symbols}} {{goals}}"), emit::EmitError);
}

TEST_CASE("malformed documents report a position") {
  auto at = [](const std::string& text) -> std::pair<int, int> {
    try {
      emit::selfParse(text);
    } catch (const emit::ParseError& e) {
      return {e.line, e.col};
    }
    return {0, 0};
  };
  CHECK(at("formulas(goals).\njoin(one,top = top.\nend_of_list.\n") == std::pair{2, 14});
  CHECK(at("formulas(goals).\none = r.\nend_of_list.\n") == std::pair{2, 7});
  CHECK(at("formulas(goals).\none = one ; \nend_of_list.\n") == std::pair{2, 11});
  CHECK(at("formulas(goals).\none = one.\n") == std::pair{3, 1});
  CHECK(at("formulas(assumptions).\nend_of_list.\n").first > 0);  // no goal
  CHECK(at("% symbol r = relation r\nformulas(goals).\none = r.\nend_of_list.\n") == std::pair{1, 1});
}

TEST_CASE("LaTeX derivations") {
  auto res = heuristics::translate(benchmark());
  REQUIRE(!res.trace.empty());
  auto doc = emit::emitLatex(res.trace, {res.fact});
  CHECK(emit::checkLatex(doc).empty());
  CHECK(doc == emit::emitLatex(res.trace, {res.fact}));
  CHECK(doc.find("\\mathit{id} \\subseteq \\mathit{R} \\cdot {\\mathit{S}}^{\\circ}") != std::string::npos);
  // Consecutive steps share their boundary term.
  for (std::size_t k = 1; k < res.trace.size(); ++k)
    CHECK(emit::latex(res.trace[k].before) == emit::latex(res.trace[k - 1].after));
  for (const auto& s : res.trace) CHECK(emit::checkLatex(emit::latex(s.after)).empty());
  CHECK(emit::latex(fa::rotateNode(fa::rel("T", 3))) == "\\overrightarrow{\\mathit{T}}");
  auto plain = emit::latex(fa::conv(fa::conv(fa::star(fa::rel("a_b")))));
  CHECK(plain == "{{{\\mathit{a\\_b}}^{*}}^{\\circ}}^{\\circ}");
}

TEST_CASE("abbreviations are unambiguous prefixes") {
  auto a = emit::abbreviations({"Person", "Professor", "Course", "courses", "University"});
  CHECK(a["Person"] == "Pe");
  CHECK(a["Professor"] == "Pr");
  CHECK(a["Course"] == "C");
  CHECK(a["courses"] == "c");
  CHECK(a["University"] == "U");
  emit::LatexOptions opt;
  opt.abbreviate = true;
  auto facts = decls2fa::declFacts(universityModel());
  auto doc = emit::emitLatex(std::vector<Step>{}, facts, opt);
  CHECK(emit::checkLatex(doc).empty());
  CHECK(doc.find("\\Phi_{\\mathit{Pe}}") != std::string::npos);
  CHECK(doc.find("\\mathit{l} \\subseteq") != std::string::npos);
}

TEST_CASE("the balance checker") {
  CHECK(emit::checkLatex("\\begin{a}{x}\\end{a}").empty());
  CHECK(emit::checkLatex("\\{ \\} % {\n").empty());
  CHECK(!emit::checkLatex("\\begin{a}\\end{b}").empty());
  CHECK(!emit::checkLatex("{").empty());
  CHECK(!emit::checkLatex("}").empty());
  CHECK(!emit::checkLatex("\\left(").empty());
}
