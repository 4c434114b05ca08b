// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "alloyfa/check.hpp"
#include "alloyfa/decls2fa.hpp"
#include "alloyfa/emit.hpp"
#include "alloyfa/expand.hpp"
#include "alloyfa/frontend.hpp"
#include "alloyfa/heuristics.hpp"
#include "alloyfa/laws.hpp"
#include "alloyfa/pipeline.hpp"
#include "alloyfa/rl2fa.hpp"
#include "alloyfa/semantics.hpp"
#include "alloyfa/symbolic.hpp"

using namespace alloyfa;
using oracle::Verdict;
namespace sym = oracle::symbolic;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances.
constexpr double kFig3Seconds = 1.0;
constexpr int kBenchmarkMaxOps = 3;
constexpr int kExhaustiveBound = 3;
constexpr std::uint64_t kSamplesAtFour = 10000;
constexpr std::uint64_t kSoundnessSeeds = 200;
constexpr double kSoundnessSeconds = 600.0;
constexpr int kMaxLawArity = 4;
constexpr int kMaxRelArity = 3;
constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 40;

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(ALLOYFA_SOURCE_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

oracle::CheckOptions exhaustive(int bound = kExhaustiveBound) {
  oracle::CheckOptions o;
  o.bound = bound;
  o.exhaustiveCap = kExhaustiveCap;
  return o;
}

// Passes only if every universe size was enumerated completely.
bool fullPass(const oracle::CheckResult& r) { return r.verdict == Verdict::Pass; }

std::string verdictText(const oracle::CheckResult& r) {
  std::string s = std::string(oracle::toString(r.verdict)) + " over " + std::to_string(r.models) + " models";
  if (!r.counterexample.empty()) s += " (" + r.counterexample + ")";
  return s;
}

fa::Expr phi(const char* s) { return fa::coref(s); }

std::vector<std::string> canonicalStrings(const std::vector<fa::Fact>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(fa::toString(fa::canonicalize(f)));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome expectedDeclFacts() {
  using namespace fa;
  auto t0 = Clock::now();
  auto st = frontend::buildSymbols(frontend::parse(slurp("models/university.als")));
  auto facts = decls2fa::declFacts(st);
  double secs = since(t0);
  std::vector<Fact> got;
  for (const auto& f : facts)
    if (f.label != "abstract-cover") got.push_back(f);
  auto lect = rel("lecturer");
  std::vector<Fact> want{
      equation(id(), uniAll({phi("Person"), phi("Course"), phi("University")})),
      inclusion(uni(phi("Student"), phi("Professor")), phi("Person")),
      equation(inter(phi("Student"), phi("Professor")), bot()),
      inclusion(lect, compAll({phi("Course"), top(), phi("Professor")})),
      inclusion(rel("depends"), compAll({phi("Course"), top(), phi("Course")})),
      inclusion(rel("enrolled"), compAll({phi("University"), top(), phi("Student")})),
      inclusion(rel("courses", 3), compAll({phi("University"), top(), prod(phi("Student"), phi("Course"))})),
      inclusion(id(), comp(lect, conv(lect))),
  };
  bool same = canonicalStrings(got) == canonicalStrings(want);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu facts match, %.3f s (limit %.1f s)", same ? want.size() : 0, want.size(),
                secs, kFig3Seconds);
  return {same && secs < kFig3Seconds, buf};
}

pipeline::Result benchmark(bool heur) {
  pipeline::Options o;
  o.mode = pipeline::Mode::RlDirect;
  o.heuristics = heur;
  return pipeline::run(slurp("models/benchmark.rl"), o);
}

// R°° → R, enough to read the converse of the printed form.
fa::Expr dropDoubleConverse(const fa::Expr& e) {
  if (!e) return e;
  if (e->op == fa::Op::Conv && e->lhs->op == fa::Op::Conv) return dropDoubleConverse(e->lhs->lhs);
  auto n = std::make_shared<fa::Node>(*e);
  n->lhs = dropDoubleConverse(e->lhs);
  n->rhs = dropDoubleConverse(e->rhs);
  return n;
}

fa::Fact printedBenchmark() { return fa::inclusion(fa::id(), fa::comp(fa::conv(fa::rel("R")), fa::rel("S"))); }

Outcome heuristicBenchmark() {
  auto res = benchmark(true);
  const auto& fact = res.assertions.at(0).fact;
  int ops = fa::countOps(fact);
  // Column 1 is the output here, so the printed form appears under global converse.
  auto printed = printedBenchmark();
  fa::Fact target{printed.kind, dropDoubleConverse(fa::globalConverse(printed.lhs)),
                  dropDoubleConverse(fa::globalConverse(printed.rhs)), ""};
  auto voc = oracle::vocabularyOf(res.symbols);
  auto small = oracle::checkEquiv(voc, oracle::faProperty(fact), oracle::faProperty(target), exhaustive());
  auto o4 = exhaustive(4);
  o4.minUniverse = 4;
  o4.exhaustiveCap = 0;
  o4.samples = kSamplesAtFour;
  auto four = oracle::checkEquiv(voc, oracle::faProperty(fact), oracle::faProperty(target), o4);
  bool syntactic = fa::equal(fa::canonicalize(fact), fa::canonicalize(target));
  bool pass = ops <= kBenchmarkMaxOps && fullPass(small) && four.verdict != Verdict::Fail &&
              four.models >= kSamplesAtFour;
  return {pass, fa::toString(fact) + ", " + std::to_string(ops) + " ops; |U|<=3 " + verdictText(small) +
                    "; |U|=4 " + verdictText(four) + "; target " + fa::toString(target) + ", syntactic match: " +
                    (syntactic ? "yes" : "no")};
}

Outcome rawBenchmark() {
  using namespace fa;
  auto res = benchmark(false);
  const auto& fact = res.assertions.at(0).fact;
  auto pi = [](Expr r) { return inter(pi1(), comp(std::move(r), pi2())); };
  auto printed = inclusion(
      top(), compl_(comp(compl_(comp(inter(comp(top(), pi(rel("R"))), comp(top(), pi(rel("S")))), fork(id(), top()))),
                         top())));
  auto voc = oracle::vocabularyOf(res.symbols);
  auto r = oracle::checkEquiv(voc, oracle::faProperty(fact), oracle::faProperty(printed), exhaustive());
  return {fullPass(r), std::to_string(countOps(fact)) + " ops; against the printed expression " + verdictText(r)};
}

Outcome soundness() {
  auto voc = oracle::vocabularyOf(frontend::buildSymbols(oracle::genVocabulary()));
  auto opt = exhaustive();
  auto t0 = Clock::now();
  int agreed = 0, total = 0;
  std::uint64_t models = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < kSoundnessSeeds; ++seed) {
    auto f = oracle::genFormula(seed);
    auto rlf = expand::formula(f);
    for (int h = 0; h < 2; ++h) {
      auto fact = h ? heuristics::translate(rlf, 10000, false).fact : rl2fa::translate(rlf, 10000, false).fact;
      auto r = oracle::checkEquiv(voc, oracle::alloyProperty(f), oracle::faProperty(fact), opt);
      ++total;
      models += r.models;
      if (fullPass(r))
        ++agreed;
      else if (first.empty())
        first = "seed " + std::to_string(seed) + (h ? " heuristic: " : " plain: ") + verdictText(r);
    }
  }
  double secs = since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%d translations agree on %llu model checks, %.1f s (limit %.0f s)", agreed, total,
                static_cast<unsigned long long>(models), secs, kSoundnessSeconds);
  return {agreed == total && secs < kSoundnessSeconds, buf + (first.empty() ? "" : "; " + first)};
}

Outcome lawSuite() {
  auto all = laws::naryLaws(kMaxLawArity);
  auto lib = laws::library();
  all.insert(all.end(), lib.begin(), lib.end());
  auto opt = exhaustive();
  int ok = 0;
  std::string first;
  for (const auto& law : all) {
    auto r = sym::proveLaw(law.fact, law.shapes, opt);
    if (r.verdict == Verdict::Pass)
      ++ok;
    else if (first.empty())
      first = law.name + ": " + r.counterexample;
  }
  return {ok == static_cast<int>(all.size()),
          std::to_string(ok) + "/" + std::to_string(all.size()) +
              " laws hold for every assignment (symbolic), |U| <= 3, arity <= 4" + (first.empty() ? "" : "; " + first)};
}

// Relation and signature constants become pattern variables; Φ_A becomes
// ?A ∩ id, so only the diagonal of ?A matters.
fa::Expr freeVars(const fa::Expr& e) {
  if (!e) return e;
  if (e->op == fa::Op::Rel) return fa::meta(e->name, e->arity);
  if (e->op == fa::Op::Coref) return fa::inter(fa::meta(e->name), fa::id());
  auto n = std::make_shared<fa::Node>(*e);
  n->lhs = freeVars(e->lhs);
  n->rhs = freeVars(e->rhs);
  return n;
}

struct Bounds {
  bool atLeastOne, atMostOne;
};

Bounds bounds(alloy::Mult m) { return {m != alloy::Mult::Lone, m != alloy::Mult::Some}; }

int countingBdd(sym::Bdd& b, const std::vector<int>& cells, Bounds k) {
  int t = sym::Bdd::True;
  if (k.atLeastOne) {
    int any = sym::Bdd::False;
    for (int v : cells) any = b.disj(any, v);
    t = b.conj(t, any);
  }
  if (k.atMostOne)
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j) t = b.conj(t, b.neg(b.conj(cells[i], cells[j])));
  return t;
}

std::vector<fa::Fact> withFreeVars(const std::vector<fa::Fact>& fs) {
  std::vector<fa::Fact> out;
  for (const auto& f : fs) out.push_back(fa::Fact{f.kind, freeVars(f.lhs), freeVars(f.rhs), f.label});
  return out;
}

Outcome multiplicities() {
  using alloy::Mult;
  int ok = 0, total = 0;
  std::string first;
  auto record = [&](bool same, const std::string& what) {
    ++total;
    if (same)
      ++ok;
    else if (first.empty())
      first = what;
  };
  for (int n = 1; n <= kExhaustiveBound; ++n)
    for (auto m : {Mult::Some, Mult::Lone, Mult::One}) {
      // Signature multiplicities.
      {
        sym::Evaluator ev(withFreeVars(decls2fa::sigMultFacts("A", m)), {}, n);
        std::vector<int> diag;
        for (int x = 0; x < n; ++x)
          diag.push_back(ev.bdd().var(ev.variable("A", static_cast<std::size_t>(x), static_cast<std::size_t>(x))));
        int want = countingBdd(ev.bdd(), diag, bounds(m));
        record(ev.truth() == want, std::string("sig ") + alloy::toString(m) + " at " + std::to_string(n));
      }
      // Column multiplicities.
      for (int arity = 2; arity <= kMaxRelArity; ++arity)
        for (int col = 1; col <= arity; ++col) {
          sym::Evaluator ev(withFreeVars(decls2fa::columnMultFacts("R", arity, col, m)), {{"R", {1, arity - 1}}}, n);
          auto& b = ev.bdd();
          int others = 1;
          for (int k = 1; k < arity; ++k) others *= n;
          int want = sym::Bdd::True;
          for (int o = 0; o < others; ++o) {
            std::vector<int> cells;
            for (int x = 0; x < n; ++x) {
              std::vector<int> tup;
              int rest = o;
              for (int k = 1; k < arity; ++k) {
                tup.insert(tup.begin(), rest % n);
                rest /= n;
              }
              tup.insert(tup.begin() + (col - 1), x);
              std::size_t c = 0;
              for (int k = 1; k < arity; ++k)
                c = c * static_cast<std::size_t>(n) + static_cast<std::size_t>(tup[static_cast<std::size_t>(k)]);
              cells.push_back(b.var(ev.variable("R", static_cast<std::size_t>(tup[0]), c)));
            }
            want = b.conj(want, countingBdd(b, cells, bounds(m)));
          }
          record(ev.truth() == want, std::to_string(arity) + "-ary column " + std::to_string(col) + " " +
                                         alloy::toString(m) + " at " + std::to_string(n));
        }
    }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                           " (multiplicity, arity, column, |U|) cases equal their counting constraint" +
                           (first.empty() ? "" : "; first mismatch: " + first)};
}

std::vector<std::string> formulaMultiset(const emit::Prover9Doc& d) {
  std::vector<std::string> out;
  for (const auto* list : {&d.assumptions, &d.goals})
    for (const auto& f : *list) out.push_back(f.label + ": " + fa::toString(f.fact));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome roundTrip() {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(std::string(ALLOYFA_SOURCE_DIR) + "/models")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int docs = 0, preserved = 0;
  std::string first;
  for (const auto& p : files) {
    pipeline::Options o;
    o.mode = p.extension() == ".rl" ? pipeline::Mode::RlDirect : pipeline::Mode::Alloy;
    o.record = false;
    auto res = pipeline::run(slurp("models/" + p.filename().string()), o);
    for (const auto& a : res.assertions) {
      ++docs;
      auto doc = emit::buildProver9(res.hypotheses(), a.fact);
      auto text = emit::render(doc);
      auto back = emit::selfParse(text);
      if (formulaMultiset(back) == formulaMultiset(doc) && emit::render(back) == text)
        ++preserved;
      else if (first.empty())
        first = p.filename().string() + " " + a.name;
    }
  }
  // The axioms exactly as they read back from a document.
  auto axioms = emit::selfParse(emit::emitProver9({}, fa::inclusion(fa::id(), fa::id()))).assumptions;
  int valid = 0;
  for (const auto& ax : axioms) {
    auto r = sym::proveLaw(ax.fact, {}, exhaustive());
    if (r.verdict == Verdict::Pass)
      ++valid;
    else if (first.empty())
      first = ax.label + ": " + r.counterexample;
  }
  return {docs > 0 && preserved == docs && valid == static_cast<int>(axioms.size()),
          std::to_string(preserved) + "/" + std::to_string(docs) + " documents from " + std::to_string(files.size()) +
              " models read back unchanged; " + std::to_string(valid) + "/" + std::to_string(axioms.size()) +
              " emitted axioms hold at |U| <= 3" + (first.empty() ? "" : "; " + first)};
}

Outcome endToEnd() {
  auto res = pipeline::run(slurp("models/university.als"));
  auto r = pipeline::checkGoal(res, res.assertions.at(0), exhaustive());
  return {fullPass(r), "goal " + verdictText(r)};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 declaration facts of the university model", expectedDeclFacts},
      {"2 benchmark with heuristics", heuristicBenchmark},
      {"3 benchmark without heuristics", rawBenchmark},
      {"4 translation soundness on generated formulas", soundness},
      {"5 algebraic laws", lawSuite},
      {"6 multiplicity semantics", multiplicities},
      {"7 prover document round trip", roundTrip},
      {"8 university assertion end to end", endToEnd},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, " [%.2f s]", since(t0));
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << secs << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
