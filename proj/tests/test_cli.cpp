#include <filesystem>
#include <fstream>
#include <sstream>

#include "alloyfa/check.hpp"
#include "alloyfa/emit.hpp"
#include "alloyfa/pipeline.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace alloyfa;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream o, e;
  int s = cli::run(args, o, e);
  return {s, o.str(), e.str()};
}

std::string model(const char* name) { return std::string(ALLOYFA_SOURCE_DIR) + "/models/" + name; }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("alloyfa-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<nlohmann::json> summaries(const std::string& out) {
  std::vector<nlohmann::json> js;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] == '{') js.push_back(nlohmann::json::parse(line));
  return js;
}

}  // namespace

TEST_CASE("the university model end to end") {
  auto dir = scratch("university");
  auto r = invoke({model("university.als"), "--out", dir.string()});
  CHECK(r.status == cli::Ok);
  auto js = summaries(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["translation"]["verdict"] == "PASS");
  CHECK(js[0]["goal"]["verdict"] == "PASS");
  CHECK(js[0]["shape"] == "inclusion");
  auto p9 = slurp(dir / "university.p9");
  auto tex = slurp(dir / "university.tex");
  auto doc = emit::selfParse(p9);
  CHECK(doc.goals.size() == 1);
  CHECK(emit::checkLatex(tex).empty());
  // Same input, same bytes.
  auto again = scratch("university2");
  auto r2 = invoke({model("university.als"), "--out", again.string()});
  CHECK(slurp(again / "university.p9") == p9);
  CHECK(slurp(again / "university.tex") == tex);
  CHECK(summaries(r2.out)[0]["fact"] == js[0]["fact"]);
}

TEST_CASE("rl-direct mode on the benchmark formula") {
  auto r = invoke({"--mode", "rl", model("benchmark.rl"), "--emit", "fa,rl"});
  CHECK(r.status == cli::Ok);
  CHECK(r.out.find("fa goal: id ⊆ R·S°\n") != std::string::npos);
  CHECK(r.out.find("rl goal: ⟨∀ 1") != std::string::npos);
  auto js = summaries(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["operators"] == 2);
  CHECK(js[0]["translation"]["verdict"] == "PASS");
  // Empty relations refute it, and the summary says where.
  CHECK(js[0]["goal"]["verdict"] == "FAIL");
  CHECK(js[0]["goal"]["counterexample"].get<std::string>().find("R = {}") != std::string::npos);
  auto raw = invoke({"--mode", "rl", model("benchmark.rl"), "--emit", "fa", "--no-heuristics"});
  CHECK(raw.status == cli::Ok);
  CHECK(summaries(raw.out)[0]["operators"].get<int>() > 20);
}

TEST_CASE("some R means R is nonempty") {
  auto res = pipeline::run("rel R : A -> B;\nsome R\n", {pipeline::Mode::RlDirect});
  REQUIRE(res.assertions.size() == 1);
  auto v = testsupport::untyped({{"R", 2}});
  oracle::CheckOptions opt;
  opt.exhaustiveCap = 1u << 20;
  auto nonempty = [](int) { return [](const oracle::FiniteModel& m) { return !m.rels[0].empty(); }; };
  auto r = oracle::checkEquiv(v, oracle::faProperty(res.assertions[0].fact), nonempty, opt);
  CHECK((r.verdict == oracle::Verdict::Pass));
}

TEST_CASE("one Prover9 file per assertion") {
  auto dir = scratch("multi");
  auto src = dir / "two.als";
  std::ofstream(src) << "sig A { r : set A }\nassert refl { all a : A | a in a.r }\nassert sym { r = ~r }\n";
  auto r = invoke({src.string(), "--out", dir.string(), "--emit", "p9"});
  CHECK(r.status == cli::Ok);
  CHECK(fs::exists(dir / "two-refl.p9"));
  CHECK(fs::exists(dir / "two-sym.p9"));
  CHECK(!fs::exists(dir / "two.tex"));
  auto js = summaries(r.out);
  REQUIRE(js.size() == 2);
  CHECK(js[0]["assertion"] == "refl");
  CHECK(js[1]["assertion"] == "sym");
  CHECK(js[0]["goal"]["verdict"] == "FAIL");
}

TEST_CASE("exit statuses") {
  CHECK(invoke({"/nonexistent/file.als"}).status == cli::UserError);
  CHECK(invoke({model("university.als"), "--emit", "pdf"}).status == cli::UserError);
  CHECK(invoke({model("university.als"), "--oracle-bound", "-1"}).status == cli::UserError);
  CHECK(invoke({}).status == cli::UserError);
  auto dir = scratch("errors");
  std::ofstream(dir / "bad.als") << "sig A { r : set A }\nassert { r in A }\n";
  auto bad = invoke({(dir / "bad.als").string(), "--out", dir.string()});
  CHECK(bad.status == cli::UserError);
  CHECK(bad.err.find("bad.als:2:") != std::string::npos);
  CHECK(invoke({model("university.als"), "--budget", "5", "--emit", "fa"}).status == cli::BudgetExhausted);
  auto off = invoke({model("university.als"), "--no-oracle", "--emit", "fa"});
  CHECK(off.status == cli::Ok);
  CHECK(summaries(off.out)[0]["translation"] == "SKIPPED");
}

TEST_CASE("a user template is honoured") {
  auto dir = scratch("template");
  auto r = invoke({model("university.als"), "--out", dir.string(), "--emit", "p9", "--no-oracle", "--template",
                std::string(ALLOYFA_SOURCE_DIR) + "/share/prover9.tmpl"});
  CHECK(r.status == cli::Ok);
  auto p9 = slurp(dir / "university.p9");
  CHECK(p9.find("assign(max_seconds, 300).") != std::string::npos);
  CHECK(emit::selfParse(p9).goals.size() == 1);
}
