#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "alloyfa/emit.hpp"
#include "alloyfa/pipeline.hpp"
#include "alloyfa/rl2fa.hpp"
#include "alloyfa/strategy.hpp"
#include "json.hpp"

namespace alloyfa::cli {

namespace fs = std::filesystem;

namespace {

struct Config {
  std::string input;
  std::string mode = "alloy";
  bool noHeuristics = false;
  std::vector<std::string> emit{"p9", "tex"};
  int bound = 3;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0x5eed;
  std::uint64_t cap = 1u << 20;
  long budget = 10000;
  bool abbrev = false;
  std::string out = ".";
  bool noOracle = false;
  std::string templ;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream o(p, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + p.string());
  o << text;
}

std::string fileSafe(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out;
}

nlohmann::json verdictJson(const oracle::CheckResult& r) {
  nlohmann::json j{{"verdict", oracle::toString(r.verdict)}, {"models", r.models}};
  if (!r.ok()) j["counterexample"] = r.counterexample;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Translates Alloy models and relational logic formulas into fork algebra", "alloyfa"};
  app.add_option("input", cfg.input, "Alloy model, or rl-direct source with --mode rl")->required();
  app.add_option("--mode", cfg.mode, "Input language")->check(CLI::IsMember({"alloy", "rl"}));
  app.add_flag("--no-heuristics", cfg.noHeuristics, "Use the raw translation");
  app.add_option("--emit", cfg.emit, "Outputs: p9, tex, rl, fa")
      ->delimiter(',')
      ->check(CLI::IsMember({"p9", "tex", "rl", "fa"}));
  app.add_option("--oracle-bound", cfg.bound, "Largest universe checked")->check(CLI::NonNegativeNumber);
  app.add_option("--oracle-samples", cfg.samples, "Models drawn when a universe is too large to enumerate");
  app.add_option("--seed", cfg.seed, "Sampling seed");
  app.add_option("--oracle-cap", cfg.cap, "Largest model count enumerated exhaustively per universe size");
  app.add_option("--budget", cfg.budget, "Rewrite steps per formula")->check(CLI::PositiveNumber);
  app.add_flag("--abbrev", cfg.abbrev, "Abbreviate names in LaTeX output");
  app.add_option("--out", cfg.out, "Directory for .p9 and .tex files");
  app.add_flag("--no-oracle", cfg.noOracle, "Skip the finite-model checks");
  app.add_option("--template", cfg.templ, "Prover9 template file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return UserError;
  }
  if (cfg.emit.empty()) {
    err << "error: --emit needs at least one output\n";
    return UserError;
  }
  std::set<std::string> wanted(cfg.emit.begin(), cfg.emit.end());

  pipeline::Options popt;
  popt.mode = cfg.mode == "rl" ? pipeline::Mode::RlDirect : pipeline::Mode::Alloy;
  popt.heuristics = !cfg.noHeuristics;
  popt.budget = cfg.budget;
  popt.record = wanted.count("tex") > 0;

  pipeline::Result res;
  std::string tmpl = emit::defaultTemplate();
  try {
    auto src = slurp(cfg.input);
    if (!cfg.templ.empty()) tmpl = slurp(cfg.templ);
    res = pipeline::run(src, popt);
  } catch (const alloy::AlloyError& e) {
    err << cfg.input << ":" << e.what() << "\n";
    return UserError;
  } catch (const fa::ArityError& e) {
    err << cfg.input << ": " << e.what() << "\n";
    return UserError;
  } catch (const strategy::BudgetExceeded& e) {
    err << cfg.input << ": " << e.what() << "\n";
    return BudgetExhausted;
  } catch (const rl2fa::NonConvergence& e) {
    err << cfg.input << ": " << e.what() << "\n";
    return BudgetExhausted;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return UserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return UserError;
  }

  if (wanted.count("rl"))
    for (const auto* list : {&res.facts, &res.assertions})
      for (const auto& t : *list) out << "rl " << t.name << ": " << rl::toString(t.formula) << "\n";
  if (wanted.count("fa")) {
    for (const auto& f : res.declarations) out << "fa " << f.label << ": " << fa::toString(f) << "\n";
    for (const auto* list : {&res.facts, &res.assertions})
      for (const auto& t : *list) out << "fa " << t.name << ": " << fa::toString(t.fact) << "\n";
  }

  int status = Ok;
  oracle::CheckOptions copt;
  copt.bound = cfg.bound;
  copt.samples = cfg.samples;
  copt.seed = cfg.seed;
  copt.exhaustiveCap = cfg.cap;
  for (const auto& t : res.facts) {
    if (cfg.noOracle) break;
    auto r = pipeline::checkTranslation(res, t, copt);
    if (!r.ok()) {
      err << "fact " << t.name << ": translation FAIL on " << r.counterexample << "\n";
      status = OracleFailure;
    }
  }

  fs::path dir(cfg.out);
  std::string stem = fs::path(cfg.input).stem().string();
  try {
    if ((wanted.count("p9") || wanted.count("tex")) && !dir.empty()) fs::create_directories(dir);
    for (const auto& t : res.assertions) {
      nlohmann::json line{{"assertion", t.name},
                          {"shape", t.fact.kind == fa::Fact::Kind::Eq ? "equation" : "inclusion"},
                          {"operators", fa::countOps(t.fact)},
                          {"steps", t.steps},
                          {"fact", fa::toString(t.fact)}};
      if (cfg.noOracle) {
        line["translation"] = "SKIPPED";
        line["goal"] = "SKIPPED";
      } else {
        auto tr = pipeline::checkTranslation(res, t, copt);
        auto goal = pipeline::checkGoal(res, t, copt);
        line["translation"] = verdictJson(tr);
        line["goal"] = verdictJson(goal);
        line["bound"] = cfg.bound;
        line["seed"] = cfg.seed;
        if (!tr.ok()) status = OracleFailure;
      }
      if (wanted.count("p9")) {
        auto name = res.assertions.size() == 1 ? stem + ".p9" : stem + "-" + fileSafe(t.name) + ".p9";
        write(dir / name, emit::emitProver9(res.hypotheses(), t.fact, tmpl));
        line["p9"] = (dir / name).string();
      }
      out << line.dump() << "\n";
    }
    if (res.assertions.empty()) err << cfg.input << ": no assertions\n";
    if (wanted.count("tex")) {
      std::vector<emit::Derivation> ds;
      auto finals = res.hypotheses();
      for (const auto* list : {&res.facts, &res.assertions})
        for (const auto& t : *list) ds.push_back({t.name, t.trace});
      for (const auto& t : res.assertions) finals.push_back(t.fact);
      emit::LatexOptions lo;
      lo.abbreviate = cfg.abbrev;
      write(dir / (stem + ".tex"), emit::emitLatex(ds, finals, lo));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return UserError;
  }
  return status;
}

}  // namespace alloyfa::cli
