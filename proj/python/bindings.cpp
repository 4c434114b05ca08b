#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alloyfa/alloy.hpp"
#include "alloyfa/emit.hpp"
#include "alloyfa/laws.hpp"
#include "alloyfa/pipeline.hpp"
#include "alloyfa/rl2fa.hpp"
#include "alloyfa/strategy.hpp"
#include "alloyfa/symbolic.hpp"

namespace py = pybind11;
using namespace alloyfa;

namespace {

pipeline::Options options(const std::string& mode, bool heuristics, long budget) {
  pipeline::Options o;
  if (mode == "rl")
    o.mode = pipeline::Mode::RlDirect;
  else if (mode != "alloy")
    throw py::value_error("mode must be 'alloy' or 'rl'");
  o.heuristics = heuristics;
  o.budget = budget;
  o.record = false;
  return o;
}

py::dict verdict(const oracle::CheckResult& r) {
  py::dict d;
  d["verdict"] = oracle::toString(r.verdict);
  d["models"] = r.models;
  if (!r.counterexample.empty()) d["counterexample"] = r.counterexample;
  return d;
}

py::dict translated(const pipeline::Translated& t) {
  py::dict d;
  d["name"] = t.name;
  d["fact"] = fa::toString(t.fact);
  d["operators"] = fa::countOps(t.fact);
  d["steps"] = t.steps;
  return d;
}

const pipeline::Translated& pick(const pipeline::Result& r, const std::string& name) {
  if (r.assertions.empty()) throw py::value_error("the model has no assertions");
  if (name.empty()) return r.assertions.front();
  for (const auto& a : r.assertions)
    if (a.name == name) return a;
  throw py::key_error("no assertion named " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Alloy to fork-algebra translation";

  // Leaked on purpose: the type lives as long as the interpreter.
  static py::handle alloyError = py::exception<alloy::AlloyError>(m, "AlloyError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const alloy::AlloyError& e) {
      py::object err = py::reinterpret_borrow<py::object>(alloyError)(py::str(e.what()));
      err.attr("line") = e.pos.line;
      err.attr("col") = e.pos.col;
      PyErr_SetObject(alloyError.ptr(), err.ptr());
    } catch (const fa::ArityError& e) {
      PyErr_SetString(alloyError.ptr(), e.what());
    } catch (const strategy::BudgetExceeded& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const rl2fa::NonConvergence& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const emit::ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "translate",
      [](const std::string& source, const std::string& mode, bool heuristics, long budget) {
        auto r = pipeline::run(source, options(mode, heuristics, budget));
        py::dict d;
        py::list decls, facts, asserts;
        for (const auto& f : r.declarations) decls.append(py::make_tuple(f.label, fa::toString(f)));
        for (const auto& t : r.facts) facts.append(translated(t));
        for (const auto& t : r.assertions) asserts.append(translated(t));
        d["declarations"] = decls;
        d["facts"] = facts;
        d["assertions"] = asserts;
        return d;
      },
      py::arg("source"), py::arg("mode") = "alloy", py::arg("heuristics") = true, py::arg("budget") = 10000,
      "Translate every fact block and assertion of a model.");

  m.def(
      "check",
      [](const std::string& source, const std::string& mode, bool heuristics, int bound, std::uint64_t cap,
         std::uint64_t samples, std::uint64_t seed) {
        auto r = pipeline::run(source, options(mode, heuristics, 10000));
        oracle::CheckOptions o;
        o.bound = bound;
        o.exhaustiveCap = cap;
        o.samples = samples;
        o.seed = seed;
        py::list out;
        for (const auto& t : r.assertions) {
          py::dict d = translated(t);
          d["translation"] = verdict(pipeline::checkTranslation(r, t, o));
          d["goal"] = verdict(pipeline::checkGoal(r, t, o));
          out.append(d);
        }
        return out;
      },
      py::arg("source"), py::arg("mode") = "alloy", py::arg("heuristics") = true, py::arg("bound") = 3,
      py::arg("cap") = std::uint64_t{1} << 20, py::arg("samples") = 10000, py::arg("seed") = 0x5eed,
      "Check each assertion's translation and goal on finite models up to the bound.");

  m.def(
      "prover9",
      [](const std::string& source, const std::string& assertion, const std::string& mode, bool heuristics) {
        auto r = pipeline::run(source, options(mode, heuristics, 10000));
        return emit::emitProver9(r.hypotheses(), pick(r, assertion).fact);
      },
      py::arg("source"), py::arg("assertion") = "", py::arg("mode") = "alloy", py::arg("heuristics") = true,
      "Prover9 input for one assertion (the first when no name is given).");

  m.def(
      "read_prover9",
      [](const std::string& text) {
        auto doc = emit::selfParse(text);
        py::list as, gs;
        for (const auto& f : doc.assumptions) as.append(py::make_tuple(f.label, fa::toString(f.fact)));
        for (const auto& f : doc.goals) gs.append(py::make_tuple(f.label, fa::toString(f.fact)));
        py::dict d;
        d["assumptions"] = as;
        d["goals"] = gs;
        return d;
      },
      py::arg("text"), "Read back a document written by prover9().");

  m.def(
      "latex",
      [](const std::string& source, const std::string& mode, bool heuristics, bool abbreviate) {
        auto o = options(mode, heuristics, 10000);
        o.record = true;
        auto r = pipeline::run(source, o);
        std::vector<emit::Derivation> ds;
        auto finals = r.hypotheses();
        for (const auto* list : {&r.facts, &r.assertions})
          for (const auto& t : *list) ds.push_back({t.name, t.trace});
        for (const auto& t : r.assertions) finals.push_back(t.fact);
        emit::LatexOptions lo;
        lo.abbreviate = abbreviate;
        return emit::emitLatex(ds, finals, lo);
      },
      py::arg("source"), py::arg("mode") = "alloy", py::arg("heuristics") = true, py::arg("abbreviate") = false,
      "A LaTeX document with every derivation.");

  m.def(
      "check_laws",
      [](int bound) {
        oracle::CheckOptions o;
        o.bound = bound;
        auto all = laws::library();
        auto nary = laws::naryLaws(4);
        all.insert(all.end(), nary.begin(), nary.end());
        py::dict d;
        for (const auto& law : all) d[py::str(law.name)] = verdict(oracle::symbolic::proveLaw(law.fact, law.shapes, o));
        return d;
      },
      py::arg("bound") = 3, "Every law of the suite, checked for all assignments up to the bound.");
}
