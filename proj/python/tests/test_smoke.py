from pathlib import Path

import pytest

import alloyfa

MODELS = Path(__file__).resolve().parents[2] / "models"


def source(name):
    return (MODELS / name).read_text()


def test_benchmark_with_heuristics():
    out = alloyfa.translate(source("benchmark.rl"), mode="rl")
    (goal,) = out["assertions"]
    assert goal["fact"] == "id ⊆ R·S°"
    assert goal["operators"] == 2


def test_without_heuristics_is_longer():
    raw = alloyfa.translate(source("benchmark.rl"), mode="rl", heuristics=False)
    assert raw["assertions"][0]["operators"] > 20


def test_university_goal_holds():
    (res,) = alloyfa.check(source("university.als"), bound=2)
    assert res["translation"]["verdict"] == "PASS"
    assert res["goal"]["verdict"] == "PASS"
    assert res["goal"]["models"] > 0


def test_benchmark_goal_is_refuted():
    (res,) = alloyfa.check(source("benchmark.rl"), mode="rl", bound=2)
    assert res["translation"]["verdict"] == "PASS"
    assert res["goal"]["verdict"] == "FAIL"
    assert "counterexample" in res["goal"]


def test_declarations():
    decls = dict(alloyfa.translate(source("university.als"))["declarations"])
    assert decls["multiplicity"] == "id ⊆ lecturer·lecturer°"


def test_prover9_round_trip():
    text = alloyfa.prover9(source("university.als"))
    assert "set(prolog_style_variables)." in text
    doc = alloyfa.read_prover9(text)
    assert len(doc["goals"]) == 1
    assert len(doc["assumptions"]) > 40


def test_latex_document():
    doc = alloyfa.latex(source("benchmark.rl"), mode="rl", abbreviate=True)
    assert doc.startswith("\\documentclass")
    assert "\\end{document}" in doc


def test_laws():
    verdicts = alloyfa.check_laws(bound=2)
    assert verdicts
    assert all(v["verdict"] == "PASS" for v in verdicts.values())


def test_errors_carry_positions():
    with pytest.raises(alloyfa.AlloyError) as err:
        alloyfa.translate("sig A {}\nfact { some A.A }")
    assert err.value.line == 2
    with pytest.raises(ValueError):
        alloyfa.translate("sig A {}", mode="nope")
    with pytest.raises(KeyError):
        alloyfa.prover9(source("university.als"), assertion="missing")
