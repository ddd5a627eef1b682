from dataclasses import replace

import pytest

from hyperdyn.config import Budget
from hyperdyn.detectors import Verdict
from hyperdyn.exceptions import SpecError
from hyperdyn.harness.catalog import load_catalog
from hyperdyn.harness.suite import Status, TheoremSuite, arrow_status, hypothesis_gate, run_theorem_suite
from hyperdyn.harness.theorems import Arrow, ArrowKind, Level, Statement, select_theorems

HOLDS = Verdict.holds("h")
FAILS = Verdict.fails("f")
TENTATIVE_HOLDS = Verdict.holds("h?", definitive=False, reason="horizon-truncated")
TENTATIVE_FAILS = Verdict.fails("f?", definitive=False, reason="horizon-truncated")
UNKNOWN = Verdict.unknown("no construction")

IMPLIES = Arrow(Statement(Level.PRODUCT, "sensitive"), Statement(Level.BASE, "sensitive"))
SEPARATES = Arrow(Statement(Level.BASE, "touhey"), Statement(Level.PRODUCT, "touhey"), ArrowKind.SEPARATION)


@pytest.mark.parametrize(
    "premise, conclusion, expected",
    [
        (HOLDS, FAILS, Status.COUNTEREXAMPLE),
        (HOLDS, HOLDS, Status.CONSISTENT),
        (FAILS, FAILS, Status.CONSISTENT),
        (FAILS, UNKNOWN, Status.CONSISTENT),
        (UNKNOWN, HOLDS, Status.CONSISTENT),
        (TENTATIVE_HOLDS, FAILS, Status.INCONCLUSIVE),
        (HOLDS, TENTATIVE_FAILS, Status.INCONCLUSIVE),
        (UNKNOWN, FAILS, Status.INCONCLUSIVE),
        (HOLDS, UNKNOWN, Status.INCONCLUSIVE),
    ],
)
def test_implication_status(premise, conclusion, expected):
    status, _ = arrow_status(IMPLIES, premise, conclusion)
    assert status is expected


def test_only_definitive_verdicts_refute():
    for premise in (HOLDS, TENTATIVE_HOLDS, UNKNOWN):
        for conclusion in (FAILS, TENTATIVE_FAILS, UNKNOWN):
            status, _ = arrow_status(IMPLIES, premise, conclusion)
            refuted = premise.definitive and conclusion.definitive
            assert (status is Status.COUNTEREXAMPLE) == refuted


def test_inconclusive_names_the_reason():
    _, witness = arrow_status(IMPLIES, TENTATIVE_HOLDS, FAILS)
    assert witness == "horizon-truncated"


def test_separation_status():
    assert arrow_status(SEPARATES, HOLDS, FAILS) == (Status.WITNESSED, "h; but f")
    assert arrow_status(SEPARATES, HOLDS, HOLDS)[0] is Status.UNWITNESSED
    assert arrow_status(SEPARATES, TENTATIVE_HOLDS, FAILS)[0] is Status.UNWITNESSED


@pytest.fixture(scope="module")
def small_catalog():
    return load_catalog("rot4,rot5,id2,collapse3,const3")


def test_sensitivity_on_the_default_catalog():
    report = run_theorem_suite(load_catalog("default"), "T1", (2,))
    assert not report.counterexamples()
    assert len(report.results) == 11


def test_mixing_family_on_a_rotation(small_catalog):
    report = run_theorem_suite(small_catalog.select(["rot5"]), "T12", (2,))
    (result,) = report.results
    assert result.status is Status.CONSISTENT
    assert len(result.rows) == 42


def test_mixing_family_on_the_shift():
    report = run_theorem_suite(load_catalog("shift2"), "T12", (2,))
    assert not report.counterexamples()
    verdicts = report.rows()[0].verdicts
    assert verdicts["base:weakly_mixing"].holds_definitively


def test_finite_stand_ins_do_not_meet_the_hypotheses(small_catalog):
    (t14,) = select_theorems("T14")
    entry = small_catalog["rot5"]
    assert hypothesis_gate(t14, entry) == "rot5 is a finite stand-in with isolated points"
    result = TheoremSuite(small_catalog).check(t14, entry, 2)
    assert result.status is Status.HYPOTHESIS_NOT_MET
    assert {row.status for row in result.rows} == {Status.HYPOTHESIS_NOT_MET}


def test_bijection_gate(small_catalog):
    (t22,) = select_theorems("T22")
    gated = replace(t22, requires_bijection=True)
    assert hypothesis_gate(gated, small_catalog["collapse3"]) == "collapse3 is not a bijection"
    assert hypothesis_gate(gated, small_catalog["rot5"]) == ""
    assert hypothesis_gate(t22, small_catalog["collapse3"]) == ""


def test_pointwise_rows_name_a_point(small_catalog):
    report = run_theorem_suite(small_catalog.select(["collapse3"]), "T6", (2,))
    assert not report.counterexamples()
    assert all(row.witness.startswith("A={") for row in report.rows())


def test_base_verdicts_are_shared_across_n(small_catalog):
    suite = TheoremSuite(small_catalog.select(["rot4"]))
    run_theorem_suite(suite.catalog, "T1", (2, 3), suite=suite)
    base_keys = [key for key in suite.cache if key[2] is Level.BASE]
    assert base_keys == [("rot4", None, Level.BASE, "sensitive", None)]


def test_report_is_ordered_and_counted(small_catalog):
    report = run_theorem_suite(small_catalog, "T8,T1", (3, 2), Budget(horizon=8))
    keys = [(result.theorem, result.system, result.n) for result in report.results]
    assert keys == sorted(keys, key=lambda key: (int(key[0][1:]), key[1], key[2]))
    assert keys[0] == ("T1", "collapse3", 2)
    assert report.budget["horizon"] == 8
    assert sum(report.status_counts().values()) == len(report.rows())
    assert report.verdict_counts()["base:sensitive=fails"] == 5 * 2


@pytest.mark.parametrize("n_values", [(1,), (0, 2)])
def test_n_below_two(small_catalog, n_values):
    with pytest.raises(SpecError):
        run_theorem_suite(small_catalog, "T1", n_values)
