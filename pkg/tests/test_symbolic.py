import pytest

from hyperdyn.config import Budget
from hyperdyn.detectors import (
    Outcome,
    classify_point,
    detect_global,
    detect_sensitivity,
    detect_transitivity,
    hitting_times,
    omega_limit,
)
from hyperdyn.detectors import symbolic
from hyperdyn.detectors.symbolic import cylinder_hitting_times, shift_verdict, stream_visits
from hyperdyn.exceptions import UnsupportedBackendError
from hyperdyn.hyperspace import ShiftProduct
from hyperdyn.shift import ShiftPoint, full_shift
from hyperdyn.suspension import build_shift_suspension


@pytest.fixture
def short_shift():
    return full_shift(2, 2)


def test_cylinder_hitting_times(shift2):
    times = hitting_times(shift2, "0", "1")
    assert times.members(5) == [1, 2, 3, 4, 5]
    assert times.cofinite_from() == 1
    # 010 shifted once starts with 10, shifted twice with 0
    assert cylinder_hitting_times("010", "1").members(4) == [1, 3, 4]


@pytest.mark.parametrize(
    "prop",
    [
        "sensitive",
        "cofinite_sensitive",
        "mixing",
        "weakly_mixing",
        "transitive",
        "tt_plus_plus",
        "touhey",
        "fully_exact",
        "strongly_transitive",
        "totally_transitive",
        "f_system",
        "omega_full",
        "transitive_points_dense",
        "martelli",
        "accessible",
    ],
)
def test_base_shift_holds_definitively(shift2, prop):
    assert shift_verdict(shift2, prop).holds_definitively


def test_detectors_route_to_the_shift(shift2, budget):
    assert detect_sensitivity(shift2, "plain", budget).witness.startswith("delta=1/2")
    assert detect_transitivity(shift2, "mixing", budget).holds_definitively
    assert detect_global(shift2, "minimal", budget).fails_definitively
    assert detect_transitivity(shift2, "two_sided", budget).fails_definitively


def test_tentative_shift_verdicts(shift2, budget):
    multi = detect_sensitivity(shift2, "multi", budget)
    assert multi.is_holds and not multi.definitive
    assert detect_transitivity(shift2, "multi_transitive", budget).definitive is False


def test_unknown_without_a_construction(short_shift):
    assert shift_verdict(short_shift, "no_such_property").outcome is Outcome.UNKNOWN
    assert shift_verdict(ShiftProduct(short_shift, 2), "weakly_mixing").outcome is Outcome.UNKNOWN


def test_product_and_suspension_are_transitive(short_shift, budget):
    product = ShiftProduct(short_shift, 2)
    assert detect_transitivity(product, "transitive", budget).holds_definitively
    suspension = build_shift_suspension(product)
    assert detect_transitivity(suspension, "transitive", budget).holds_definitively
    assert detect_transitivity(suspension, "z_transitive", budget).holds_definitively


def test_point_classes(shift2, budget):
    tail = ShiftPoint.of("0", "1")
    assert classify_point(shift2, tail, "periodic", budget).fails_definitively
    assert classify_point(shift2, tail.shift(1), "periodic", budget).holds_definitively
    assert classify_point(shift2, shift2.enumeration_stream(), "transitive_point", budget).holds_definitively
    assert classify_point(shift2, tail, "transitive_point", budget).fails_definitively


def test_omega_limit(shift2):
    assert omega_limit(shift2, ShiftPoint.of("0", "1")) == {ShiftPoint.of("", "1")}
    assert omega_limit(shift2, ShiftPoint.of("", "01")) == {ShiftPoint.of("", "01"), ShiftPoint.of("", "10")}
    with pytest.raises(UnsupportedBackendError):
        omega_limit(shift2, shift2.enumeration_stream())


def test_budget_does_not_change_shift_verdicts(shift2):
    tight = Budget(horizon=1, m_max=1)
    assert detect_transitivity(shift2, "mixing", tight) == detect_transitivity(shift2, "mixing", Budget())


def test_stream_visits(short_shift):
    # 01 | 00 01 10 11 | 000 001 010 011 100 101 110 111
    assert stream_visits(short_shift, "11") == [5, 8, 20, 21, 27, 28, 31, 32]
    assert stream_visits(short_shift, "11", 22)[:4] == [27, 28, 31, 32]


@pytest.mark.parametrize("prop", ["fully_exact", "strongly_transitive", "totally_transitive", "f_system"])
def test_constructions_that_do_not_replay_are_unknown(short_shift, monkeypatch, prop):
    monkeypatch.setattr(symbolic, "_linked", lambda *args: False)
    verdict = shift_verdict(short_shift, prop)
    assert verdict.outcome is Outcome.UNKNOWN
    assert verdict.reason.startswith("construction did not verify")


def test_stream_point_classes(shift2, budget):
    stream = shift2.enumeration_stream()
    assert classify_point(shift2, stream, "recurrent", budget).holds_definitively
    assert classify_point(shift2, stream.shift(7), "transitive_point", budget).holds_definitively
