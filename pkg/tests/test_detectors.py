import math
from fractions import Fraction

import pytest

from hyperdyn.config import Budget
from hyperdyn.detectors import (
    GlobalKind,
    HittingTimeSet,
    Outcome,
    PointKind,
    SensitivityKind,
    Verdict,
    classify_point,
    detect_accessible,
    detect_global,
    detect_indecomposable,
    detect_sensitivity,
    detect_transitivity,
    hitting_times,
    omega_limit,
)
from hyperdyn.detectors.global_props import ARCTAN_CAP, martelli_threshold
from hyperdyn.detectors.hitting import quantifier_sets
from hyperdyn.dynsys import Backend, Direction, finite_rotation, finite_system
from hyperdyn.harness.catalog import default_catalog
from hyperdyn.harness.enumeration import all_endomaps
from hyperdyn.harness.properties import LevelView, evaluate
from hyperdyn.harness.theorems import Level
from hyperdyn.hyperspace import build_symmetric_product


def _s(*points):
    return frozenset(points)


class TestHittingTimes:
    def test_rotation(self, rot5):
        times = hitting_times(rot5, _s(0), _s(2))
        assert times.exact
        assert times.members(12) == [2, 7, 12]
        assert 3 not in times
        assert times.period == 5

    def test_zero_is_never_a_hitting_time(self, rot5):
        times = hitting_times(rot5, _s(0), _s(0))
        assert 0 not in times
        assert 5 in times
        assert times.first() == 5

    def test_preimage_variant(self, tail_map):
        times = hitting_times(tail_map, _s(0), _s(2), Direction.PREIMAGE)
        assert times.members(6) == [2, 4, 6]

    def test_transient_hits(self, tail_map):
        times = hitting_times(tail_map, _s(0), _s(1))
        assert times.members(7) == [1, 3, 5, 7]
        assert hitting_times(tail_map, _s(1), _s(0)).is_empty

    def test_grid_systems_are_truncated(self, doubling729):
        times = hitting_times(doubling729, _s(1), _s(256), horizon=10)
        assert not times.exact
        assert 8 in times
        assert 18 not in times
        assert str(times).endswith("(n <= 10)")

    def test_intersection_is_exact(self, rot5):
        to_two, to_three = hitting_times(rot5, _s(0), _s(2)), hitting_times(rot5, _s(0), _s(3))
        assert to_two.intersect(to_three).is_empty
        assert to_two.intersect(to_two).members(12) == [2, 7, 12]

    def test_cofinite(self):
        times = HittingTimeSet(frozenset({2}), 4, 2, frozenset({0, 1}))
        assert times.is_cofinite
        assert times.cofinite_from() == 4
        assert HittingTimeSet(frozenset({3}), 4, 1, frozenset({0})).cofinite_from() == 3

    def test_tail_start(self):
        assert HittingTimeSet(frozenset({2}), 4, 2, frozenset({0, 1})).tail_start() == 4
        assert HittingTimeSet.truncated(range(4, 11), 10).tail_start() == 4
        assert HittingTimeSet.truncated(range(8, 11), 10).tail_start() is None
        assert HittingTimeSet.truncated(range(1, 10), 10).tail_start() is None


class TestSensitivity:
    @pytest.mark.parametrize("kind", list(SensitivityKind))
    def test_rotations_are_not_sensitive(self, kind, budget):
        verdict = detect_sensitivity(finite_rotation(6, 1), kind, budget)
        assert verdict.fails_definitively

    def test_rotation_fails_above_the_resolution(self, rot5):
        budget = Budget(delta_grid=(Fraction(1, 4), Fraction(1, 3)))
        assert detect_sensitivity(rot5, SensitivityKind.PLAIN, budget).fails_definitively

    def test_grid_doubling_is_sensitive(self, doubling729):
        budget = Budget(horizon=10, delta_grid=(Fraction(1, 4),))
        verdict = detect_sensitivity(doubling729, SensitivityKind.PLAIN, budget)
        assert verdict.is_holds
        assert not verdict.definitive
        assert verdict.reason == "horizon-truncated"
        assert verdict.witness.startswith("delta=1/4")

    def test_coarse_basis_makes_a_finite_map_sensitive(self):
        # the minimal basis sets are arcs of three points, and doubling spreads every arc
        sys = finite_system("double9", [2 * i % 9 for i in range(9)], basis_resolution=Fraction(1, 2))
        assert detect_sensitivity(sys, SensitivityKind.PLAIN, Budget()).holds_definitively

    def test_multi_sensitive_holds_only_tentatively(self):
        sys = finite_system("double9", [2 * i % 9 for i in range(9)], basis_resolution=Fraction(1, 2))
        verdict = detect_sensitivity(sys, SensitivityKind.MULTI, Budget())
        assert verdict.is_holds
        assert not verdict.definitive


class TestTransitivity:
    def test_rotation(self, rot5, budget):
        assert detect_transitivity(rot5, "transitive", budget).holds_definitively
        verdict = detect_transitivity(rot5, "weakly_mixing", budget)
        assert verdict.fails_definitively
        assert "f^n({0})∩{1}" in verdict.witness
        assert detect_transitivity(rot5, "mixing", budget).fails_definitively

    def test_rotation_is_not_totally_transitive(self, rot5, budget):
        verdict = detect_transitivity(rot5, "totally_transitive", budget)
        assert verdict.fails_definitively
        assert verdict.witness.startswith("f^5 is not transitive")

    def test_strong_transitivity_reports_m(self, rot5, budget):
        verdict = detect_transitivity(rot5, "strongly_transitive", budget)
        assert verdict.holds_definitively
        assert verdict.witness.startswith("M=5")

    def test_rotation_product_is_not_transitive(self, rot5, budget):
        product = build_symmetric_product(rot5, 2).system
        assert detect_transitivity(product, "transitive", budget).fails_definitively

    def test_z_transitivity(self, rot5, id2, budget):
        assert detect_transitivity(rot5, "z_transitive", budget).holds_definitively
        assert detect_transitivity(id2, "z_transitive", budget).fails_definitively

    def test_two_sided_needs_a_bijection(self, rot5, tail_map, budget):
        assert detect_transitivity(rot5, "two_sided", budget).holds_definitively
        verdict = detect_transitivity(tail_map, "two_sided", budget)
        assert verdict.fails_definitively
        assert "bijection" in verdict.witness

    def test_tt_plus_plus_and_fully_exact(self, rot5, budget):
        assert detect_transitivity(rot5, "tt_plus_plus", budget).holds_definitively
        assert detect_transitivity(rot5, "fully_exact", budget).fails_definitively

    @pytest.mark.parametrize("kind", ["multi_transitive", "delta_transitive", "delta_mixing"])
    def test_bounded_arity_failures_are_exact(self, rot5, budget, kind):
        assert detect_transitivity(rot5, kind, budget).fails_definitively

    @pytest.mark.parametrize("kind", ["multi_transitive", "delta_transitive"])
    def test_bounded_arity_holds_stay_tentative(self, kind):
        verdict = detect_transitivity(finite_system("fixed", (0,)), kind, Budget())
        assert verdict.outcome is Outcome.HOLDS
        assert not verdict.definitive


class TestPoints:
    @pytest.mark.parametrize("kind", ["periodic", "quasi_periodic", "recurrent", "nonwandering"])
    def test_fixed_point(self, id2, budget, kind):
        assert classify_point(id2, 0, kind, budget).holds_definitively

    @pytest.mark.parametrize("kind", ["periodic", "quasi_periodic", "recurrent", "nonwandering"])
    def test_transient_point(self, tail_map, budget, kind):
        assert classify_point(tail_map, 0, kind, budget).fails_definitively

    def test_omega_limit(self, tail_map):
        assert omega_limit(tail_map, 0) == {1, 2}

    def test_transitive_point(self, rot5, id2, budget):
        assert classify_point(rot5, 3, PointKind.TRANSITIVE_POINT, budget).holds_definitively
        verdict = classify_point(id2, 0, PointKind.TRANSITIVE_POINT, budget)
        assert verdict.fails_definitively
        assert verdict.witness == "orbit of 0 misses {1}"


class TestGlobal:
    def test_rotation(self, rot5, budget):
        assert detect_global(rot5, GlobalKind.MINIMAL, budget).holds_definitively
        assert detect_global(rot5, GlobalKind.TOUHEY, budget).holds_definitively
        assert detect_global(rot5, GlobalKind.F_SYSTEM, budget).fails_definitively
        assert detect_global(rot5, GlobalKind.OMEGA_FULL, budget).holds_definitively
        assert detect_global(rot5, GlobalKind.TRANSITIVE_POINTS_DENSE, budget).holds_definitively

    def test_finite_systems_are_not_martelli(self, rot5, budget):
        # every neighbourhood of a transitive point is that point alone
        assert detect_global(rot5, GlobalKind.MARTELLI, budget).fails_definitively

    def test_accessibility(self, id2, rot4):
        assert detect_accessible(id2, Budget(eps_grid=(Fraction(1, 2),))).fails_definitively
        assert detect_accessible(rot4, Budget()).fails_definitively
        assert detect_accessible(finite_system("const", (0, 0, 0)), Budget()).holds_definitively

    def test_indecomposability(self, rot4, id2, doubling729):
        assert detect_indecomposable(rot4).holds_definitively
        verdict = detect_indecomposable(id2)
        assert verdict.fails_definitively
        assert "{0}" in verdict.witness and "{1}" in verdict.witness
        assert detect_indecomposable(doubling729).outcome is Outcome.UNKNOWN

    def test_omega_full_fails_off_the_cycle(self, tail_map, budget):
        assert detect_global(tail_map, GlobalKind.OMEGA_FULL, budget).fails_definitively

    def test_martelli_threshold_bounds_arctan(self):
        assert martelli_threshold(Fraction(1, 2)) == Fraction(223, 480)
        assert martelli_threshold(Fraction(3)) == ARCTAN_CAP

    @pytest.mark.parametrize("delta", [Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(3), Fraction(100)])
    def test_martelli_threshold_is_never_below_arctan(self, delta):
        assert martelli_threshold(delta) >= Fraction(math.atan(delta))


def test_verdict_round_trip():
    verdict = Verdict.fails("orbit misses {1}", definitive=False, reason="horizon-truncated")
    assert Verdict.from_dict(verdict.to_dict()) == verdict
    assert str(verdict) == "Fails? (orbit misses {1})"
    assert Verdict.holds().tentative("arity").definitive is False


FINITE_BIJECTIONS = [
    entry.system
    for entry in default_catalog().values()
    if entry.system.backend is Backend.FINITE and entry.system.is_bijection
]


@pytest.mark.parametrize("sys", FINITE_BIJECTIONS, ids=lambda sys: sys.name)
def test_forward_and_preimage_hits_agree_on_bijections(sys):
    limit = 3 * sys.size
    basis = quantifier_sets(sys)
    for U in basis:
        for V in basis:
            forward = hitting_times(sys, U, V)
            backward = hitting_times(sys, U, V, Direction.PREIMAGE)
            assert forward.members(limit) == backward.members(limit), (U, V)


STRONGER_THAN = [
    ("mixing", "weakly_mixing"),
    ("weakly_mixing", "transitive"),
    ("cofinite_sensitive", "sensitive"),
]


def _monotone_cases():
    finite = [entry for entry in default_catalog().values() if entry.system.backend is Backend.FINITE]
    cases = [
        pytest.param(entry.name, entry.system, level, id=f"{entry.name}-{level.value}")
        for entry in finite
        for level in Level
    ]
    cases += [
        pytest.param(entry.name, entry.system, level, id=f"{entry.name}-{level.value}")
        for entry in all_endomaps(3).values()
        for level in (Level.BASE, Level.PRODUCT)
    ]
    return cases


@pytest.mark.parametrize("name, sys, level", _monotone_cases())
def test_stronger_properties_imply_weaker_ones(name, sys, level, budget):
    view = LevelView(name, sys, 2)
    for stronger, weaker in STRONGER_THAN:
        strong = evaluate(view, level, stronger, budget)
        weak = evaluate(view, level, weaker, budget)
        assert not (strong.holds_definitively and weak.fails_definitively), (stronger, weaker)
