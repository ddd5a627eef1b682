from fractions import Fraction
from itertools import combinations

import pytest

from hyperdyn.dynsys import finite_rotation, finite_system
from hyperdyn.exceptions import QuotientError, SpecError
from hyperdyn.hyperspace import ShiftProduct, build_symmetric_product
from hyperdyn.metric_core import check_metric_axioms, cycle_metric
from hyperdyn.shift import ShiftPoint
from hyperdyn.suspension import (
    COLLAPSED,
    SuspensionPoint,
    build_shift_suspension,
    build_suspension,
    check_induced_inclusion,
    induced_apply_sfn,
    iterate_sfn,
    q,
    q_inv,
    rho,
    rho_direct_oracle,
)


def _susp(sys, n=2):
    return build_suspension(build_symmetric_product(sys, n))


@pytest.fixture
def z4_rotation():
    return finite_system("z4", (1, 2, 3, 0), cycle_metric(4, unit=Fraction(1)))


def test_quotient_map():
    assert q({3}) is COLLAPSED
    assert q_inv(q({0, 2})) == frozenset({0, 2})
    with pytest.raises(QuotientError):
        q_inv(COLLAPSED)
    with pytest.raises(QuotientError):
        q(set())
    with pytest.raises(QuotientError):
        SuspensionPoint.of({1})


@pytest.mark.parametrize("size", [3, 4, 5])
def test_q_is_injective_on_multipoint_sets(size):
    susp = _susp(finite_rotation(size, 1), 3)
    classes = [q(A) for A in susp.product.elements if len(A) >= 2]
    assert len(set(classes)) == len(classes) == len(susp.points) - 1


def test_rho_examples(z4_rotation):
    susp = _susp(z4_rotation)
    a, b = q({0, 2}), q({1, 3})
    assert rho(susp, a, a) == 0
    assert rho(susp, a, COLLAPSED) == 1
    assert rho(susp, a, b) == 1
    assert rho_direct_oracle(susp, COLLAPSED, COLLAPSED) == 0


@pytest.mark.parametrize("size", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [2, 3])
def test_rho_matches_the_oracle(size, n):
    susp = _susp(finite_rotation(size, 1), n)
    for chi1, chi2 in combinations(susp.points, 2):
        assert rho(susp, chi1, chi2) == rho_direct_oracle(susp, chi1, chi2) == rho_direct_oracle(susp, chi2, chi1)


def test_rho_is_a_metric_below_hausdorff():
    susp = _susp(finite_system("m", (1, 2, 3, 3, 0)), 3)
    assert susp.metric.size == len(susp.points)
    for chi1, chi2 in combinations(susp.points[1:], 2):
        assert rho(susp, chi1, chi2) <= susp.product.metric.dist(
            susp.product.index_of(chi1.members), susp.product.index_of(chi2.members)
        )
    assert check_metric_axioms(susp.metric).ok


def test_induced_map_on_the_suspension(rot4, merge2):
    susp = _susp(rot4)
    assert induced_apply_sfn(susp, COLLAPSED) is COLLAPSED
    assert induced_apply_sfn(susp, q({0, 2})) == q({1, 3})
    assert iterate_sfn(susp, q({0, 1}), 4) == q({0, 1})
    assert induced_apply_sfn(_susp(merge2), q({0, 1})) is COLLAPSED


def test_semiconjugacy(tail_map):
    susp = _susp(tail_map, 3)
    for A in susp.product.elements:
        image = A
        for k in range(1, 21):
            image = susp.product.induced_apply(image)
            assert q(image) == iterate_sfn(susp, q(A), k)


def test_induced_inclusion(rot4):
    susp = _susp(rot4)
    classes = susp.points[1:]
    assert check_induced_inclusion(susp, [])
    assert check_induced_inclusion(susp, [q({0, 1})])
    assert all(check_induced_inclusion(susp, gamma) for k in (1, 2) for gamma in combinations(classes, k))
    with pytest.raises(QuotientError):
        check_induced_inclusion(susp, [COLLAPSED, q({0, 1})])


def test_suspension_system_fixes_the_basepoint(rot5):
    susp = _susp(rot5)
    system = susp.system
    assert system.table[0] == 0
    assert system.size == 11
    assert system.label(0) == "F_X"
    assert not susp.product.base.faithful_compactum


def test_suspension_needs_n_at_least_two(rot5):
    with pytest.raises(SpecError):
        _susp(rot5, 1)
    with pytest.raises(SpecError):
        build_shift_suspension(ShiftProduct(rot5, 1))


def test_shift_suspension(shift2):
    susp = build_shift_suspension(ShiftProduct(shift2, 2))
    chi = q({ShiftPoint.of("0", "1"), ShiftPoint.of("1", "1")})
    assert susp.induced_apply(chi) is COLLAPSED
    assert susp.common_prefix(q({ShiftPoint.of("010", "0"), ShiftPoint.of("011", "0")})) == 2
    assert susp.contains(("basepoint", 2), q({ShiftPoint.of("010", "0"), ShiftPoint.of("011", "0")}))
    assert susp.contains(("basepoint", 4), COLLAPSED)
    assert susp.name == "SF_2(full_shift(2))"
