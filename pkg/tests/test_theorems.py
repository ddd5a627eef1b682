import pytest

from hyperdyn.exceptions import SpecError
from hyperdyn.harness.theorems import (
    THEOREMS,
    Arrow,
    ArrowKind,
    Level,
    Statement,
    select_theorems,
)


def test_table_is_complete():
    assert [theorem.id for theorem in THEOREMS] == [f"T{i}" for i in range(1, 25)]
    assert all(theorem.anchor for theorem in THEOREMS)


def _pairs(theorem, kind):
    return {(a.premise.key(), a.conclusion.key()) for a in theorem.arrows if a.kind is kind}


def test_sensitivity_arrows_point_down():
    (theorem,) = select_theorems("T1")
    assert _pairs(theorem, ArrowKind.IMPLICATION) == {
        ("suspension:sensitive", "product:sensitive"),
        ("product:sensitive", "base:sensitive"),
    }
    assert not _pairs(theorem, ArrowKind.SEPARATION)


def test_separations_are_kept_apart():
    (theorem,) = select_theorems("4")
    assert _pairs(theorem, ArrowKind.SEPARATION) == {("base:z_transitive", "product:z_transitive")}
    assert len(theorem.arrows) == 4


def test_equivalence_families():
    t12, t14 = select_theorems("T12,T14")
    assert len(t12.arrows) == 7 * 6
    assert len(t14.arrows) == 8 * 7
    assert t14.requires_no_isolated_points
    assert Statement(Level.PRODUCT, "martelli") in t14.properties


def test_strong_transitivity_carries_its_substitution():
    (theorem,) = select_theorems(["T24"])
    assert "golden377" in theorem.substitution
    assert len(_pairs(theorem, ArrowKind.SEPARATION)) == 2


def test_pointwise_theorems():
    assert [theorem.id for theorem in THEOREMS if theorem.pointwise] == ["T6", "T15"]


def test_selection():
    assert select_theorems(None) == THEOREMS
    assert select_theorems("all") == THEOREMS
    assert [theorem.id for theorem in select_theorems("T12, t1,T12")] == ["T1", "T12"]


def test_theorems_are_hashable():
    assert len(set(THEOREMS)) == 24
    assert {theorem.id for theorem in select_theorems(["5", "T12", "T5"])} == {"T5", "T12"}


@pytest.mark.parametrize("ids", ["T25", "T0", "sensitive"])
def test_unknown_theorem(ids):
    with pytest.raises(SpecError):
        select_theorems(ids)


def test_arrow_round_trip():
    arrow = Arrow(Statement(Level.BASE, "touhey"), Statement(Level.SUSPENSION, "touhey"), ArrowKind.SEPARATION)
    assert Arrow.from_dict(arrow.to_dict()) == arrow
    assert str(arrow) == "base:touhey =/=> suspension:touhey"
