from hyperdyn.dynsys import finite_system
from hyperdyn.harness.selftest import (
    SelfTestResult,
    induced_inclusion,
    rotation_isometry,
    run_selftest,
    semiconjugacy,
    small_spaces,
    small_systems,
)
from hyperdyn.hyperspace import build_symmetric_product
from hyperdyn.suspension import build_suspension


def test_everything_passes():
    results = run_selftest()
    assert len(results) == 8
    assert all(result.checked for result in results)
    assert [result.name for result in results if not result.ok] == []


def test_inputs():
    assert [space.size for space in small_spaces()] == [1, 2, 3, 4, 5, 6]
    names = [system.name for system in small_systems()]
    assert "collapse3" in names and "stairs5" in names and "rotation2" in names


def test_rotation_isometry_counts_every_case():
    result = rotation_isometry(limit=3, n_values=(2,))
    assert result.ok
    assert result.checked == 1 + 2


def test_semiconjugacy_on_a_collapse():
    susp = build_suspension(build_symmetric_product(finite_system("merge", (1, 1, 0)), 2))
    result = semiconjugacy([susp], steps=5)
    assert result.ok
    assert result.checked == len(susp.product.elements) * 5


def test_induced_inclusion_counts_pairs_of_classes():
    susp = build_suspension(build_symmetric_product(finite_system("rotation3", (1, 2, 0)), 2))
    result = induced_inclusion([susp])
    # three classes, taken one and two at a time
    assert result.checked == 3 + 3
    assert result.ok


def test_result_is_ok_without_violations():
    assert SelfTestResult("x").ok
    assert not SelfTestResult("x", 1, ["broken"]).ok
