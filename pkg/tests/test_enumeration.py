import pytest

from hyperdyn.exceptions import SpecError
from hyperdyn.harness.enumeration import MAX_POINTS, all_endomaps, brute_force_enumeration, map_name


def test_all_endomaps():
    catalog = all_endomaps(3)
    assert len(catalog) == 27
    assert list(catalog)[:2] == ["map000", "map001"]
    assert catalog["map120"].system.table == (1, 2, 0)


@pytest.mark.parametrize("points", [0, MAX_POINTS + 1])
def test_point_count_out_of_range(points):
    with pytest.raises(SpecError):
        all_endomaps(points)


def test_map_name():
    assert map_name((0, 2, 1)) == "map021"


def test_small_enumeration_is_clean():
    report = brute_force_enumeration(3, 2, "T1,T5,T12")
    assert report.enumerated == 27
    assert len(report.results) == 3 * 27
    assert not report.counterexamples()


@pytest.mark.slow
@pytest.mark.parametrize("points", [3, 4])
def test_full_enumeration_is_clean(points):
    report = brute_force_enumeration(points)
    assert report.enumerated == points**points
    assert not report.counterexamples()
