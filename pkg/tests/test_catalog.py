import pytest

from hyperdyn.dynsys import Backend
from hyperdyn.exceptions import SpecError
from hyperdyn.harness.catalog import default_catalog, load_catalog, load_catalog_file

DEFAULT_NAMES = [
    "collapse3",
    "const3",
    "doubling729",
    "golden377",
    "id2",
    "rot4",
    "rot5",
    "rot6_2",
    "shift2",
    "shift3",
    "tent256",
]


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def test_default_catalog(catalog):
    assert list(catalog) == DEFAULT_NAMES
    assert catalog["rot5"].system.name == "rot5"
    assert catalog["doubling729"].system.backend is Backend.GRID
    assert catalog["shift2"].faithful_compactum
    assert not catalog["rot4"].faithful_compactum
    assert catalog["collapse3"].description == "0:1 1:2 2:1"


def test_substitutions_are_recorded(catalog):
    (text,) = catalog.substitutions
    assert text.startswith("golden377")


def test_lookup(catalog):
    assert "rot5" in catalog
    assert "rot7" not in catalog
    with pytest.raises(SpecError, match="unknown system 'rot7'"):
        catalog["rot7"]


def test_select_by_name():
    assert list(load_catalog("rot5, id2")) == ["rot5", "id2"]
    assert list(load_catalog("")) == DEFAULT_NAMES


@pytest.fixture
def catalog_file(tmp_path):
    path = tmp_path / "mine.yaml"
    path.write_text(
        "- name: swap\n"
        "  points: 2\n"
        "  map: '0:1 1:0'\n"
        "- name: rot3\n"
        "  system: finite_rotation(3,1)\n"
        "  substitution: three points stand in for the circle\n"
    )
    return path


def test_yaml_catalog(catalog_file):
    catalog = load_catalog_file(catalog_file)
    assert list(catalog) == ["swap", "rot3"]
    assert catalog["swap"].system.table == (1, 0)
    assert catalog["rot3"].system.name == "rot3"
    assert catalog.substitutions == ["three points stand in for the circle"]


def test_merged_with_default(catalog_file):
    catalog = load_catalog(f"default+{catalog_file}")
    assert len(catalog) == len(DEFAULT_NAMES) + 2


def test_duplicate_names(tmp_path):
    path = tmp_path / "twice.yml"
    path.write_text("- {name: a, system: identity(2)}\n- {name: a, system: identity(3)}\n")
    with pytest.raises(SpecError, match="duplicate"):
        load_catalog_file(path)


@pytest.mark.parametrize(
    "text",
    ["name: a\n", "- {system: identity(2)}\n", "- {name: a, system: identity(x)}\n", "- {name: a, points: 2}\n"],
    ids=["not-a-list", "no-name", "bad-builtin", "no-map"],
)
def test_bad_catalog(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(SpecError):
        load_catalog_file(path)


def test_missing_catalog_file(tmp_path):
    with pytest.raises(SpecError, match="not found"):
        load_catalog_file(tmp_path / "nothing.yaml")
