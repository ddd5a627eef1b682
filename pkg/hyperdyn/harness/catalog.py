"""
Named systems the theorem suite runs on.

The default catalog mixes exact finite systems, grid discretizations and
the full shift. Tabulated systems are axiom-checked when they are built.
User catalogs are YAML lists of mappings carrying a ``name``
plus either a builtin call under ``system`` or the keys of a system file.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, is_dataclass, replace
from pathlib import Path

import yaml

from hyperdyn.dynsys import build_system, finite_system, system_from_values
from hyperdyn.exceptions import SpecError
from hyperdyn.harness.theorems import IRRATIONAL_ROTATION_PROBE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    system: object
    description: str = ""
    substitution: str = ""

    @property
    def faithful_compactum(self) -> bool:
        return bool(getattr(self.system, "faithful_compactum", False))


DEFAULT_SYSTEMS: tuple[tuple[str, str], ...] = (
    ("rot4", "finite_rotation(4,1)"),
    ("rot5", "finite_rotation(5,1)"),
    ("rot6_2", "finite_rotation(6,2)"),
    ("id2", "identity(2)"),
    ("doubling729", "grid_doubling(729)"),
    ("tent256", "grid_tent(256)"),
    (IRRATIONAL_ROTATION_PROBE, "grid_rotation(377,233/377)"),
    ("shift2", "full_shift(2,4)"),
    ("shift3", "full_shift(3,2)"),
)

COLLAPSE_MAPS: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("collapse3", (1, 2, 1)),
    ("const3", (0, 0, 0)),
)

SUBSTITUTIONS = {
    IRRATIONAL_ROTATION_PROBE: "golden377: the rotation by 233/377 on a 377-point circle grid stands in for the "
    "irrational golden-angle rotation",
}


class Catalog(Mapping):
    def __init__(self, entries: list[CatalogEntry]):
        self._entries: dict[str, CatalogEntry] = {}
        for entry in entries:
            if entry.name in self._entries:
                raise SpecError(f"duplicate catalog entry {entry.name!r}")
            self._entries[entry.name] = entry

    def __getitem__(self, name: str) -> CatalogEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise SpecError(f"unknown system {name!r}; known: {', '.join(self._entries)}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def select(self, names: list[str] | None) -> Catalog:
        if not names:
            return self
        return Catalog([self[name] for name in names])

    def merged(self, other: Catalog) -> Catalog:
        return Catalog([*self.values(), *other.values()])

    @property
    def substitutions(self) -> list[str]:
        return [entry.substitution for entry in self.values() if entry.substitution]


def _renamed(system, name: str):
    if is_dataclass(system) and system.name != name:
        return replace(system, name=name)
    return system


def default_catalog() -> Catalog:
    entries = [
        CatalogEntry(name, _renamed(build_system(call), name), call, SUBSTITUTIONS.get(name, ""))
        for name, call in DEFAULT_SYSTEMS
    ]
    entries += [
        CatalogEntry(name, finite_system(name, table), " ".join(f"{i}:{j}" for i, j in enumerate(table)))
        for name, table in COLLAPSE_MAPS
    ]
    return Catalog(sorted(entries, key=lambda entry: entry.name))


def entry_from_mapping(data: Mapping) -> CatalogEntry:
    if "name" not in data:
        raise SpecError(f"catalog entry without a name: {dict(data)}")
    name = str(data["name"])
    values = {str(k): str(v) for k, v in data.items() if k not in ("name", "system", "rows", "substitution")}
    if "system" in data:
        system = build_system(str(data["system"]))
        description = str(data["system"])
    else:
        rows = [str(row) for row in data.get("rows", [])]
        system = system_from_values({**values, "name": name}, rows)
        description = values.get("map", "")
    return CatalogEntry(name, _renamed(system, name), description, str(data.get("substitution", "")))


def load_catalog_file(path: str | Path) -> Catalog:
    path = Path(path)
    if not path.is_file():
        raise SpecError(f"catalog file not found: {path}")
    data = yaml.safe_load(path.read_text())
    if not isinstance(data, list):
        raise SpecError(f"{path}: a catalog is a list of systems")
    logger.info("Loaded %d systems from %s", len(data), path)
    return Catalog([entry_from_mapping(item) for item in data])


def load_catalog(selection: str = "default") -> Catalog:
    """
    ``default``, a path to a YAML catalog, ``default+path`` for both, or a
    comma separated list of names from the default catalog.
    """
    if selection in ("", "default"):
        return default_catalog()
    if selection.startswith("default+"):
        return default_catalog().merged(load_catalog_file(selection[len("default+") :]))
    if selection.endswith((".yml", ".yaml")) or Path(selection).is_file():
        return load_catalog_file(selection)
    return default_catalog().select([name.strip() for name in selection.split(",") if name.strip()])
