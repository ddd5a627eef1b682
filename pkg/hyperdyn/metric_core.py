"""
Exact metric-space primitives.

Every distance is a ``fractions.Fraction``; nothing here touches floats.
Points are the integers ``0 .. size-1`` of a ``MetricSpace``; subsets are
frozensets of those integers.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from itertools import product
from typing import NamedTuple

from hyperdyn.config import parse_fraction, read_flat_config
from hyperdyn.exceptions import MetricError, SpecError

Dist = Fraction
PointId = int
PointSet = frozenset[int]

# Above this many points the axiom guard samples triples instead of scanning all of them.
FULL_AXIOM_SCAN_LIMIT = 64
SAMPLED_TRIPLES = 20_000


def point_set(items: Iterable[int]) -> PointSet:
    return frozenset(items)


def format_point_set(points: Iterable[int]) -> str:
    return "{" + ",".join(str(p) for p in sorted(points)) + "}"


@dataclass(frozen=True, eq=False)
class MetricSpace:
    size: int
    distance: Callable[[int, int], Fraction]
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise MetricError("a metric space needs at least one point")
        if self.labels is not None and len(self.labels) != self.size:
            raise MetricError(f"{len(self.labels)} labels given for {self.size} points")

    @property
    def points(self) -> range:
        return range(self.size)

    def dist(self, x: PointId, y: PointId) -> Dist:
        if x == y:
            return Fraction(0)
        return self.distance(x, y)

    def label(self, x: PointId) -> str:
        return self.labels[x] if self.labels else str(x)

    @cached_property
    def diameter(self) -> Dist:
        return max((self.dist(x, y) for x in self.points for y in range(x + 1, self.size)), default=Fraction(0))

    @cached_property
    def resolution(self) -> Dist:
        """Smallest positive distance; the scale below which balls are singletons."""
        positive = (self.dist(x, y) for x in self.points for y in range(x + 1, self.size))
        return min((d for d in positive if d > 0), default=Fraction(1))


class AxiomReport(NamedTuple):
    ok: bool
    violation: str | None = None
    triple: tuple[int, ...] | None = None


def _triples(space: MetricSpace, sample: int | None, seed: int):
    if sample is None:
        yield from product(space.points, repeat=3)
        return
    rng = random.Random(seed)
    for _ in range(sample):
        yield rng.randrange(space.size), rng.randrange(space.size), rng.randrange(space.size)


def check_metric_axioms(space: MetricSpace, sample: int | None = None, seed: int = 0) -> AxiomReport:
    """
    Check identity, symmetry and the triangle inequality.

    With ``sample=None`` every triple is scanned; otherwise ``sample`` random
    triples drawn from a seeded generator are checked.
    """
    for x, y, z in _triples(space, sample, seed):
        dxy = space.dist(x, y)
        if dxy < 0:
            return AxiomReport(False, "negative distance", (x, y))
        if (dxy == 0) != (x == y):
            return AxiomReport(False, "identity", (x, y))
        if dxy != space.dist(y, x):
            return AxiomReport(False, "symmetry", (x, y))
        if space.dist(x, z) > dxy + space.dist(y, z):
            return AxiomReport(False, "triangle", (x, y, z))
    return AxiomReport(True)


def guard_metric(space: MetricSpace) -> MetricSpace:
    """Raise ``MetricError`` unless ``space`` passes the axiom check."""
    sample = None if space.size <= FULL_AXIOM_SCAN_LIMIT else SAMPLED_TRIPLES
    report = check_metric_axioms(space, sample=sample)
    if not report.ok:
        raise MetricError(f"{space.name or 'space'} violates {report.violation} at {report.triple}")
    return space


def ball(space: MetricSpace, center: PointId, radius: Dist) -> PointSet:
    """Open ball ``{y : d(center, y) < radius}``."""
    if radius <= 0:
        raise MetricError(f"ball radius must be positive, got {radius}")
    return frozenset(y for y in space.points if space.dist(center, y) < radius)


def _require_nonempty(*sets: PointSet):
    if any(not s for s in sets):
        raise MetricError("metric operations need nonempty point sets")


def directed_hausdorff(space: MetricSpace, a_set: PointSet, b_set: PointSet) -> Dist:
    return max(min(space.dist(a, b) for b in b_set) for a in a_set)


def hausdorff(space: MetricSpace, a_set: PointSet, b_set: PointSet) -> Dist:
    _require_nonempty(a_set, b_set)
    if a_set == b_set:
        return Fraction(0)
    return max(directed_hausdorff(space, a_set, b_set), directed_hausdorff(space, b_set, a_set))


def chebyshev_radius(space: MetricSpace, a_set: PointSet) -> Dist:
    """``min_x max_{a in A} d(a, x)`` with centers ranging over the whole space."""
    _require_nonempty(a_set)
    return min(max(space.dist(a, x) for a in a_set) for x in space.points)


def cycle_metric(size: int, unit: Fraction | None = None, labels: tuple[str, ...] | None = None) -> MetricSpace:
    """
    Cycle ``Z_size`` with ``d(i, j) = min(|i-j|, size-|i-j|) * unit``.

    The default unit normalizes the diameter to 1.
    """
    if unit is None:
        unit = Fraction(1, max(1, size // 2))

    def distance(i: int, j: int) -> Fraction:
        gap = abs(i - j)
        return min(gap, size - gap) * unit

    return MetricSpace(size, distance, labels, name=f"cycle({size})")


def path_metric(size: int, unit: Fraction | None = None, labels: tuple[str, ...] | None = None) -> MetricSpace:
    if unit is None:
        unit = Fraction(1, max(1, size - 1))
    return MetricSpace(size, lambda i, j: abs(i - j) * unit, labels, name=f"path({size})")


def circle_grid_metric(size: int) -> MetricSpace:
    """Grid ``i/size`` on the circle of circumference 1 (arc-length metric)."""
    return cycle_metric(size, unit=Fraction(1, size))


def table_metric(size: int, rows: list[list[Fraction]], labels: tuple[str, ...] | None = None) -> MetricSpace:
    """
    Metric from a lower-triangular table: ``rows[i-1][j]`` is ``d(i, j)`` for ``j < i``.
    """
    if len(rows) != size - 1 or any(len(row) != i + 1 for i, row in enumerate(rows)):
        raise SpecError(f"a lower-triangular table for {size} points needs rows of length 1..{size - 1}")
    frozen = tuple(tuple(row) for row in rows)

    def distance(i: int, j: int) -> Fraction:
        if i < j:
            i, j = j, i
        return frozen[i - 1][j]

    return MetricSpace(size, distance, labels, name=f"table({size})")


BUILTIN_METRICS = {"cycle": cycle_metric, "path": path_metric}


def metric_from_values(values: dict[str, str], rows: list[str]) -> MetricSpace:
    try:
        size = int(values["points"])
    except (KeyError, ValueError) as e:
        raise SpecError("metric description needs an integer 'points' entry") from e
    labels = tuple(label.strip() for label in values["labels"].split(",")) if "labels" in values else None
    kind = values.get("metric", "cycle")
    if kind == "table":
        table = [[parse_fraction(cell) for cell in row.replace(",", " ").split()] for row in rows]
        space = table_metric(size, table, labels)
    elif kind in BUILTIN_METRICS:
        unit = parse_fraction(values["unit"]) if "unit" in values else None
        space = BUILTIN_METRICS[kind](size, unit, labels)
    else:
        raise SpecError(f"unknown metric {kind!r}; expected one of table, {', '.join(BUILTIN_METRICS)}")
    return space


def load_metric(text: str) -> MetricSpace:
    """Parse a metric file and guard it with the axiom check."""
    config = read_flat_config(text)
    return guard_metric(metric_from_values(config.values, config.rows))


def cached_metric(space: MetricSpace) -> MetricSpace:
    """Same space, with distances memoized."""
    return MetricSpace(space.size, cache(space.distance), space.labels, space.name)


def load_metric_file(path) -> MetricSpace:
    with open(path) as fd:
        return load_metric(fd.read())
