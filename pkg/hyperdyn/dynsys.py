"""
Dynamical systems over tabulated backends.

``finite`` systems are exact: every quantity the detectors ask for is
decided by following eventually periodic trajectories. ``grid`` systems are
discretized interval and circle maps; they share the table machinery but the
detectors only trust them up to a horizon. The symbolic backend lives in
``hyperdyn.shift``.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from hyperdyn.config import parse_fraction, read_flat_config
from hyperdyn.exceptions import SpecError, UnsupportedBackendError
from hyperdyn.metric_core import (
    MetricSpace,
    PointSet,
    ball,
    cached_metric,
    circle_grid_metric,
    cycle_metric,
    guard_metric,
    metric_from_values,
    path_metric,
)

logger = logging.getLogger(__name__)

DEFAULT_GRID_RESOLUTION = Fraction(1, 8)


class Backend(str, Enum):
    FINITE = "finite"
    GRID = "grid"
    SHIFT = "shift"


class Direction(str, Enum):
    FORWARD = "forward"
    PREIMAGE = "preimage"


class OrbitStructure(NamedTuple):
    transient: int
    period: int


class SubsetOrbit(NamedTuple):
    """Trajectory of a subset; ``states[i]`` is the i-th image (or preimage)."""

    transient: int
    period: int
    states: tuple[PointSet, ...]


@dataclass(frozen=True, eq=False)
class DynSystem:
    name: str
    space: MetricSpace
    table: tuple[int, ...]
    basis: tuple[PointSet, ...]
    backend: Backend = Backend.FINITE
    faithful_compactum: bool = False
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.table) != self.space.size:
            raise SpecError(f"{self.name}: map has {len(self.table)} entries for {self.space.size} points")
        if any(not 0 <= y < self.space.size for y in self.table):
            raise SpecError(f"{self.name}: map leaves the space")
        if any(not element for element in self.basis):
            raise SpecError(f"{self.name}: empty basis element")
        if frozenset().union(*self.basis) != frozenset(self.space.points):
            raise SpecError(f"{self.name}: basis does not cover the space")

    @property
    def size(self) -> int:
        return self.space.size

    @property
    def points(self) -> range:
        return self.space.points

    @property
    def exact(self) -> bool:
        return self.backend is Backend.FINITE

    @cached_property
    def is_bijection(self) -> bool:
        return len(set(self.table)) == self.size

    def label(self, x: int) -> str:
        if self.labels:
            return self.labels[x]
        return self.space.label(x)

    def apply(self, x: int) -> int:
        return self.table[x]

    def iterate(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("iterate needs k >= 0")
        for _ in range(k):
            x = self.table[x]
        return x

    def image(self, subset: Iterable[int]) -> PointSet:
        return frozenset(self.table[x] for x in subset)

    @cached_property
    def preimage_table(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in self.points]
        for x, y in enumerate(self.table):
            buckets[y].append(x)
        return tuple(tuple(bucket) for bucket in buckets)

    def preimage(self, subset: Iterable[int]) -> PointSet:
        return frozenset(x for y in subset for x in self.preimage_table[y])

    def orbit_structure(self, x: int) -> OrbitStructure:
        seen: dict[int, int] = {}
        step = 0
        while x not in seen:
            seen[x] = step
            x = self.table[x]
            step += 1
        return OrbitStructure(seen[x], step - seen[x])

    def subset_orbit(self, subset: PointSet, direction: Direction = Direction.FORWARD) -> SubsetOrbit:
        advance = self.image if direction is Direction.FORWARD else self.preimage
        seen: dict[PointSet, int] = {}
        states: list[PointSet] = []
        current = frozenset(subset)
        while current not in seen:
            seen[current] = len(states)
            states.append(current)
            current = advance(current)
        start = seen[current]
        return SubsetOrbit(start, len(states) - start, tuple(states))


def iterate(sys, x, k: int):
    """``f^k(x)``; works on every backend."""
    return sys.iterate(x, k)


def orbit_structure(sys, x) -> OrbitStructure:
    return sys.orbit_structure(x)


def subset_trajectory_period(sys, subset: PointSet, direction: Direction | str = Direction.FORWARD) -> SubsetOrbit:
    if getattr(sys, "backend", None) is not Backend.FINITE:
        raise UnsupportedBackendError("subset trajectories are exact only on the finite backend")
    return sys.subset_orbit(frozenset(subset), Direction(direction))


def preimage(sys, subset):
    """
    ``f^-1(S)``.

    On the shift backend ``subset`` is a cylinder word and the result is the
    list of one-symbol-longer cylinder words.
    """
    if getattr(sys, "backend", None) is Backend.GRID and frozenset(subset) not in set(sys.basis):
        raise UnsupportedBackendError("grid preimages are only computed for basis balls")
    return sys.preimage(subset)


def ball_basis(space: MetricSpace, resolution: Fraction | None = None) -> tuple[PointSet, ...]:
    """All balls with radii on the lattice ``resolution * k`` up to past the diameter."""
    step = resolution or space.resolution
    top = math.ceil(space.diameter / step) + 1 if space.diameter else 1
    found = {ball(space, x, step * k) for x in space.points for k in range(1, top + 1)}
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def grid_basis(space: MetricSpace, radius: Fraction) -> tuple[PointSet, ...]:
    """Balls of one radius around evenly spaced centers, topped up until they cover."""
    stride = max(1, math.floor(radius / space.resolution))
    balls = [ball(space, c, radius) for c in range(0, space.size, stride)]
    covered = frozenset().union(*balls)
    for x in space.points:
        if x not in covered:
            extra = ball(space, x, radius)
            balls.append(extra)
            covered |= extra
    return tuple(dict.fromkeys(balls))


def _round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def finite_system(
    name: str,
    table: Iterable[int],
    space: MetricSpace | None = None,
    basis_resolution: Fraction | None = None,
) -> DynSystem:
    table = tuple(table)
    space = guard_metric(cached_metric(space or cycle_metric(len(table))))
    return DynSystem(name, space, table, ball_basis(space, basis_resolution))


def finite_rotation(m: int, k: int) -> DynSystem:
    return finite_system(f"finite_rotation({m},{k})", ((i + k) % m for i in range(m)))


def identity_map(m: int) -> DynSystem:
    return finite_system(f"identity({m})", range(m))


def _grid_system(name: str, space: MetricSpace, func: Callable[[int], int], resolution: Fraction | None):
    # grid metrics are closed-form; memoizing every pair would cost more than recomputing
    space = guard_metric(space)
    table = tuple(func(i) for i in space.points)
    return DynSystem(name, space, table, grid_basis(space, resolution or DEFAULT_GRID_RESOLUTION), Backend.GRID)


def grid_doubling(m: int, resolution: Fraction | None = None) -> DynSystem:
    """Doubling map on the ``m``-point circle grid; ``m`` must be odd."""
    if m < 3 or m % 2 == 0:
        raise SpecError(f"grid_doubling needs an odd modulus >= 3, got {m}")
    return _grid_system(f"grid_doubling({m})", circle_grid_metric(m), lambda i: 2 * i % m, resolution)


def grid_tent(m: int, resolution: Fraction | None = None) -> DynSystem:
    """Tent map sampled on the points ``i/m`` of [0,1], rounded to the nearest grid point."""

    def tent(i: int) -> int:
        x = Fraction(i, m)
        y = 2 * x if x <= Fraction(1, 2) else 2 - 2 * x
        return _round_half_up(y * m)

    return _grid_system(f"grid_tent({m})", path_metric(m + 1), tent, resolution)


def grid_rotation(m: int, alpha: Fraction, resolution: Fraction | None = None) -> DynSystem:
    """Rotation by the angle ``alpha`` (a fraction of a turn) on the ``m``-point circle grid."""
    shift = _round_half_up(alpha * m)
    return _grid_system(
        f"grid_rotation({m},{alpha})", circle_grid_metric(m), lambda i: (i + shift) % m, resolution
    )


def cartesian_product(first: DynSystem, second: DynSystem) -> DynSystem:
    """``(X x Y, f x g)`` with the max metric and the product basis."""
    width = second.size

    def distance(p: int, q: int) -> Fraction:
        return max(first.space.dist(p // width, q // width), second.space.dist(p % width, q % width))

    labels = tuple(f"({first.label(p // width)},{second.label(p % width)})" for p in range(first.size * width))
    space = cached_metric(MetricSpace(first.size * width, distance, labels, f"{first.space.name}x{second.space.name}"))
    table = tuple(first.table[p // width] * width + second.table[p % width] for p in range(first.size * width))
    basis = tuple(
        frozenset(u * width + v for u in left for v in right) for left in first.basis for right in second.basis
    )
    backend = Backend.FINITE if first.exact and second.exact else Backend.GRID
    return DynSystem(f"{first.name}x{second.name}", space, table, basis, backend)


def parse_map_table(text: str, size: int) -> tuple[int, ...]:
    """Parse ``i:j`` pairs separated by spaces or commas into a total map table."""
    pairs = [item for item in re.split(r"[\s,]+", text.strip()) if item]
    mapping: dict[int, int] = {}
    for pair in pairs:
        try:
            source, target = (int(part) for part in pair.split(":"))
        except ValueError as e:
            raise SpecError(f"bad map entry {pair!r}, expected i:j") from e
        mapping[source] = target
    if set(mapping) != set(range(size)):
        raise SpecError(f"map must assign every point 0..{size - 1}")
    return tuple(mapping[i] for i in range(size))


_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def _split_call(text: str) -> tuple[str, list[str]]:
    match = _CALL.match(text)
    if not match:
        raise SpecError(f"cannot parse {text!r}")
    name, args = match.groups()
    return name, [a.strip() for a in (args or "").split(",") if a.strip()]


BUILTINS: dict[str, Callable] = {
    "finite_rotation": lambda m, k: finite_rotation(int(m), int(k)),
    "identity": lambda m: identity_map(int(m)),
    "grid_doubling": lambda m: grid_doubling(int(m)),
    "grid_tent": lambda m: grid_tent(int(m)),
    "grid_rotation": lambda m, alpha: grid_rotation(int(m), parse_fraction(alpha)),
}


def build_system(source: str | Mapping[str, str]):
    """
    Build a system from a builtin call such as ``"finite_rotation(5,1)"`` or
    ``"full_shift(2)"``, or from a mapping of system-file keys.
    """
    if isinstance(source, Mapping):
        return system_from_values(dict(source))
    from hyperdyn.shift import full_shift

    name, args = _split_call(source)
    builders = {**BUILTINS, "full_shift": lambda *a: full_shift(*(int(x) for x in a))}
    if name not in builders:
        raise SpecError(f"unknown builtin system {name!r}")
    try:
        return builders[name](*args)
    except SpecError:
        raise
    except (TypeError, ValueError) as e:
        raise SpecError(f"wrong arguments for {name}: {args}") from e


def system_from_values(values: dict[str, str], rows: list[str] | None = None):
    values = {str(k).lower().replace("-", "_"): str(v) for k, v in values.items()}
    backend = values.get("backend", "finite")
    if backend == "shift":
        from hyperdyn.shift import full_shift

        return full_shift(int(values.get("points", "2")), int(values.get("cylinder_len", "4")))
    if "map" not in values:
        raise SpecError("system description needs a 'map' entry")
    map_text = values["map"]
    resolution = parse_fraction(values["basis_resolution"]) if "basis_resolution" in values else None
    if ":" not in map_text:
        system = build_system(map_text)
        if resolution is not None and isinstance(system, DynSystem):
            basis = grid_basis(system.space, resolution) if system.backend is Backend.GRID else ball_basis(
                system.space, resolution
            )
            system = DynSystem(system.name, system.space, system.table, basis, system.backend)
        return system
    if backend not in (Backend.FINITE.value, Backend.GRID.value):
        raise SpecError(f"unknown backend {backend!r}")
    space = metric_from_values(values, rows or [])
    table = parse_map_table(map_text, space.size)
    system = finite_system(values.get("name", "custom"), table, space, resolution)
    if backend == Backend.GRID.value:
        system = DynSystem(system.name, system.space, system.table, system.basis, Backend.GRID)
    logger.debug("Loaded %s system %s with %d points", backend, system.name, system.size)
    return system


def load_system(text: str):
    """Parse a system file (``backend=``, ``points=``, ``map=``, ``metric=`` ...)."""
    config = read_flat_config(text)
    return system_from_values(config.values, config.rows)
