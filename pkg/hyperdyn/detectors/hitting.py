"""
Hitting-time sets and the trajectory machinery every detector is built on.

On exact backends the sequence ``f^n(S)`` runs through finitely many
subsets, so every set of the form ``{n >= 1 : P(f^n(U))}`` is eventually
periodic and is stored as transient hits plus residues modulo a period.
Grid systems only get the hits up to the budget horizon.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import networkx as nx

from hyperdyn.dynsys import Backend, Direction, DynSystem, SubsetOrbit
from hyperdyn.metric_core import PointSet, format_point_set


@dataclass(frozen=True)
class HittingTimeSet:
    """
    ``{n >= 1 : ...}`` as ``transient_hits ∪ {offset + r + period*t : r in residues, t >= 0}``.

    With ``horizon`` set the set is truncated: only ``transient_hits`` up to
    the horizon are known and nothing beyond it is claimed.
    """

    transient_hits: frozenset[int]
    offset: int
    period: int
    residues: frozenset[int]
    horizon: int | None = None

    @classmethod
    def truncated(cls, hits: Iterable[int], horizon: int) -> HittingTimeSet:
        return cls(frozenset(hits), horizon + 1, 1, frozenset(), horizon)

    @property
    def exact(self) -> bool:
        return self.horizon is None

    def __contains__(self, n: int) -> bool:
        if n < 1:
            return False
        if n < self.offset:
            return n in self.transient_hits
        return (n - self.offset) % self.period in self.residues

    @property
    def is_empty(self) -> bool:
        return not self.transient_hits and not self.residues

    @property
    def is_infinite(self) -> bool:
        return bool(self.residues)

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def first(self) -> int | None:
        if self.transient_hits:
            return min(self.transient_hits)
        if self.residues:
            return self.offset + min(self.residues)
        return None

    def cofinite_from(self) -> int | None:
        """Smallest ``N`` with every ``n >= N`` a member, when the set is cofinite."""
        if not self.is_cofinite:
            return None
        start = self.offset
        while start > 1 and (start - 1) in self:
            start -= 1
        return start

    def tail_start(self) -> int | None:
        """
        ``cofinite_from`` for exact sets. A truncated set counts as cofinite
        when its hits run unbroken from the second half up to the horizon.
        """
        if self.exact:
            return self.cofinite_from()
        start = self.horizon
        if start not in self.transient_hits:
            return None
        while start - 1 in self.transient_hits:
            start -= 1
        return start if start <= self.horizon // 2 + 1 else None

    def members(self, upto: int) -> list[int]:
        return [n for n in range(1, upto + 1) if n in self]

    def intersect(self, other: HittingTimeSet) -> HittingTimeSet:
        if not self.exact or not other.exact:
            horizon = min(h for h in (self.horizon, other.horizon) if h is not None)
            return HittingTimeSet.truncated((n for n in range(1, horizon + 1) if n in self and n in other), horizon)
        offset = max(self.offset, other.offset)
        period = math.lcm(self.period, other.period)
        transient = frozenset(n for n in range(1, offset) if n in self and n in other)
        residues = frozenset(r for r in range(period) if offset + r in self and offset + r in other)
        return HittingTimeSet(transient, offset, period, residues)

    def __str__(self) -> str:
        parts = []
        if self.transient_hits:
            parts.append(format_point_set(self.transient_hits))
        if self.residues:
            if self.period == 1:
                parts.append(f"{{n >= {self.offset}}}")
            else:
                res = ",".join(str((self.offset + r) % self.period) for r in sorted(self.residues))
                parts.append(f"{{n >= {self.offset} : n mod {self.period} in {{{res}}}}}")
        text = " ∪ ".join(parts) or "∅"
        if self.horizon is not None:
            text += f" (n <= {self.horizon})"
        return text


class CycleStructure(NamedTuple):
    cycles: tuple[tuple[int, ...], ...]
    max_transient: int
    period: int


@lru_cache(maxsize=4096)
def cycle_structure(sys: DynSystem) -> CycleStructure:
    """Cycles of the functional graph of ``f``, the longest transient, and the lcm of the cycle lengths."""
    graph = nx.DiGraph(enumerate(sys.table))
    cycles = sorted((tuple(_rotate_min(c)) for c in nx.simple_cycles(graph)), key=lambda c: (len(c), c))
    on_cycle = {x for cycle in cycles for x in cycle}
    depth = nx.multi_source_dijkstra_path_length(graph.reverse(copy=False), on_cycle)
    return CycleStructure(
        tuple(cycles),
        max(depth.values(), default=0),
        math.lcm(*(len(c) for c in cycles)) if cycles else 1,
    )


def _rotate_min(cycle: list[int]) -> list[int]:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def is_exact(sys) -> bool:
    return bool(getattr(sys, "exact", False))


def minimal_sets(sets: Iterable[PointSet]) -> tuple[PointSet, ...]:
    ordered = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    kept: list[PointSet] = []
    for candidate in ordered:
        if not any(smaller < candidate for smaller in kept):
            kept.append(candidate)
    return tuple(kept)


@lru_cache(maxsize=4096)
def quantifier_sets(sys: DynSystem) -> tuple[PointSet, ...]:
    """
    Minimal basis elements.

    Every property the detectors check is monotone in its open-set
    arguments, and every open set contains one of these, so quantifying
    over them is the same as quantifying over all nonempty open sets.
    """
    return minimal_sets(sys.basis)


@lru_cache(maxsize=65536)
def neighbourhoods(sys: DynSystem, x: int) -> tuple[PointSet, ...]:
    """Minimal basis elements containing ``x``."""
    return minimal_sets(b for b in sys.basis if x in b)


@lru_cache(maxsize=65536)
def _exact_orbit(sys: DynSystem, subset: PointSet, direction: Direction) -> SubsetOrbit:
    return sys.subset_orbit(subset, direction)


def _horizon_states(sys: DynSystem, subset: PointSet, direction: Direction, horizon: int) -> tuple[PointSet, ...]:
    advance = sys.image if direction is Direction.FORWARD else sys.preimage
    states = [subset]
    for _ in range(horizon):
        states.append(advance(states[-1]))
    return tuple(states)


def state_at(orbit: SubsetOrbit, n: int) -> PointSet:
    if n < len(orbit.states):
        return orbit.states[n]
    return orbit.states[orbit.transient + (n - orbit.transient) % orbit.period]


def times_where(
    sys: DynSystem,
    subset: PointSet,
    predicate: Callable[[PointSet], bool],
    horizon: int,
    direction: Direction = Direction.FORWARD,
) -> HittingTimeSet:
    """``{n >= 1 : predicate(f^n(subset))}`` (or of ``f^-n`` for the preimage direction)."""
    subset = frozenset(subset)
    if not is_exact(sys):
        states = _horizon_states(sys, subset, direction, horizon)
        return HittingTimeSet.truncated((n for n in range(1, horizon + 1) if predicate(states[n])), horizon)
    orbit = _exact_orbit(sys, subset, direction)
    offset = max(orbit.transient, 1)
    transient = frozenset(n for n in range(1, offset) if predicate(state_at(orbit, n)))
    residues = frozenset(r for r in range(orbit.period) if predicate(state_at(orbit, offset + r)))
    return HittingTimeSet(transient, offset, orbit.period, residues)


def hitting_times(sys, U, V, variant: Direction | str = Direction.FORWARD, horizon: int = 16) -> HittingTimeSet:
    """
    ``N_f(U,V) = {n >= 1 : f^n(U) ∩ V != ∅}`` or, for the preimage variant,
    ``n_f(U,V) = {n >= 1 : U ∩ f^-n(V) != ∅}``.
    """
    variant = Direction(variant)
    if getattr(sys, "backend", None) is Backend.SHIFT:
        from hyperdyn.detectors.symbolic import cylinder_hitting_times

        return cylinder_hitting_times(U, V)
    U, V = frozenset(U), frozenset(V)
    if variant is Direction.FORWARD:
        return times_where(sys, U, lambda state: bool(state & V), horizon)
    return times_where(sys, V, lambda state: bool(state & U), horizon, Direction.PREIMAGE)


def spread(sys: DynSystem, subset: PointSet) -> Fraction:
    """Largest distance between two points of ``subset``."""
    points = sorted(subset)
    return max(
        (sys.space.dist(a, b) for i, a in enumerate(points) for b in points[i + 1 :]),
        default=Fraction(0),
    )


def separation_times(sys: DynSystem, U: PointSet, delta: Fraction, horizon: int) -> HittingTimeSet:
    """``N(U, delta) = {n >= 1 : some x, y in U have d(f^n x, f^n y) > delta}``."""
    return times_where(sys, U, lambda state: spread(sys, state) > delta, horizon)


def forward_closure(sys: DynSystem, subset: PointSet) -> PointSet:
    """Smallest +invariant set containing ``subset``."""
    closure = set(subset)
    frontier = set(subset)
    while frontier:
        frontier = {sys.table[x] for x in frontier} - closure
        closure |= frontier
    return frozenset(closure)


def label_set(sys, subset: PointSet) -> str:
    if getattr(sys, "labels", None):
        return "{" + ",".join(sys.label(x) for x in sorted(subset)) + "}"
    return format_point_set(subset)
