"""
The transitivity family: every quantifier over open sets runs over the
minimal basis elements, and every "there is n" is read off a hitting-time
set. On exact backends those sets are eventually periodic, so the answers
are exact; grid systems are searched up to the horizon only.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator
from enum import Enum
from functools import cached_property
from itertools import product

from hyperdyn.config import Budget
from hyperdyn.detectors.hitting import (
    HittingTimeSet,
    cycle_structure,
    hitting_times,
    is_exact,
    label_set,
    quantifier_sets,
)
from hyperdyn.detectors.verdict import Verdict
from hyperdyn.dynsys import Backend, Direction

logger = logging.getLogger(__name__)


class TransitivityKind(str, Enum):
    TRANSITIVE = "transitive"
    Z_TRANSITIVE = "z_transitive"
    WEAKLY_MIXING = "weakly_mixing"
    MIXING = "mixing"
    TOTALLY_TRANSITIVE = "totally_transitive"
    STRONGLY_TRANSITIVE = "strongly_transitive"
    MULTI_TRANSITIVE = "multi_transitive"
    TT_PLUS_PLUS = "tt_plus_plus"
    TWO_SIDED = "two_sided"
    FULLY_EXACT = "fully_exact"
    DELTA_TRANSITIVE = "delta_transitive"
    DELTA_MIXING = "delta_mixing"


TRUNCATED = "horizon-truncated"


class Scope:
    """Per-run view of a tabulated system: its quantifier sets, horizon and hitting-time cache."""

    def __init__(self, sys, budget: Budget):
        self.sys = sys
        self.budget = budget
        self.exact = is_exact(sys)
        self.sets = quantifier_sets(sys)
        self._hits: dict = {}

    def hits(self, U, V) -> HittingTimeSet:
        key = (U, V)
        if key not in self._hits:
            self._hits[key] = hitting_times(self.sys, U, V, Direction.FORWARD, self.budget.horizon)
        return self._hits[key]

    def pairs(self) -> Iterator[tuple]:
        return product(self.sets, repeat=2)

    @property
    def window(self) -> int:
        """Iterates beyond this repeat earlier behaviour (exact) or are out of budget (grid)."""
        if not self.exact:
            return self.budget.horizon
        structure = cycle_structure(self.sys)
        return max(structure.max_transient, 1) + structure.period

    @cached_property
    def containing(self) -> tuple[tuple[int, ...], ...]:
        """Indices of the quantifier sets around each point."""
        return tuple(tuple(j for j, W in enumerate(self.sets) if x in W) for x in self.sys.points)

    def label(self, subset) -> str:
        return label_set(self.sys, subset)

    def holds(self, witness: str, bounded: str = "") -> Verdict:
        if bounded:
            return Verdict.holds(witness, definitive=False, reason=bounded)
        return Verdict.holds(witness, definitive=self.exact, reason="" if self.exact else TRUNCATED)

    def fails(self, witness: str) -> Verdict:
        return Verdict.fails(witness, definitive=self.exact, reason="" if self.exact else TRUNCATED)


def _transitive(scope: Scope) -> Verdict:
    for U, V in scope.pairs():
        if scope.hits(U, V).is_empty:
            return scope.fails(f"N({scope.label(U)},{scope.label(V)}) = ∅")
    U = scope.sets[0]
    sample = f"N({scope.label(U)},{scope.label(U)}) = {scope.hits(U, U)}"
    return scope.holds(f"all {len(scope.sets) ** 2} basis pairs hit; {sample}")


def _z_transitive(scope: Scope) -> Verdict:
    for U, V in scope.pairs():
        if U & V or not scope.hits(U, V).is_empty or not scope.hits(V, U).is_empty:
            continue
        return scope.fails(f"f^n({scope.label(U)}) misses {scope.label(V)} for every integer n")
    return scope.holds(f"all {len(scope.sets) ** 2} basis pairs meet for some integer n")


def _weakly_mixing(scope: Scope) -> Verdict:
    base = _transitive(scope)
    if base.is_fails:
        return base
    pairs = list(scope.pairs())
    for i, (U1, V1) in enumerate(pairs):
        for U2, V2 in pairs[i:]:
            if scope.hits(U1, V1).intersect(scope.hits(U2, V2)).is_empty:
                first = f"f^n({scope.label(U1)})∩{scope.label(V1)}"
                second = f"f^n({scope.label(U2)})∩{scope.label(V2)}"
                return scope.fails(f"no n with both {first} and {second} nonempty")
    return scope.holds(f"all {len(pairs) * (len(pairs) + 1) // 2} basis quadruples share a hitting time")


def _mixing(scope: Scope) -> Verdict:
    threshold = 0
    for U, V in scope.pairs():
        times = scope.hits(U, V)
        start = times.tail_start()
        if start is None:
            return scope.fails(f"N({scope.label(U)},{scope.label(V)}) = {times} is not cofinite")
        threshold = max(threshold, start)
    return scope.holds(f"every basis pair hits for all n >= {threshold}")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _totally_transitive(scope: Scope) -> Verdict:
    if not scope.exact:
        for k in range(1, 5):
            for U, V in scope.pairs():
                times = scope.hits(U, V)
                if not any(m in times for m in range(k, times.horizon + 1, k)):
                    pair = f"N({scope.label(U)},{scope.label(V)})"
                    return scope.fails(f"f^{k}: no multiple of {k} up to the horizon in {pair}")
        return scope.holds("f^k transitive up to the horizon for k <= 4")
    for U, V in scope.pairs():
        times = scope.hits(U, V)
        for g in _divisors(times.period):
            if not any((r + times.offset) % g == 0 for r in times.residues):
                # every multiple of k = g(1 + P t) past the offset misses the periodic hits
                k = g
                while k < times.offset:
                    k += g * times.period
                return scope.fails(f"f^{k} is not transitive: N({scope.label(U)},{scope.label(V)}) = {times}")
    return scope.holds("f^k is transitive for every k >= 1")


def _strongly_transitive(scope: Scope) -> Verdict:
    sys = scope.sys
    everything = frozenset(sys.points)
    worst = 0
    for U in scope.sets:
        covered: frozenset = frozenset()
        image = U
        found = None
        for i in range(1, scope.window + 1):
            image = sys.image(image)
            covered |= image
            if covered == everything:
                found = i
                break
        if found is None:
            return scope.fails(f"∪ f^i({scope.label(U)}) never covers the space")
        worst = max(worst, found)
    return scope.holds(f"M={worst} works for every basis set")


def _bounded_tuples(scope: Scope, m: int) -> dict:
    """Bit ``n-1`` of ``masks[i][(U,V)]`` is set iff ``i*n`` is in ``N(U,V)``, for ``1 <= n <= window``."""
    window = scope.window
    masks = {}
    for i in range(1, m + 1):
        masks[i] = {}
        for U, V in scope.pairs():
            times = scope.hits(U, V)
            masks[i][(U, V)] = sum(1 << (n - 1) for n in range(1, window + 1) if i * n in times)
    return masks


def _multi_transitive(scope: Scope) -> Verdict:
    pairs = list(scope.pairs())
    full = (1 << scope.window) - 1
    for m in range(1, scope.budget.m_max + 1):
        masks = _bounded_tuples(scope, m)
        chosen: list = []

        def search(i: int, mask: int) -> bool:
            if i > m:
                return True
            for pair in pairs:
                narrowed = mask & masks[i][pair]
                if not narrowed:
                    chosen.append(pair)
                    return False
                chosen.append(pair)
                if not search(i + 1, narrowed):
                    return False
                chosen.pop()
            return True

        if not search(1, full):
            text = ", ".join(f"f^{i}({scope.label(U)})→{scope.label(V)}" for i, (U, V) in enumerate(chosen, 1))
            return scope.fails(f"m={m}: no common n for {text}")
    return scope.holds(
        f"product of f, ..., f^m transitive for m <= {scope.budget.m_max}", bounded="arity bounded by m-max"
    )


def _tt_plus_plus(scope: Scope) -> Verdict:
    for U, V in scope.pairs():
        times = hitting_times(scope.sys, U, V, Direction.PREIMAGE, scope.budget.horizon)
        infinite = times.is_infinite if times.exact else any(n > times.horizon // 2 for n in times.transient_hits)
        if not infinite:
            return scope.fails(f"n({scope.label(U)},{scope.label(V)}) = {times} is finite")
    return scope.holds("n(U,V) is infinite for every basis pair")


def _two_sided(scope: Scope) -> Verdict:
    from hyperdyn.detectors.points import transitive_points

    if not scope.sys.is_bijection:
        return scope.fails("f is not a bijection")
    points = transitive_points(scope.sys, scope.budget)
    if not points:
        return scope.fails("no point has a dense forward orbit")
    return scope.holds(f"bijection with dense orbit of {scope.sys.label(min(points))}")


def _fully_exact(scope: Scope) -> Verdict:
    sys = scope.sys
    for U, V in scope.pairs():
        left, right = U, V
        found = None
        for k in range(1, scope.window + 1):
            left, right = sys.image(left), sys.image(right)
            common = left & right
            if any(W <= common for W in scope.sets):
                found = k
                break
        if found is None:
            return scope.fails(f"f^k({scope.label(U)})∩f^k({scope.label(V)}) has empty interior for every k")
    return scope.holds("every basis pair has images with common interior")


def _tuple_hits(scope: Scope, y: int, m: int, steps) -> set:
    sys = scope.sys
    containing = scope.containing
    hit: set = set()
    for k in steps:
        coords = [containing[sys.iterate(y, i * k)] for i in range(1, m + 1)]
        hit.update(product(*coords))
    return hit


def _dense(scope: Scope, points) -> bool:
    return all(W & points for W in scope.sets)


def _diagonal(scope: Scope, steps_for: Callable[[int], range], label: str) -> Verdict | None:
    target = len(scope.sets)
    for m in range(1, scope.budget.m_max + 1):
        good = frozenset(
            y for y in scope.sys.points if len(_tuple_hits(scope, y, m, steps_for(y))) == target**m
        )
        if not _dense(scope, good):
            return scope.fails(f"m={m}{label}: points with dense diagonal orbits are not dense")
    return None


def _steps(scope: Scope, start: int, step: int) -> range:
    # the diagonal tuple is periodic in k once every i*k is past the transients
    if scope.exact:
        structure = cycle_structure(scope.sys)
        count = math.ceil(max(structure.max_transient - start, 0) / step) + structure.period + 1
    else:
        count = max(0, (scope.budget.horizon - start) // step) + 1
    return range(start, start + step * count, step)


def _delta_transitive(scope: Scope) -> Verdict:
    failure = _diagonal(scope, lambda y: _steps(scope, 0, 1), "")
    if failure:
        return failure
    return scope.holds(f"dense diagonal orbits for m <= {scope.budget.m_max}", bounded="arity bounded by m-max")


def _delta_mixing(scope: Scope) -> Verdict:
    for start, step in scope.budget.progressions:
        failure = _diagonal(scope, lambda y: _steps(scope, start, step), f", B={start}+{step}N")
        if failure:
            return failure
    return scope.holds(
        f"dense diagonal orbits for m <= {scope.budget.m_max} along {len(scope.budget.progressions)} progressions",
        bounded="arity and progressions bounded by the budget",
    )


DETECTORS: dict[TransitivityKind, Callable[[Scope], Verdict]] = {
    TransitivityKind.TRANSITIVE: _transitive,
    TransitivityKind.Z_TRANSITIVE: _z_transitive,
    TransitivityKind.WEAKLY_MIXING: _weakly_mixing,
    TransitivityKind.MIXING: _mixing,
    TransitivityKind.TOTALLY_TRANSITIVE: _totally_transitive,
    TransitivityKind.STRONGLY_TRANSITIVE: _strongly_transitive,
    TransitivityKind.MULTI_TRANSITIVE: _multi_transitive,
    TransitivityKind.TT_PLUS_PLUS: _tt_plus_plus,
    TransitivityKind.TWO_SIDED: _two_sided,
    TransitivityKind.FULLY_EXACT: _fully_exact,
    TransitivityKind.DELTA_TRANSITIVE: _delta_transitive,
    TransitivityKind.DELTA_MIXING: _delta_mixing,
}


def detect_transitivity(sys, kind: TransitivityKind | str, budget: Budget) -> Verdict:
    kind = TransitivityKind(kind)
    if getattr(sys, "backend", None) is Backend.SHIFT:
        from hyperdyn.detectors.symbolic import shift_verdict

        return shift_verdict(sys, kind.value)
    verdict = DETECTORS[kind](Scope(sys, budget))
    logger.debug("%s %s: %s", sys.name, kind.value, verdict)
    return verdict
