"""
Sensitive, cofinitely sensitive and multi-sensitive dependence.

δ ranges over the budget grid. On exact backends half the metric resolution
is appended to the grid: below the resolution every positive distance
clears δ, so failing there means failing for every δ > 0.
"""

from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import combinations

from hyperdyn.config import Budget
from hyperdyn.detectors.hitting import (
    HittingTimeSet,
    is_exact,
    label_set,
    quantifier_sets,
    separation_times,
)
from hyperdyn.detectors.verdict import Verdict
from hyperdyn.dynsys import Backend

logger = logging.getLogger(__name__)


class SensitivityKind(str, Enum):
    PLAIN = "plain"
    COFINITE = "cofinite"
    MULTI = "multi"


def delta_candidates(sys, budget: Budget) -> tuple[Fraction, ...]:
    deltas = list(budget.deltas_for(sys.space.diameter))
    if is_exact(sys):
        deltas.append(sys.space.resolution / 2)
    return tuple(sorted(set(deltas), reverse=True))


def separating_pair(sys, U, n: int, delta: Fraction) -> tuple[int, int] | None:
    points = sorted(U)
    for i, x in enumerate(points):
        for y in points[i + 1 :]:
            if sys.space.dist(sys.iterate(x, n), sys.iterate(y, n)) > delta:
                return x, y
    return None


def _plain(sys, delta: Fraction, budget: Budget) -> tuple[bool, str]:
    witness = ""
    for U in quantifier_sets(sys):
        times = separation_times(sys, U, delta, budget.horizon)
        n = times.first()
        if n is None:
            return False, f"{label_set(sys, U)} never spreads beyond {delta}"
        if not witness:
            x, y = separating_pair(sys, U, n, delta)
            witness = f"delta={delta}; {label_set(sys, U)}: x={sys.label(x)}, y={sys.label(y)}, n={n}"
    return True, witness


def _cofinite(sys, delta: Fraction, budget: Budget) -> tuple[bool, str]:
    threshold = 0
    for U in quantifier_sets(sys):
        times = separation_times(sys, U, delta, budget.horizon)
        start = times.tail_start()
        if start is None:
            return False, f"{label_set(sys, U)}: N(U,{delta}) = {times} is not cofinite"
        threshold = max(threshold, start - 1)
    return True, f"delta={delta}, N={threshold}"


def _multi(sys, delta: Fraction, budget: Budget, arity: int | None) -> tuple[bool, str]:
    sets = quantifier_sets(sys)
    times = {U: separation_times(sys, U, delta, budget.horizon) for U in sets}
    if arity is None:
        common = reduce(HittingTimeSet.intersect, times.values())
        if common.is_empty:
            return False, f"no n separates all {len(sets)} basis sets beyond {delta}"
        return True, f"delta={delta}, n={common.first()} separates every basis set"
    for size in range(1, arity + 1):
        for family in combinations(sets, size):
            common = reduce(HittingTimeSet.intersect, (times[U] for U in family))
            if common.is_empty:
                labels = ", ".join(label_set(sys, U) for U in family)
                return False, f"no common n for {labels} beyond {delta}"
    return True, f"delta={delta}, families up to size {arity}"


def detect_sensitivity(sys, kind: SensitivityKind | str, budget: Budget, arity: int | None = None) -> Verdict:
    """
    ``arity`` restricts multi-sensitivity to families of at most that many
    basis sets; by default the whole basis is intersected at once, which
    covers every family.
    """
    kind = SensitivityKind(kind)
    if getattr(sys, "backend", None) is Backend.SHIFT:
        from hyperdyn.detectors.symbolic import shift_verdict

        return shift_verdict(sys, f"{kind.value}_sensitive" if kind is not SensitivityKind.PLAIN else "sensitive")
    exact = is_exact(sys)
    counter = ""
    for delta in delta_candidates(sys, budget):
        if kind is SensitivityKind.PLAIN:
            ok, detail = _plain(sys, delta, budget)
        elif kind is SensitivityKind.COFINITE:
            ok, detail = _cofinite(sys, delta, budget)
        else:
            ok, detail = _multi(sys, delta, budget, arity)
        if ok:
            logger.debug("%s %s-sensitive at %s", sys.name, kind.value, delta)
            if kind is SensitivityKind.MULTI:
                return Verdict.holds(detail, definitive=False, reason="arity is unbounded")
            return Verdict.holds(detail, definitive=exact, reason="" if exact else "horizon-truncated")
        counter = detail
    return Verdict.fails(counter, definitive=exact, reason="" if exact else "horizon-truncated")
