"""
Point classes: periodic, quasi-periodic, recurrent, nonwandering and
transitive points, and ω-limit sets.

A point's orbit on a tabulated system is ``transient`` steps followed by a
cycle of length ``period``; everything below is read off that structure.
"""

from __future__ import annotations

from enum import Enum

from hyperdyn.config import Budget
from hyperdyn.detectors.hitting import hitting_times, is_exact, label_set, neighbourhoods, quantifier_sets
from hyperdyn.detectors.verdict import Verdict
from hyperdyn.dynsys import Backend
from hyperdyn.exceptions import UnsupportedBackendError
from hyperdyn.metric_core import PointSet


class PointKind(str, Enum):
    PERIODIC = "periodic"
    QUASI_PERIODIC = "quasi_periodic"
    RECURRENT = "recurrent"
    NONWANDERING = "nonwandering"
    TRANSITIVE_POINT = "transitive_point"


def orbit(sys, x: int, budget: Budget | None = None) -> list[int]:
    """``f^0(x), f^1(x), ...`` up to the first repeat (exact) or the horizon (grid)."""
    if is_exact(sys):
        structure = sys.orbit_structure(x)
        length = structure.transient + structure.period
    else:
        length = (budget or Budget()).horizon + 1
    points = [x]
    for _ in range(length - 1):
        points.append(sys.apply(points[-1]))
    return points


def omega_limit(sys, x, budget: Budget | None = None):
    """
    The cycle the orbit of ``x`` settles on.

    Shift points return the set of points on their periodic orbit; the
    enumeration stream has the whole space as its ω-limit and raises.
    """
    if getattr(sys, "backend", None) is Backend.SHIFT:
        if x.is_stream:
            raise UnsupportedBackendError("the ω-limit of the enumeration stream is the whole shift space")
        start = x.shift(len(x.preperiod))
        return frozenset(start.shift(i) for i in range(len(x.period)))
    structure = sys.orbit_structure(x)
    if not is_exact(sys) and structure.transient + structure.period > (budget or Budget()).horizon:
        # the cycle is reached beyond the horizon; report what the tail of the window sees
        tail = orbit(sys, x, budget)
        return frozenset(tail[len(tail) // 2 :])
    start = sys.iterate(x, structure.transient)
    return frozenset(sys.iterate(start, i) for i in range(structure.period))


def periodic_points(sys) -> PointSet:
    return frozenset(x for x in sys.points if sys.orbit_structure(x).transient == 0)


def is_transitive_point(sys, x: int, budget: Budget | None = None) -> bool:
    visited = frozenset(orbit(sys, x, budget))
    return all(W & visited for W in quantifier_sets(sys))


def transitive_points(sys, budget: Budget | None = None) -> PointSet:
    return frozenset(x for x in sys.points if is_transitive_point(sys, x, budget))


def _quasi_periodic_in(sys, x: int, U: PointSet, steps: int) -> int | None:
    """Smallest ``m`` with ``f^(km)(x)`` in ``U`` for every ``k >= 0``, searched up to ``steps``."""
    for m in range(1, steps + 1):
        if all(sys.iterate(x, k * m) in U for k in range(steps + 1)):
            return m
    return None


def classify_point(sys, x, kind: PointKind | str, budget: Budget | None = None) -> Verdict:
    kind = PointKind(kind)
    budget = budget or Budget()
    if getattr(sys, "backend", None) is Backend.SHIFT:
        from hyperdyn.detectors.symbolic import classify_shift_point

        return classify_shift_point(sys, x, kind.value)
    exact = is_exact(sys)
    reason = "" if exact else "horizon-truncated"
    structure = sys.orbit_structure(x)
    label = sys.label(x)
    # every window below covers the transient and at least one full cycle
    steps = structure.transient + structure.period if exact else budget.horizon

    def verdict(ok: bool, witness: str) -> Verdict:
        if ok:
            return Verdict.holds(witness, definitive=exact, reason=reason)
        return Verdict.fails(witness, definitive=exact, reason=reason)

    if kind is PointKind.PERIODIC:
        if structure.transient == 0:
            return verdict(True, f"f^{structure.period}({label}) = {label}")
        return verdict(False, f"{label} enters a {structure.period}-cycle after {structure.transient} steps")
    if kind is PointKind.TRANSITIVE_POINT:
        visited = frozenset(orbit(sys, x, budget))
        missed = [W for W in quantifier_sets(sys) if not W & visited]
        if missed:
            return verdict(False, f"orbit of {label} misses {label_set(sys, missed[0])}")
        return verdict(True, f"orbit of {label} meets every basis set")
    for U in neighbourhoods(sys, x):
        if kind is PointKind.QUASI_PERIODIC:
            ok = _quasi_periodic_in(sys, x, U, steps) is not None
        elif kind is PointKind.RECURRENT:
            ok = any(sys.iterate(x, m) in U for m in range(1, steps + 1))
        else:
            ok = not hitting_times(sys, U, U, horizon=budget.horizon).is_empty
        if not ok:
            return verdict(False, f"neighbourhood {label_set(sys, U)} of {label}")
    return verdict(True, f"every neighbourhood of {label}")
