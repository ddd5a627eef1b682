"""
Whole-system properties: minimality, F-systems, Touhey, Martelli chaos,
accessibility, indecomposability and the ω-limit and density properties.
"""

from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction

from hyperdyn.config import Budget
from hyperdyn.detectors.hitting import (
    cycle_structure,
    forward_closure,
    is_exact,
    label_set,
    neighbourhoods,
    quantifier_sets,
)
from hyperdyn.detectors.points import is_transitive_point, omega_limit, periodic_points, transitive_points
from hyperdyn.detectors.sensitivity import delta_candidates
from hyperdyn.detectors.transitivity import TransitivityKind, detect_transitivity
from hyperdyn.detectors.verdict import Verdict
from hyperdyn.dynsys import Backend

logger = logging.getLogger(__name__)

# arctan(x) < pi/2 < 1571/1000
ARCTAN_CAP = Fraction(1571, 1000)


class GlobalKind(str, Enum):
    MINIMAL = "minimal"
    F_SYSTEM = "f_system"
    TOUHEY = "touhey"
    MARTELLI = "martelli"
    ACCESSIBLE = "accessible"
    INDECOMPOSABLE = "indecomposable"
    OMEGA_FULL = "omega_full"
    TRANSITIVE_POINTS_DENSE = "transitive_points_dense"


def martelli_threshold(delta: Fraction) -> Fraction:
    """
    Rational upper bound of ``arctan(delta)``.

    On ``(0, 1]`` the alternating series truncated after its third term
    overshoots, so distances above this bound are above ``arctan(delta)``.
    Certified separations must clear ``arctan(delta)`` itself, which is why
    the bound sits above it and never below.
    """
    if delta > 1:
        return ARCTAN_CAP
    return delta - delta**3 / 3 + delta**5 / 5


def _window(sys, budget: Budget) -> int:
    if is_exact(sys):
        structure = cycle_structure(sys)
        return structure.max_transient + structure.period
    return budget.horizon


def _verdict(sys, ok: bool, witness: str) -> Verdict:
    exact = is_exact(sys)
    reason = "" if exact else "horizon-truncated"
    if ok:
        return Verdict.holds(witness, definitive=exact, reason=reason)
    return Verdict.fails(witness, definitive=exact, reason=reason)


def _minimal(sys, budget: Budget) -> Verdict:
    for x in sys.points:
        if not is_transitive_point(sys, x, budget):
            return _verdict(sys, False, f"orbit of {sys.label(x)} is not dense")
    return _verdict(sys, True, "every orbit is dense")


def _dense(sys, points) -> bool:
    return all(W & points for W in quantifier_sets(sys))


def _f_system(sys, budget: Budget) -> Verdict:
    total = detect_transitivity(sys, TransitivityKind.TOTALLY_TRANSITIVE, budget)
    if not total.is_holds:
        return Verdict(total.outcome, total.definitive, f"not totally transitive: {total.witness}", total.reason)
    periodic = periodic_points(sys)
    if not _dense(sys, periodic):
        return _verdict(sys, False, "periodic points are not dense")
    return Verdict.holds(f"totally transitive, {len(periodic)} periodic points meet every basis set", total.definitive)


def _touhey(sys, budget: Budget) -> Verdict:
    periodic = sorted(periodic_points(sys))
    for U in quantifier_sets(sys):
        candidates = [x for x in periodic if x in U]
        for V in quantifier_sets(sys):
            if not any(any(sys.iterate(x, k) in V for k in range(sys.orbit_structure(x).period)) for x in candidates):
                return _verdict(sys, False, f"no periodic point of {label_set(sys, U)} visits {label_set(sys, V)}")
    return _verdict(sys, True, "every basis pair is linked by a periodic orbit")


def unstable_witness(sys, x: int, threshold: Fraction, window: int) -> dict | None:
    """For each neighbourhood of ``x``, a point ``y`` and time ``n`` separating the orbits beyond ``threshold``."""
    found = {}
    for U in neighbourhoods(sys, x):
        hit = next(
            (
                (y, n)
                for y in sorted(U)
                for n in range(window + 1)
                if sys.space.dist(sys.iterate(x, n), sys.iterate(y, n)) > threshold
            ),
            None,
        )
        if hit is None:
            return None
        found[U] = hit
    return found


def _martelli(sys, budget: Budget) -> Verdict:
    candidates = sorted(transitive_points(sys, budget))
    if not candidates:
        return _verdict(sys, False, "no transitive point")
    window = _window(sys, budget)
    for delta in delta_candidates(sys, budget):
        threshold = martelli_threshold(delta)
        for x in candidates:
            found = unstable_witness(sys, x, threshold, window)
            if found is not None:
                U, (y, n) = next(iter(found.items()))
                return _verdict(
                    sys, True, f"x={sys.label(x)}, delta={delta}: y={sys.label(y)} in {label_set(sys, U)}, n={n}"
                )
    return _verdict(sys, False, f"no orbit among {len(candidates)} transitive points is unstable")


def _accessible(sys, budget: Budget) -> Verdict:
    epsilons = list(budget.epsilons_for(sys.space.diameter))
    if is_exact(sys):
        epsilons.append(sys.space.resolution / 2)
    window = _window(sys, budget)
    sets = quantifier_sets(sys)
    for eps in sorted(set(epsilons), reverse=True):
        for U in sets:
            for V in sets:
                close = any(
                    sys.space.dist(sys.iterate(x, n), sys.iterate(y, n)) < eps
                    for x in sorted(U)
                    for y in sorted(V)
                    for n in range(1, window + 1)
                )
                if not close:
                    return _verdict(sys, False, f"eps={eps}: {label_set(sys, U)} and {label_set(sys, V)} stay apart")
    return _verdict(sys, True, f"every basis pair comes within eps={min(epsilons)}")


def _indecomposable(sys, budget: Budget) -> Verdict:
    if not is_exact(sys):
        return Verdict.unknown("invariant-set enumeration needs an exact backend")
    sets = quantifier_sets(sys)
    closures = {U: forward_closure(sys, U) for U in sets}
    for U in sets:
        for V in sets:
            common = closures[U] & closures[V]
            if not any(W <= common for W in sets):
                return Verdict.fails(
                    f"invariant sets {label_set(sys, closures[U])} and {label_set(sys, closures[V])} share no interior"
                )
    return Verdict.holds(f"{len(set(closures.values()))} generated invariant sets pairwise overlap in interior")


def _omega_full(sys, budget: Budget) -> Verdict:
    everything = frozenset(sys.points)
    for x in sys.points:
        if omega_limit(sys, x, budget) == everything:
            return _verdict(sys, True, f"ω({sys.label(x)}) is the whole space")
    return _verdict(sys, False, "no ω-limit set is the whole space")


def _transitive_points_dense(sys, budget: Budget) -> Verdict:
    points = transitive_points(sys, budget)
    if _dense(sys, points):
        return _verdict(sys, True, f"{len(points)} transitive points meet every basis set")
    return _verdict(sys, False, f"transitive points {label_set(sys, points)} are not dense")


DETECTORS = {
    GlobalKind.MINIMAL: _minimal,
    GlobalKind.F_SYSTEM: _f_system,
    GlobalKind.TOUHEY: _touhey,
    GlobalKind.MARTELLI: _martelli,
    GlobalKind.ACCESSIBLE: _accessible,
    GlobalKind.INDECOMPOSABLE: _indecomposable,
    GlobalKind.OMEGA_FULL: _omega_full,
    GlobalKind.TRANSITIVE_POINTS_DENSE: _transitive_points_dense,
}


def detect_global(sys, kind: GlobalKind | str, budget: Budget) -> Verdict:
    kind = GlobalKind(kind)
    if getattr(sys, "backend", None) is Backend.SHIFT:
        from hyperdyn.detectors.symbolic import shift_verdict

        return shift_verdict(sys, kind.value)
    verdict = DETECTORS[kind](sys, budget)
    logger.debug("%s %s: %s", sys.name, kind.value, verdict)
    return verdict


def detect_accessible(sys, budget: Budget) -> Verdict:
    return detect_global(sys, GlobalKind.ACCESSIBLE, budget)


def detect_indecomposable(sys, budget: Budget | None = None) -> Verdict:
    return detect_global(sys, GlobalKind.INDECOMPOSABLE, budget or Budget())
