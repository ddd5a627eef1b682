"""
Property names and the level views the suite evaluates them on.

A property name maps to one detector call. A ``LevelView`` builds F_n and
SF_n of one catalog system on demand: tabulated systems get the enumerated
product and suspension, the shift gets its lazy symbolic counterparts.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import cached_property

from hyperdyn.config import Budget
from hyperdyn.detectors import (
    GlobalKind,
    PointKind,
    SensitivityKind,
    TransitivityKind,
    Verdict,
    classify_point,
    detect_global,
    detect_sensitivity,
    detect_transitivity,
)
from hyperdyn.dynsys import Backend, cartesian_product, finite_rotation
from hyperdyn.exceptions import EnumerationCapError, SpecError, UnsupportedBackendError
from hyperdyn.harness.theorems import Level
from hyperdyn.hyperspace import DEFAULT_CAP, ShiftProduct, SymmetricProduct, build_symmetric_product
from hyperdyn.shift import ShiftSystem
from hyperdyn.suspension import SuspensionSpace, build_shift_suspension, build_suspension, q

logger = logging.getLogger(__name__)

# grid systems are only searched up to a horizon; their products are not worth enumerating past this
GRID_PRODUCT_CAP = 2000

PROBE_PROPERTY = "transitive_with_probe"


def _probe_system():
    return finite_rotation(2, 1)


def _with_probe(sys, budget: Budget) -> Verdict:
    """Transitivity of ``sys x g`` for the two-point swap ``g``."""
    if getattr(sys, "backend", None) is Backend.SHIFT:
        return Verdict.unknown("products with the probe need a tabulated system")
    return detect_transitivity(cartesian_product(sys, _probe_system()), TransitivityKind.TRANSITIVE, budget)


SYSTEM_PROPERTIES: dict[str, Callable[[object, Budget], Verdict]] = {
    "sensitive": lambda sys, budget: detect_sensitivity(sys, SensitivityKind.PLAIN, budget),
    "cofinite_sensitive": lambda sys, budget: detect_sensitivity(sys, SensitivityKind.COFINITE, budget),
    "multi_sensitive": lambda sys, budget: detect_sensitivity(sys, SensitivityKind.MULTI, budget),
    **{
        kind.value: (lambda sys, budget, kind=kind: detect_transitivity(sys, kind, budget))
        for kind in TransitivityKind
    },
    **{kind.value: (lambda sys, budget, kind=kind: detect_global(sys, kind, budget)) for kind in GlobalKind},
    PROBE_PROPERTY: _with_probe,
}

POINT_PROPERTIES = frozenset(kind.value for kind in PointKind)

PROPERTY_NAMES = tuple(sorted([*SYSTEM_PROPERTIES, *POINT_PROPERTIES]))


def check_property_name(prop: str) -> str:
    if prop not in SYSTEM_PROPERTIES and prop not in POINT_PROPERTIES:
        raise SpecError(f"unknown property {prop!r}; known: {', '.join(PROPERTY_NAMES)}")
    return prop


class LevelUnavailable(Exception):
    """A level could not be built within its cap; the verdicts there are ``Unknown``."""


class LevelView:
    """The three levels of one system for a fixed ``n``."""

    def __init__(self, name: str, system, n: int, cap: int = DEFAULT_CAP):
        if n < 2:
            raise SpecError(f"the suspension levels need n >= 2, got {n}")
        self.name = name
        self.base = system
        self.n = n
        self.cap = GRID_PRODUCT_CAP if getattr(system, "backend", None) is Backend.GRID else cap

    @property
    def symbolic(self) -> bool:
        return isinstance(self.base, ShiftSystem)

    @cached_property
    def product(self) -> SymmetricProduct | ShiftProduct:
        if self.symbolic:
            return ShiftProduct(self.base, self.n)
        try:
            return build_symmetric_product(self.base, self.n, self.cap)
        except EnumerationCapError as e:
            if self.base.backend is not Backend.GRID:
                raise
            logger.info("%s: F_%d not enumerated (%s)", self.name, self.n, e)
            raise LevelUnavailable(f"enumeration cap: {e}") from e

    @cached_property
    def suspension(self):
        if self.symbolic:
            return build_shift_suspension(self.product)
        return build_suspension(self.product)

    def system(self, level: Level):
        """The object the detectors run on at ``level``."""
        if level is Level.BASE:
            return self.base
        if level is Level.PRODUCT:
            return self.product if self.symbolic else self.product.system
        return self.suspension if self.symbolic else self.suspension.system

    def subset_point(self, level: Level, subset: frozenset[int]) -> int:
        """Index of ``A`` at the product level, or of ``q(A)`` at the suspension level."""
        if level is Level.PRODUCT:
            return self.product.index_of(subset)
        suspension: SuspensionSpace = self.suspension
        return suspension.index_of(q(subset))


def evaluate(view: LevelView, level: Level, prop: str, budget: Budget) -> Verdict:
    """Verdict for a whole-system property at one level."""
    if prop not in SYSTEM_PROPERTIES:
        raise SpecError(f"{prop!r} is not a property of a whole system")
    try:
        target = view.system(level)
    except LevelUnavailable as e:
        return Verdict.unknown(str(e), budget.to_dict())
    return SYSTEM_PROPERTIES[prop](target, budget)


def evaluate_subset(view: LevelView, level: Level, prop: str, subset: frozenset[int], budget: Budget) -> Verdict:
    """
    Point property for the point ``A`` of F_n(X) at one level.

    At the base level the property is asked of every member of ``A``: it
    holds when all members have it and fails as soon as one does not.
    """
    if prop not in POINT_PROPERTIES:
        raise SpecError(f"{prop!r} is not a point property")
    if view.symbolic:
        return Verdict.unknown("point properties of F_n need a tabulated system")
    try:
        target = view.system(level)
    except LevelUnavailable as e:
        return Verdict.unknown(str(e), budget.to_dict())
    if level is not Level.BASE:
        return classify_point(target, view.subset_point(level, subset), prop, budget)
    verdicts = [(x, classify_point(target, x, prop, budget)) for x in sorted(subset)]
    failed = next(((x, v) for x, v in verdicts if v.is_fails), None)
    if failed is not None:
        x, verdict = failed
        return Verdict.fails(f"{target.label(x)}: {verdict.witness}", verdict.definitive, verdict.reason)
    if all(v.is_holds for _, v in verdicts):
        definitive = all(v.definitive for _, v in verdicts)
        reason = next((v.reason for _, v in verdicts if v.reason), "")
        return Verdict.holds(f"every member of {_subset_label(target, subset)}", definitive, reason)
    return Verdict.unknown(f"some member of {_subset_label(target, subset)} is undecided")


def _subset_label(sys, subset) -> str:
    return "{" + ",".join(sys.label(x) for x in sorted(subset)) + "}"


def check_level(view: LevelView, level: Level, prop: str, budget: Budget, point: frozenset | None = None) -> Verdict:
    """One verdict for the ``check`` command."""
    check_property_name(prop)
    if prop in POINT_PROPERTIES:
        if point is None:
            raise SpecError(f"{prop} is a point property; pass a point")
        if level is Level.BASE and len(point) == 1:
            return classify_point(view.base, next(iter(point)), prop, budget)
        return evaluate_subset(view, level, prop, point, budget)
    try:
        return evaluate(view, level, prop, budget)
    except UnsupportedBackendError as e:
        return Verdict.unknown(str(e))
