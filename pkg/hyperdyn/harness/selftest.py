"""
Structural self-checks of the metric and quotient machinery.

Each check returns a ``SelfTestResult``; a result without violations is a pass.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import combinations

from hyperdyn.dynsys import Backend, DynSystem, finite_rotation, finite_system
from hyperdyn.harness.catalog import default_catalog
from hyperdyn.hyperspace import build_symmetric_product
from hyperdyn.metric_core import MetricSpace, check_metric_axioms, cycle_metric, hausdorff
from hyperdyn.suspension import (
    COLLAPSED,
    SuspensionSpace,
    build_suspension,
    check_induced_inclusion,
    induced_apply_sfn,
    iterate_sfn,
    q,
    rho,
    rho_direct_oracle,
)

logger = logging.getLogger(__name__)

MAX_SPACE = 5
MAX_HAUSDORFF_SPACE = 6
SEMICONJUGACY_STEPS = 20


@dataclass
class SelfTestResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _suspensions(systems: Iterable[DynSystem], n_values: Iterable[int]) -> Iterable[SuspensionSpace]:
    for system in systems:
        for n in n_values:
            yield build_suspension(build_symmetric_product(system, n))


def hausdorff_axioms(spaces: Iterable[MetricSpace]) -> SelfTestResult:
    """The Hausdorff metric on all nonempty subsets is a metric; larger spaces stop at six-point subsets."""
    result = SelfTestResult("hausdorff metric axioms")
    for space in spaces:
        n = min(space.size, MAX_HAUSDORFF_SPACE)
        product = build_symmetric_product(finite_system(space.name, space.points, space), n)
        report = check_metric_axioms(product.metric)
        result.checked += 1
        if not report.ok:
            labels = [product.label(i) for i in report.triple]
            result.violations.append(f"{space.name}: {report.violation} at {labels}")
    return result


def rotation_isometry(limit: int = MAX_HAUSDORFF_SPACE, n_values=(2, 3)) -> SelfTestResult:
    """A rotation of the cycle induces an isometry of (F_n(X), H)."""
    result = SelfTestResult("rotations induce isometries")
    for size in range(2, limit + 1):
        for k in range(1, size):
            for n in n_values:
                product = build_symmetric_product(finite_rotation(size, k), n)
                metric, image = product.metric, product.induced
                result.checked += 1
                pairs = combinations(metric.points, 2)
                bad = next(((i, j) for i, j in pairs if metric.dist(i, j) != metric.dist(image[i], image[j])), None)
                if bad is not None:
                    pair = ", ".join(product.label(i) for i in bad)
                    result.violations.append(f"finite_rotation({size},{k}), n={n}: distance changes at {pair}")
    return result


def rho_matches_oracle(suspensions: Iterable[SuspensionSpace]) -> SelfTestResult:
    result = SelfTestResult("rho equals the second-level Hausdorff distance")
    for susp in suspensions:
        for chi1, chi2 in combinations(susp.points, 2):
            result.checked += 1
            closed, direct = rho(susp, chi1, chi2), rho_direct_oracle(susp, chi1, chi2)
            if closed != direct:
                result.violations.append(f"{susp.base.name}: rho({chi1},{chi2}) = {closed}, oracle {direct}")
    return result


def rho_axioms(suspensions: Iterable[SuspensionSpace]) -> SelfTestResult:
    result = SelfTestResult("rho metric axioms")
    for susp in suspensions:
        result.checked += 1
        report = check_metric_axioms(susp.metric)
        if not report.ok:
            points = [str(susp.point(i)) for i in report.triple]
            result.violations.append(f"{susp.base.name}, n={susp.n}: {report.violation} at {points}")
    return result


def rho_below_hausdorff(suspensions: Iterable[SuspensionSpace]) -> SelfTestResult:
    result = SelfTestResult("rho(q(A),q(B)) <= H(A,B)")
    for susp in suspensions:
        classes = [chi for chi in susp.points if not chi.is_collapsed]
        for chi1, chi2 in combinations(classes, 2):
            result.checked += 1
            h = hausdorff(susp.base.space, chi1.members, chi2.members)
            if rho(susp, chi1, chi2) > h:
                result.violations.append(f"{susp.base.name}: rho({chi1},{chi2}) exceeds H = {h}")
    return result


def semiconjugacy(suspensions: Iterable[SuspensionSpace], steps: int = SEMICONJUGACY_STEPS) -> SelfTestResult:
    """``q(F_n(f)^k(A)) = SF_n(f)^k(q(A))`` for every A and every k up to ``steps``."""
    result = SelfTestResult("q commutes with the induced maps")
    for susp in suspensions:
        product = susp.product
        for A in product.elements:
            image, chi = A, q(A)
            for k in range(1, steps + 1):
                image, chi = product.induced_apply(image), induced_apply_sfn(susp, chi)
                result.checked += 1
                if q(image) != chi:
                    result.violations.append(f"{susp.base.name}: k={k}, A={product.label(product.index_of(A))}")
                    break
    return result


def basepoint_fixed(suspensions: Iterable[SuspensionSpace]) -> SelfTestResult:
    result = SelfTestResult("the basepoint is fixed")
    for susp in suspensions:
        result.checked += 1
        if induced_apply_sfn(susp, COLLAPSED) != COLLAPSED or susp.induced[0] != 0:
            result.violations.append(f"{susp.base.name}, n={susp.n}")
        elif iterate_sfn(susp, COLLAPSED, SEMICONJUGACY_STEPS) != COLLAPSED:
            result.violations.append(f"{susp.base.name}, n={susp.n}: basepoint drifts")
    return result


def induced_inclusion(suspensions: Iterable[SuspensionSpace], size: int = 2) -> SelfTestResult:
    """``F_n(f)(q^-1(Γ)) ⊆ q^-1(SF_n(f)(Γ))`` for every Γ of at most ``size`` classes."""
    result = SelfTestResult("F_n(f) of a preimage lies in the preimage of the image")
    for susp in suspensions:
        classes = [chi for chi in susp.points if not chi.is_collapsed]
        for k in range(1, size + 1):
            for gamma in combinations(classes, k):
                result.checked += 1
                if not check_induced_inclusion(susp, gamma):
                    result.violations.append(f"{susp.base.name}: Γ={{{', '.join(map(str, gamma))}}}")
    return result


def small_spaces(limit: int = MAX_HAUSDORFF_SPACE) -> list[MetricSpace]:
    return [cycle_metric(size) for size in range(1, limit + 1)]


def small_systems(limit: int = MAX_SPACE) -> list[DynSystem]:
    """The finite catalog systems plus a rotation and a staircase map on every cycle up to ``limit`` points."""
    systems = [entry.system for entry in default_catalog().values() if entry.system.backend is Backend.FINITE]
    for size in range(2, limit + 1):
        systems.append(finite_system(f"rotation{size}", [(i + 1) % size for i in range(size)]))
        systems.append(finite_system(f"stairs{size}", [min(i + 1, size - 1) for i in range(size)]))
    return systems


def run_selftest(
    systems: list[DynSystem] | None = None, spaces: list[MetricSpace] | None = None, n_values=(2, 3)
) -> list[SelfTestResult]:
    systems = systems if systems is not None else small_systems()
    spaces = spaces if spaces is not None else small_spaces()
    suspensions = list(_suspensions(systems, n_values))
    checks: list[Callable[[], SelfTestResult]] = [
        lambda: hausdorff_axioms(spaces),
        lambda: rotation_isometry(),
        lambda: rho_matches_oracle(suspensions),
        lambda: rho_axioms(suspensions),
        lambda: rho_below_hausdorff(suspensions),
        lambda: semiconjugacy(suspensions),
        lambda: basepoint_fixed(suspensions),
        lambda: induced_inclusion(suspensions),
    ]
    results = []
    for check in checks:
        result = check()
        logger.info("%s: %d checked, %d violations", result.name, result.checked, len(result.violations))
        results.append(result)
    return results
