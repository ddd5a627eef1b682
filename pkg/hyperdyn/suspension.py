"""
The symmetric-product suspension SF_n(X) = F_n(X)/F_1(X).

Every singleton collapses to one basepoint, ``COLLAPSED``; multi-point
subsets keep their identity. The metric is the Hausdorff distance between
the images ``G_n(chi) = F_1(X) ∪ q^-1(chi)`` in the hyperspace of F_n(X).
``rho`` evaluates it in closed form and ``rho_direct_oracle`` by brute
force; the two must always agree.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from hyperdyn.dynsys import Backend, DynSystem
from hyperdyn.exceptions import QuotientError, SpecError
from hyperdyn.hyperspace import NSubset, ShiftProduct, SymmetricProduct, VietorisBasisElement, disjoint_refinement
from hyperdyn.metric_core import MetricSpace, ball, cached_metric, chebyshev_radius, format_point_set, hausdorff
from hyperdyn.shift import ShiftPoint, ShiftSystem

logger = logging.getLogger(__name__)

BASEPOINT_LABEL = "F_X"


@dataclass(frozen=True)
class SuspensionPoint:
    members: frozenset | None = None

    @classmethod
    def of(cls, members: Iterable) -> SuspensionPoint:
        members = frozenset(members)
        if len(members) < 2:
            raise QuotientError("a class needs a subset with at least two points")
        return cls(members)

    @property
    def is_collapsed(self) -> bool:
        return self.members is None

    def __str__(self) -> str:
        if self.members is None:
            return BASEPOINT_LABEL
        if all(isinstance(m, int) for m in self.members):
            return format_point_set(self.members)
        return "{" + ",".join(str(m) for m in sorted(self.members, key=ShiftPoint.sort_key)) + "}"


COLLAPSED = SuspensionPoint()


def q(subset: Iterable) -> SuspensionPoint:
    subset = frozenset(subset)
    if not subset:
        raise QuotientError("q is defined on nonempty subsets only")
    return COLLAPSED if len(subset) == 1 else SuspensionPoint(subset)


def q_inv(chi: SuspensionPoint) -> NSubset:
    if chi.is_collapsed:
        raise QuotientError(f"q^-1({BASEPOINT_LABEL}) is the whole singleton stratum, not one subset")
    return chi.members


@dataclass(frozen=True, eq=False)
class SuspensionSpace:
    product: SymmetricProduct
    points: tuple[SuspensionPoint, ...]
    index: dict
    induced: tuple[int, ...]

    @property
    def base(self) -> DynSystem:
        return self.product.base

    @property
    def n(self) -> int:
        return self.product.n

    def point(self, i: int) -> SuspensionPoint:
        return self.points[i]

    def index_of(self, chi: SuspensionPoint) -> int:
        return self.index[chi]

    def radius(self, chi: SuspensionPoint) -> Fraction:
        """Distance to the basepoint: the Chebyshev radius of the class."""
        if chi.is_collapsed:
            return Fraction(0)
        return chebyshev_radius(self.base.space, chi.members)

    @cached_property
    def metric(self) -> MetricSpace:
        points = self.points

        def distance(i: int, j: int) -> Fraction:
            return rho(self, points[i], points[j])

        return cached_metric(MetricSpace(len(points), distance, name=f"rho({self.base.space.name})"))

    def vietoris_images(self) -> list[frozenset[int]]:
        """q-images of the Vietoris elements with k >= 2, refined to disjoint parts."""
        images = []
        base_basis = self.base.basis
        for element in self.product.vietoris_elements(range(2, self.n + 1)):
            parts = disjoint_refinement(element.parts, base_basis)
            if parts is None:
                continue
            refined = VietorisBasisElement(parts)
            image = frozenset(self.index[q(self.product.elements[i])] for i in self.product.realize(refined))
            if image:
                images.append(image)
        return images

    def basepoint_balls(self) -> list[frozenset[int]]:
        """rho-balls around the basepoint, one per distinct radius, the last one covering everything."""
        radii = sorted({self.radius(chi) for chi in self.points[1:]})
        radii.append((radii[-1] if radii else Fraction(0)) + 1)
        return [ball(self.metric, 0, r) for r in radii]

    @cached_property
    def system(self) -> DynSystem:
        """SF_n as a tabulated system; the basis is the disjoint Vietoris images plus balls at the basepoint."""
        found = set(self.vietoris_images()) | set(self.basepoint_balls())
        basis = tuple(sorted(found, key=lambda s: (len(s), sorted(s))))
        labels = tuple(str(chi) for chi in self.points)
        return DynSystem(
            f"SF_{self.n}({self.base.name})",
            self.metric,
            self.induced,
            basis,
            self.base.backend,
            self.base.faithful_compactum,
            labels,
        )


def build_suspension(product: SymmetricProduct) -> SuspensionSpace:
    if product.n < 2:
        raise SpecError("the suspension needs n >= 2")
    points = (COLLAPSED,) + tuple(SuspensionPoint(A) for A in product.elements if len(A) >= 2)
    index = {chi: i for i, chi in enumerate(points)}
    induced = tuple(0 if chi.is_collapsed else index[q(product.base.image(chi.members))] for chi in points)
    logger.debug("Built SF_%d(%s) with %d points", product.n, product.base.name, len(points))
    return SuspensionSpace(product, points, index, induced)


def rho(susp: SuspensionSpace, chi1: SuspensionPoint, chi2: SuspensionPoint) -> Fraction:
    if chi1 == chi2:
        return Fraction(0)
    if chi1.is_collapsed:
        return susp.radius(chi2)
    if chi2.is_collapsed:
        return susp.radius(chi1)
    h = hausdorff(susp.base.space, chi1.members, chi2.members)
    return max(min(susp.radius(chi1), h), min(susp.radius(chi2), h))


def gn_image(susp: SuspensionSpace, chi: SuspensionPoint) -> frozenset[NSubset]:
    """``G_n(chi) = F_1(X) ∪ q^-1(chi)``."""
    singletons = frozenset(frozenset((x,)) for x in susp.base.points)
    return singletons if chi.is_collapsed else singletons | {chi.members}


def rho_direct_oracle(susp: SuspensionSpace, chi1: SuspensionPoint, chi2: SuspensionPoint) -> Fraction:
    space = susp.base.space
    first, second = gn_image(susp, chi1), gn_image(susp, chi2)

    def directed(a_sets, b_sets) -> Fraction:
        return max(min(hausdorff(space, a, b) for b in b_sets) for a in a_sets)

    return max(directed(first, second), directed(second, first))


def induced_apply_sfn(susp, chi: SuspensionPoint) -> SuspensionPoint:
    """``SF_n(f)(chi) = q(F_n(f)(q^-1(chi)))``, with the basepoint fixed."""
    if chi.is_collapsed:
        return COLLAPSED
    return q(susp.product.induced_apply(chi.members))


def iterate_sfn(susp, chi: SuspensionPoint, k: int) -> SuspensionPoint:
    for _ in range(k):
        chi = induced_apply_sfn(susp, chi)
    return chi


def check_induced_inclusion(susp, gamma: Iterable[SuspensionPoint]) -> bool:
    """``F_n(f)(q^-1(Γ)) ⊆ q^-1(SF_n(f)(Γ))``."""
    gamma = list(gamma)
    if any(chi.is_collapsed for chi in gamma):
        raise QuotientError("Γ must avoid the basepoint")
    images = {induced_apply_sfn(susp, chi) for chi in gamma}
    lhs = {susp.product.induced_apply(q_inv(chi)) for chi in gamma}
    return all(q(A) in images for A in lhs)


@dataclass(frozen=True, eq=False)
class ShiftSuspension:
    """
    SF_n of the full shift, evaluated lazily.

    Basis elements are ``("vietoris", words)`` with at least two distinct
    finest cylinders, or ``("basepoint", m)``: the basepoint together with
    every class whose members share their first ``m`` symbols.
    """

    product: ShiftProduct

    backend = Backend.SHIFT
    faithful_compactum = True
    exact = True

    @property
    def base(self) -> ShiftSystem:
        return self.product.base

    @property
    def n(self) -> int:
        return self.product.n

    @property
    def name(self) -> str:
        return f"SF_{self.n}({self.base.name})"

    def induced_apply(self, chi: SuspensionPoint) -> SuspensionPoint:
        return induced_apply_sfn(self, chi)

    def iterate(self, chi: SuspensionPoint, k: int) -> SuspensionPoint:
        if chi.is_collapsed:
            return COLLAPSED
        return q(self.product.iterate(chi.members, k))

    def common_prefix(self, chi: SuspensionPoint) -> int:
        members = sorted(chi.members, key=ShiftPoint.sort_key)
        first = members[0]
        length = 0
        while all(x.symbol(length) == first.symbol(length) for x in members[1:]):
            length += 1
        return length

    def contains(self, element: tuple, chi: SuspensionPoint) -> bool:
        kind, data = element
        if kind == "basepoint":
            return chi.is_collapsed or self.common_prefix(chi) >= data
        return not chi.is_collapsed and self.product.contains(data, chi.members)

    @cached_property
    def basis(self) -> tuple[tuple, ...]:
        vietoris = tuple(("vietoris", parts) for parts in self.product.basis if len(parts) >= 2)
        return vietoris + tuple(("basepoint", m) for m in range(1, self.base.cylinder_len + 1))

    def element_label(self, element: tuple) -> str:
        kind, data = element
        if kind == "basepoint":
            return f"B({BASEPOINT_LABEL},{data})"
        return self.product.parts_label(data)


def build_shift_suspension(product: ShiftProduct) -> ShiftSuspension:
    if product.n < 2:
        raise SpecError("the suspension needs n >= 2")
    return ShiftSuspension(product)
