"""
The n-fold symmetric product F_n(X), its induced map and the Vietoris basis.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement

from hyperdyn.dynsys import Backend, DynSystem
from hyperdyn.exceptions import EnumerationCapError, SpecError, UnsupportedBackendError
from hyperdyn.metric_core import MetricSpace, PointSet, cached_metric, format_point_set, hausdorff
from hyperdyn.shift import ShiftPoint, ShiftSystem, Word

logger = logging.getLogger(__name__)

DEFAULT_CAP = 200_000

NSubset = frozenset


@dataclass(frozen=True)
class VietorisBasisElement:
    """``<U_1, ..., U_k>``: sets inside the union of the parts meeting every part."""

    parts: tuple[PointSet, ...]

    def __post_init__(self):
        if not self.parts or any(not part for part in self.parts):
            raise SpecError("Vietoris parts must be nonempty")

    @cached_property
    def union(self) -> PointSet:
        return frozenset().union(*self.parts)

    @property
    def has_disjoint_parts(self) -> bool:
        return all(not (a & b) for a, b in combinations(self.parts, 2))


def vietoris_contains(element: VietorisBasisElement, subset: NSubset) -> bool:
    return subset <= element.union and all(subset & part for part in element.parts)


def disjoint_refinement(parts: Sequence[PointSet], basis: Iterable[PointSet]) -> tuple[PointSet, ...] | None:
    """
    Pick basis sets ``W_i ⊆ U_i`` that are pairwise disjoint.

    Parts that are already pairwise disjoint come back unchanged. Returns
    ``None`` when no such choice exists in ``basis``.
    """
    parts = tuple(frozenset(p) for p in parts)
    if all(not (a & b) for a, b in combinations(parts, 2)):
        return parts
    ordered = sorted(set(basis), key=lambda s: (len(s), sorted(s)))
    candidates = [[w for w in ordered if w and w <= part] for part in parts]
    chosen: list[PointSet] = []

    def search(i: int) -> bool:
        if i == len(parts):
            return True
        for w in candidates[i]:
            if all(not (w & other) for other in chosen):
                chosen.append(w)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    if search(0):
        return tuple(chosen)
    logger.debug("No disjoint refinement for parts %s", [format_point_set(p) for p in parts])
    return None


def symmetric_product_size(points: int, n: int) -> int:
    return sum(math.comb(points, k) for k in range(1, n + 1))


@dataclass(frozen=True, eq=False)
class SymmetricProduct:
    base: DynSystem
    n: int
    elements: tuple[NSubset, ...]
    index: dict
    induced: tuple[int, ...]
    singleton_stratum: frozenset[int]
    metric: MetricSpace

    def element(self, i: int) -> NSubset:
        return self.elements[i]

    def index_of(self, subset: Iterable[int]) -> int:
        return self.index[frozenset(subset)]

    def label(self, i: int) -> str:
        return format_point_set(self.elements[i])

    def induced_apply(self, subset: NSubset) -> NSubset:
        return induced_apply(self, subset)

    def vietoris_elements(self, sizes: Iterable[int] | None = None) -> list[VietorisBasisElement]:
        sizes = range(1, self.n + 1) if sizes is None else sizes
        base_basis = sorted(set(self.base.basis), key=lambda s: (len(s), sorted(s)))
        found: dict[tuple[PointSet, ...], VietorisBasisElement] = {}
        for k in sizes:
            for parts in combinations_with_replacement(base_basis, k):
                found.setdefault(parts, VietorisBasisElement(parts))
        return list(found.values())

    def realize(self, element: VietorisBasisElement) -> frozenset[int]:
        """Indices of the product elements inside ``element``."""
        return frozenset(i for i, subset in enumerate(self.elements) if vietoris_contains(element, subset))

    @cached_property
    def system(self) -> DynSystem:
        """The product as a tabulated system whose basis is the realized Vietoris basis."""
        realized = {self.realize(element) for element in self.vietoris_elements()}
        basis = tuple(sorted((r for r in realized if r), key=lambda s: (len(s), sorted(s))))
        labels = tuple(self.label(i) for i in range(len(self.elements)))
        return DynSystem(
            f"F_{self.n}({self.base.name})",
            self.metric,
            self.induced,
            basis,
            self.base.backend,
            self.base.faithful_compactum,
            labels,
        )


def induced_apply(product: SymmetricProduct, subset: NSubset) -> NSubset:
    """``F_n(f)(A) = f(A)``."""
    return product.base.image(subset)


def build_symmetric_product(sys: DynSystem, n: int, cap: int = DEFAULT_CAP) -> SymmetricProduct:
    if n < 1:
        raise SpecError(f"symmetric products need n >= 1, got {n}")
    if isinstance(sys, ShiftSystem):
        raise UnsupportedBackendError("use ShiftProduct for the shift backend")
    size = symmetric_product_size(sys.size, n)
    if size > cap:
        raise EnumerationCapError(size, cap)
    elements = tuple(
        frozenset(members) for k in range(1, n + 1) for members in combinations(sys.points, k)
    )
    index = {subset: i for i, subset in enumerate(elements)}
    induced = tuple(index[sys.image(subset)] for subset in elements)
    singletons = frozenset(i for i, subset in enumerate(elements) if len(subset) == 1)
    base_space = sys.space

    def distance(i: int, j: int) -> Fraction:
        return hausdorff(base_space, elements[i], elements[j])

    metric = cached_metric(MetricSpace(len(elements), distance, name=f"H({base_space.name})"))
    logger.debug("Built F_%d(%s) with %d elements", n, sys.name, len(elements))
    return SymmetricProduct(sys, n, elements, index, induced, singletons, metric)


@dataclass(frozen=True, eq=False)
class ShiftProduct:
    """
    F_n of the full shift without global enumeration.

    Elements are frozensets of ``ShiftPoint``; basis elements are tuples of
    distinct finest cylinders.
    """

    base: ShiftSystem
    n: int

    backend = Backend.SHIFT
    faithful_compactum = True
    exact = True

    @property
    def name(self) -> str:
        return f"F_{self.n}({self.base.name})"

    def induced_apply(self, subset: frozenset[ShiftPoint]) -> frozenset[ShiftPoint]:
        return frozenset(x.shift(1) for x in subset)

    def iterate(self, subset: frozenset[ShiftPoint], k: int) -> frozenset[ShiftPoint]:
        return frozenset(x.shift(k) for x in subset)

    def contains(self, parts: tuple[Word, ...], subset: frozenset[ShiftPoint]) -> bool:
        return (
            0 < len(subset) <= self.n
            and all(any(self.base.in_cylinder(x, w) for w in parts) for x in subset)
            and all(any(self.base.in_cylinder(x, w) for x in subset) for w in parts)
        )

    @cached_property
    def basis(self) -> tuple[tuple[Word, ...], ...]:
        words = self.base.finest_cylinders
        return tuple(parts for k in range(1, self.n + 1) for parts in combinations(words, k))

    def label(self, subset: frozenset[ShiftPoint]) -> str:
        return "{" + ",".join(str(x) for x in sorted(subset, key=ShiftPoint.sort_key)) + "}"

    def parts_label(self, parts: tuple[Word, ...]) -> str:
        return "<" + ",".join(self.base.word_label(w) for w in parts) + ">"
