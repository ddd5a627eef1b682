"""
Exhaustive runs over every self-map of a small cycle.

With at most four points every map, its F_2 and its SF_2 are small enough
that all detectors are exact, so any counterexample here points at a bug.
"""

from __future__ import annotations

import logging
from itertools import product

from hyperdyn.config import Budget
from hyperdyn.dynsys import finite_system
from hyperdyn.exceptions import SpecError
from hyperdyn.harness.catalog import Catalog, CatalogEntry
from hyperdyn.harness.suite import Report, run_theorem_suite
from hyperdyn.metric_core import cycle_metric

logger = logging.getLogger(__name__)

MAX_POINTS = 4


def map_name(table: tuple[int, ...]) -> str:
    return "map" + "".join(map(str, table))


def all_endomaps(point_count: int) -> Catalog:
    """Every map of the ``point_count``-point cycle into itself, as a catalog."""
    if not 1 <= point_count <= MAX_POINTS:
        raise SpecError(f"enumeration supports 1..{MAX_POINTS} points, got {point_count}")
    space = cycle_metric(point_count)
    entries = [
        CatalogEntry(map_name(table), finite_system(map_name(table), table, space), " ".join(map(str, table)))
        for table in product(range(point_count), repeat=point_count)
    ]
    return Catalog(entries)


def brute_force_enumeration(
    point_count: int, n: int = 2, theorem_ids: str | list[str] | None = None, budget: Budget | None = None
) -> Report:
    catalog = all_endomaps(point_count)
    logger.info("Enumerating %d maps on %d points", len(catalog), point_count)
    report = run_theorem_suite(catalog, theorem_ids, (n,), budget)
    report.enumerated = len(catalog)
    return report
