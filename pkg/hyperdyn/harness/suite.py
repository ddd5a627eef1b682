"""
Runs the theorem table against a catalog.

Every arrow of every theorem becomes one row. A row is a counterexample
only when its premise holds definitively and its conclusion fails
definitively; anything weaker is consistent or inconclusive.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

from hyperdyn import __version__
from hyperdyn.config import Budget
from hyperdyn.detectors import Verdict
from hyperdyn.exceptions import SpecError, UnsupportedBackendError
from hyperdyn.harness.catalog import Catalog, CatalogEntry
from hyperdyn.harness.properties import LevelUnavailable, LevelView, evaluate, evaluate_subset
from hyperdyn.harness.theorems import Arrow, ArrowKind, Level, Statement, TheoremSpec, select_theorems
from hyperdyn.hyperspace import DEFAULT_CAP
from hyperdyn.metric_core import format_point_set

logger = logging.getLogger(__name__)


class Status(str, Enum):
    CONSISTENT = "consistent"
    COUNTEREXAMPLE = "counterexample"
    INCONCLUSIVE = "inconclusive"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"
    WITNESSED = "separation-witnessed"
    UNWITNESSED = "separation-unwitnessed"


SEVERITY = {
    Status.COUNTEREXAMPLE: 3,
    Status.INCONCLUSIVE: 2,
    Status.HYPOTHESIS_NOT_MET: 1,
    Status.CONSISTENT: 0,
    Status.WITNESSED: 0,
    Status.UNWITNESSED: 0,
}


def arrow_status(arrow: Arrow, premise: Verdict, conclusion: Verdict) -> tuple[Status, str]:
    """Status of one arrow from the verdicts on its two ends."""
    refuted = premise.holds_definitively and conclusion.fails_definitively
    if arrow.kind is ArrowKind.SEPARATION:
        if refuted:
            return Status.WITNESSED, f"{premise.witness}; but {conclusion.witness}"
        return Status.UNWITNESSED, ""
    if refuted:
        return Status.COUNTEREXAMPLE, f"premise: {premise.witness}; conclusion: {conclusion.witness}"
    if premise.fails_definitively:
        return Status.CONSISTENT, f"premise fails: {premise.witness}"
    if conclusion.holds_definitively:
        return Status.CONSISTENT, f"conclusion holds: {conclusion.witness}"
    undecided = premise if not premise.definitive else conclusion
    return Status.INCONCLUSIVE, undecided.reason or undecided.witness


@dataclass(frozen=True)
class ArrowResult:
    theorem: str
    system: str
    n: int
    arrow: Arrow
    status: Status
    witness: str = ""
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    faithful_compactum: bool = False

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "system": self.system,
            "n": self.n,
            "arrow": self.arrow.to_dict(),
            "status": self.status.value,
            "witness": self.witness,
            "verdicts": {key: verdict.to_dict() for key, verdict in self.verdicts.items()},
            "faithful_compactum": self.faithful_compactum,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ArrowResult:
        return cls(
            data["theorem"],
            data["system"],
            int(data["n"]),
            Arrow.from_dict(data["arrow"]),
            Status(data["status"]),
            data.get("witness", ""),
            {key: Verdict.from_dict(value) for key, value in data.get("verdicts", {}).items()},
            bool(data.get("faithful_compactum", False)),
        )


@dataclass(frozen=True)
class CheckResult:
    """All arrows of one theorem on one system for one ``n``."""

    theorem: str
    system: str
    n: int
    rows: tuple[ArrowResult, ...]

    @property
    def status(self) -> Status:
        if not self.rows:
            return Status.CONSISTENT
        worst = max(self.rows, key=lambda row: SEVERITY[row.status])
        if SEVERITY[worst.status] == 0:
            return Status.CONSISTENT
        return worst.status

    @property
    def counterexamples(self) -> list[ArrowResult]:
        return [row for row in self.rows if row.status is Status.COUNTEREXAMPLE]


def _order(result: CheckResult) -> tuple:
    return int(result.theorem[1:]), result.system, result.n


@dataclass
class Report:
    version: str
    budget: dict
    substitutions: list[str] = field(default_factory=list)
    results: list[CheckResult] = field(default_factory=list)
    enumerated: int | None = None

    def rows(self) -> list[ArrowResult]:
        return [row for result in self.results for row in result.rows]

    def counterexamples(self) -> list[ArrowResult]:
        return [row for row in self.rows() if row.status is Status.COUNTEREXAMPLE]

    def status_counts(self) -> Counter:
        return Counter(row.status.value for row in self.rows())

    def verdict_counts(self) -> Counter:
        """How often each ``level:property`` came out holds, fails or unknown."""
        seen = {}
        for row in self.rows():
            for key, verdict in row.verdicts.items():
                seen[(row.system, row.n, key)] = verdict
        return Counter(f"{key}={verdict.outcome.value}" for (_, _, key), verdict in seen.items())

    @classmethod
    def from_rows(cls, version: str, budget: dict, substitutions: list[str], rows: Iterable[ArrowResult], **kwargs):
        grouped: dict[tuple, list[ArrowResult]] = {}
        for row in rows:
            grouped.setdefault((row.theorem, row.system, row.n), []).append(row)
        results = [CheckResult(*key, tuple(items)) for key, items in grouped.items()]
        return cls(version, budget, list(substitutions), sorted(results, key=_order), **kwargs)


def hypothesis_gate(theorem: TheoremSpec, entry: CatalogEntry) -> str:
    """Why ``entry`` does not meet the hypotheses of ``theorem``, or an empty string."""
    if (theorem.requires_no_isolated_points or theorem.requires_faithful_compactum) and not entry.faithful_compactum:
        return f"{entry.name} is a finite stand-in with isolated points"
    if theorem.requires_bijection and not entry.system.is_bijection:
        return f"{entry.name} is not a bijection"
    return ""


class TheoremSuite:
    """Evaluates theorem arrows, sharing one verdict cache across theorems."""

    def __init__(self, catalog: Catalog, budget: Budget | None = None, cap: int = DEFAULT_CAP):
        self.catalog = catalog
        self.budget = budget or Budget()
        self.cap = cap
        self.cache: dict[tuple, Verdict] = {}
        self._views: dict[tuple[str, int], LevelView] = {}

    def view(self, entry: CatalogEntry, n: int) -> LevelView:
        key = (entry.name, n)
        if key not in self._views:
            self._views[key] = LevelView(entry.name, entry.system, n, self.cap)
        return self._views[key]

    def verdict(self, view: LevelView, statement: Statement, subset: frozenset | None = None) -> Verdict:
        # base verdicts of whole-system properties do not depend on n
        n = None if statement.level is Level.BASE and subset is None else view.n
        key = (view.name, n, statement.level, statement.prop, subset)
        if key not in self.cache:
            try:
                if subset is None:
                    verdict = evaluate(view, statement.level, statement.prop, self.budget)
                else:
                    verdict = evaluate_subset(view, statement.level, statement.prop, subset, self.budget)
            except UnsupportedBackendError as e:
                verdict = Verdict.unknown(str(e))
            logger.debug("%s n=%s %s: %s", view.name, n, statement.key(), verdict)
            self.cache[key] = verdict
        return self.cache[key]

    def _ends(self, view: LevelView, arrow: Arrow) -> tuple[Verdict, Verdict]:
        return self.verdict(view, arrow.premise), self.verdict(view, arrow.conclusion)

    def _row(self, theorem, entry, n, arrow, premise, conclusion, gate: str, point: str = "") -> ArrowResult:
        status, witness = arrow_status(arrow, premise, conclusion)
        if gate:
            probe = " (the probe would refute the arrow)" if status is Status.COUNTEREXAMPLE else ""
            status, witness = Status.HYPOTHESIS_NOT_MET, f"{gate}{probe}"
        if point:
            witness = f"A={point}: {witness}" if witness else f"A={point}"
        verdicts = {arrow.premise.key(): premise, arrow.conclusion.key(): conclusion}
        return ArrowResult(theorem.id, entry.name, n, arrow, status, witness, verdicts, entry.faithful_compactum)

    def check(self, theorem: TheoremSpec, entry: CatalogEntry, n: int) -> CheckResult:
        logger.info("Checking %s on %s with n=%d", theorem.id, entry.name, n)
        view = self.view(entry, n)
        gate = hypothesis_gate(theorem, entry)
        if theorem.pointwise:
            rows = self._check_pointwise(theorem, entry, view, gate)
        else:
            rows = tuple(
                self._row(theorem, entry, n, arrow, *self._ends(view, arrow), gate) for arrow in theorem.arrows
            )
        result = CheckResult(theorem.id, entry.name, n, rows)
        if result.counterexamples:
            found = len(result.counterexamples)
            logger.warning("%s on %s (n=%d): %d counterexamples", theorem.id, entry.name, n, found)
        return result

    def _check_pointwise(self, theorem: TheoremSpec, entry: CatalogEntry, view: LevelView, gate: str):
        """Every arrow is checked at every point A of F_n(X); each row reports its worst A."""
        try:
            subsets = [] if view.symbolic else list(view.product.elements)
        except LevelUnavailable as e:
            subsets, unavailable = [], str(e)
        else:
            unavailable = "point properties of F_n need a tabulated system" if view.symbolic else ""
        rows = []
        for arrow in theorem.arrows:
            if not subsets:
                missing = Verdict.unknown(unavailable, self.budget.to_dict())
                rows.append(self._row(theorem, entry, view.n, arrow, missing, missing, gate))
                continue
            worst = None
            for subset in subsets:
                premise = self.verdict(view, arrow.premise, subset)
                conclusion = self.verdict(view, arrow.conclusion, subset)
                row = self._row(theorem, entry, view.n, arrow, premise, conclusion, gate, format_point_set(subset))
                if worst is None or _pointwise_rank(row) > _pointwise_rank(worst):
                    worst = row
                if row.status is Status.COUNTEREXAMPLE:
                    break
            rows.append(worst)
        return tuple(rows)


def _pointwise_rank(row: ArrowResult) -> int:
    if row.status is Status.WITNESSED:
        return 1
    return SEVERITY[row.status]


def run_theorem_suite(
    catalog: Catalog,
    theorem_ids: str | list[str] | None = None,
    n_values: Iterable[int] = (2,),
    budget: Budget | None = None,
    cap: int = DEFAULT_CAP,
    suite: TheoremSuite | None = None,
) -> Report:
    """One ``CheckResult`` per (theorem, system, n), ordered by theorem number, system name and n."""
    selected = select_theorems(theorem_ids)
    n_values = sorted(set(n_values))
    if any(n < 2 for n in n_values):
        raise SpecError("every theorem is stated for n >= 2")
    suite = suite or TheoremSuite(catalog, budget, cap)
    results = [suite.check(theorem, entry, n) for theorem in selected for entry in catalog.values() for n in n_values]
    substitutions = sorted({*catalog.substitutions, *(theorem.substitution for theorem in selected)} - {""})
    report = Report(__version__, suite.budget.to_dict(), substitutions, sorted(results, key=_order))
    logger.info("Suite finished: %d checks, %d counterexamples", len(report.results), len(report.counterexamples()))
    return report
