"""
The theorem table.

Each theorem relates numbered statements about a property at the three
levels: the base system, the symmetric product and its suspension. Arrows
are read straight off the statement text; non-implications are kept as
separation arrows, which can be witnessed but never refute anything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from hyperdyn.exceptions import SpecError


class Level(str, Enum):
    BASE = "base"
    PRODUCT = "product"
    SUSPENSION = "suspension"


class ArrowKind(str, Enum):
    IMPLICATION = "implication"
    SEPARATION = "separation"


@dataclass(frozen=True)
class Statement:
    level: Level
    prop: str

    def key(self) -> str:
        return f"{self.level.value}:{self.prop}"


@dataclass(frozen=True)
class Arrow:
    premise: Statement
    conclusion: Statement
    kind: ArrowKind = ArrowKind.IMPLICATION

    def to_dict(self) -> dict:
        return {
            "premise_level": self.premise.level.value,
            "premise_property": self.premise.prop,
            "conclusion_level": self.conclusion.level.value,
            "conclusion_property": self.conclusion.prop,
            "kind": self.kind.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Arrow:
        return cls(
            Statement(Level(data["premise_level"]), data["premise_property"]),
            Statement(Level(data["conclusion_level"]), data["conclusion_property"]),
            ArrowKind(data.get("kind", ArrowKind.IMPLICATION.value)),
        )

    def __str__(self) -> str:
        sign = "=>" if self.kind is ArrowKind.IMPLICATION else "=/=>"
        return f"{self.premise.key()} {sign} {self.conclusion.key()}"


@dataclass(frozen=True)
class TheoremSpec:
    """
    One theorem: its numbered statements and the arrows between them.

    ``pointwise`` theorems talk about a point A of F_n(X) rather than about
    the whole map; the suite checks them for every A.
    """

    id: str
    statements: dict[int, Statement] = field(compare=False)
    implications: tuple[tuple[int, int], ...]
    anchor: str
    separations: tuple[tuple[int, int], ...] = ()
    requires_no_isolated_points: bool = False
    requires_faithful_compactum: bool = False
    requires_bijection: bool = False
    pointwise: bool = False
    substitution: str = ""
    notes: str = field(default="", compare=False)

    @property
    def number(self) -> int:
        return int(self.id[1:])

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        implied = tuple(Arrow(self.statements[a], self.statements[b]) for a, b in self.implications)
        separated = tuple(
            Arrow(self.statements[a], self.statements[b], ArrowKind.SEPARATION) for a, b in self.separations
        )
        return implied + separated

    @property
    def properties(self) -> tuple[Statement, ...]:
        return tuple(dict.fromkeys(s for arrow in self.arrows for s in (arrow.premise, arrow.conclusion)))


_ARROW = re.compile(r"^(\d)\s*(->|<->|-/->)\s*(\d)$")


def _arrows(text: str) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
    """``"2<->3, 2->1, 1-/->2"`` into implication and separation pairs."""
    implications, separations = [], []
    for item in text.split(","):
        match = _ARROW.match(item.strip())
        if not match:
            raise SpecError(f"bad arrow {item!r}")
        a, sign, b = int(match[1]), match[2], int(match[3])
        if sign == "->":
            implications.append((a, b))
        elif sign == "<->":
            implications += [(a, b), (b, a)]
        else:
            separations.append((a, b))
    return tuple(implications), tuple(separations)


def _three_levels(number: int, prop: str, arrows: str, anchor: str, **flags) -> TheoremSpec:
    statements = {i: Statement(level, prop) for i, level in enumerate(Level, start=1)}
    implications, separations = _arrows(arrows)
    return TheoremSpec(f"T{number}", statements, implications, anchor, separations, **flags)


def _all_equivalent(number: int, statements: dict[int, Statement], anchor: str, **flags) -> TheoremSpec:
    pairs = tuple((a, b) for a in statements for b in statements if a != b)
    return TheoremSpec(f"T{number}", statements, pairs, anchor, **flags)


_EQUIVALENT_3 = "Then (2) and (3) are equivalent, and (2) implies (1)."
_EQUIVALENT_3_HOLD = "Then the following hold: (2) and (3) are equivalent, (2) implies (1)."
_EQUIVALENT_3_SHORT = "Then (2) and (3) are equivalent, (2) implies (1)."
_SEPARATED = "Then (2) and (3) are equivalent, (2) implies (1), but (1) does not imply (2)."
_SEPARATED_HOLD = "Then the following hold: (2) and (3) are equivalent, (2) implies (1), but (1) does not imply (2)."
_PRODUCT_DOWN = "Then (1) and (2) are equivalent, and (3) implies (2)."
_SPLIT = "Then (2) implies (1), and (2) implies (3)."

_MIXING_FAMILY = {
    1: Statement(Level.BASE, "weakly_mixing"),
    2: Statement(Level.PRODUCT, "weakly_mixing"),
    3: Statement(Level.SUSPENSION, "weakly_mixing"),
    4: Statement(Level.PRODUCT, "totally_transitive"),
    5: Statement(Level.SUSPENSION, "totally_transitive"),
    6: Statement(Level.PRODUCT, "transitive"),
    7: Statement(Level.SUSPENSION, "transitive"),
}

IRRATIONAL_ROTATION_PROBE = "golden377"

THEOREMS: tuple[TheoremSpec, ...] = (
    _three_levels(1, "sensitive", "3->2, 2->1", "Then (3) implies (2), and (2) implies (1)."),
    _three_levels(2, "cofinite_sensitive", "1<->2, 3->2", _PRODUCT_DOWN),
    _three_levels(3, "multi_sensitive", "1<->2, 3->2", _PRODUCT_DOWN),
    _three_levels(4, "z_transitive", "2<->3, 2->1, 1-/->2", _SEPARATED),
    TheoremSpec(
        "T5",
        {1: Statement(Level.PRODUCT, "z_transitive"), 2: Statement(Level.BASE, "weakly_mixing")},
        ((1, 2), (2, 1)),
        "Z-transitive if and only if",
    ),
    _three_levels(
        6,
        "quasi_periodic",
        "1->2, 2->3",
        "Then the following hold: (1) implies (2), and (2) implies (3).",
        pointwise=True,
    ),
    _three_levels(7, "accessible", "2->1, 2->3", "Then the following hold: (2) implies (1), and (2) implies (3)."),
    _three_levels(8, "indecomposable", "2<->3, 2->1", _EQUIVALENT_3),
    _three_levels(9, "multi_transitive", "2<->3, 2->1", _EQUIVALENT_3),
    _three_levels(10, "delta_transitive", "2->1, 2->3", _SPLIT),
    _three_levels(11, "delta_mixing", "2->1, 2->3", _SPLIT),
    _all_equivalent(12, _MIXING_FAMILY, "Then the following are equivalent"),
    TheoremSpec(
        "T13",
        {1: Statement(Level.BASE, "martelli"), 2: Statement(Level.PRODUCT, "martelli")},
        ((2, 1),),
        "If $F_n(f)$ is Martelli's chaos, then $f$ is Martelli's chaos.",
    ),
    _all_equivalent(
        14,
        {**_MIXING_FAMILY, 8: Statement(Level.PRODUCT, "martelli")},
        "Then the following are equivalent",
        requires_no_isolated_points=True,
        notes="item (6) is read as transitivity of F_n(f)",
    ),
    _three_levels(15, "transitive_point", "2<->3, 2->1, 1-/->2", _SEPARATED_HOLD, pointwise=True),
    _three_levels(16, "omega_full", "2<->3, 2->1", _EQUIVALENT_3_HOLD),
    _three_levels(17, "transitive_points_dense", "2<->3, 2->1, 1-/->2", _SEPARATED),
    _three_levels(18, "transitive_with_probe", "2<->3, 2->1, 1-/->2", _SEPARATED),
    _three_levels(19, "f_system", "2<->3, 2->1", _EQUIVALENT_3_HOLD),
    _three_levels(20, "tt_plus_plus", "2<->3, 2->1, 1-/->2", _SEPARATED),
    _three_levels(21, "touhey", "2<->3, 2->1, 1-/->2", _SEPARATED),
    _three_levels(22, "two_sided", "2<->3, 2->1", _EQUIVALENT_3_SHORT),
    _three_levels(23, "fully_exact", "2<->3, 2->1", _EQUIVALENT_3),
    _three_levels(
        24,
        "strongly_transitive",
        "2->3, 3->1, 1-/->2, 1-/->3",
        "Then (2) implies (3), (3) implies (1), but (1) does not imply (2) or (3).",
        substitution=(
            f"T24: the irrational rotation separating (1) from (2) and (3) is probed by {IRRATIONAL_ROTATION_PROBE}, "
            "a rotation by a ratio of consecutive Fibonacci numbers"
        ),
    ),
)

THEOREMS_BY_ID = {theorem.id: theorem for theorem in THEOREMS}


def select_theorems(ids: str | list[str] | None) -> tuple[TheoremSpec, ...]:
    """``"all"``, ``None`` or a comma separated list such as ``"T1,T12"`` (the ``T`` is optional)."""
    if ids is None or ids == "all":
        return THEOREMS
    if isinstance(ids, str):
        ids = [item for item in ids.split(",") if item.strip()]
    selected = []
    for raw in ids:
        key = raw.strip().upper()
        key = key if key.startswith("T") else f"T{key}"
        if key not in THEOREMS_BY_ID:
            raise SpecError(f"unknown theorem {raw!r}")
        selected.append(THEOREMS_BY_ID[key])
    unique = {theorem.id: theorem for theorem in selected}
    return tuple(sorted(unique.values(), key=lambda theorem: theorem.number))
