from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Outcome(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """
    Three-valued detector result.

    ``definitive`` is only ever true for exact semantics; horizon-truncated
    or bounded-arity answers stay tentative. ``witness`` is a readable
    description of what was found, ``reason`` says why the verdict is not
    stronger, and ``budget`` records what was spent on an ``Unknown``.
    """

    outcome: Outcome
    definitive: bool = False
    witness: str = ""
    reason: str = ""
    budget: dict = field(default_factory=dict)

    @classmethod
    def holds(cls, witness: str = "", definitive: bool = True, reason: str = "") -> Verdict:
        return cls(Outcome.HOLDS, definitive, witness, reason)

    @classmethod
    def fails(cls, witness: str = "", definitive: bool = True, reason: str = "") -> Verdict:
        return cls(Outcome.FAILS, definitive, witness, reason)

    @classmethod
    def unknown(cls, reason: str, budget: dict | None = None) -> Verdict:
        return cls(Outcome.UNKNOWN, False, "", reason, budget or {})

    @property
    def is_holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.outcome is Outcome.FAILS

    @property
    def holds_definitively(self) -> bool:
        return self.is_holds and self.definitive

    @property
    def fails_definitively(self) -> bool:
        return self.is_fails and self.definitive

    def tentative(self, reason: str) -> Verdict:
        """Same outcome, no longer definitive."""
        if self.outcome is Outcome.UNKNOWN or not self.definitive:
            return self
        return Verdict(self.outcome, False, self.witness, reason, self.budget)

    def to_dict(self) -> dict:
        data = {"outcome": self.outcome.value, "definitive": self.definitive}
        if self.witness:
            data["witness"] = self.witness
        if self.reason:
            data["reason"] = self.reason
        if self.budget:
            data["budget"] = self.budget
        return data

    @classmethod
    def from_dict(cls, data: dict) -> Verdict:
        return cls(
            Outcome(data["outcome"]),
            data.get("definitive", False),
            data.get("witness", ""),
            data.get("reason", ""),
            data.get("budget", {}),
        )

    def __str__(self) -> str:
        mark = "" if self.definitive else "?"
        text = f"{self.outcome.value.capitalize()}{mark}"
        detail = self.witness or self.reason
        return f"{text} ({detail})" if detail else text
