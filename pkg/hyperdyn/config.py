"""
Budgets and flat ``key=value`` configuration files.

The same reader handles config files, system files and metric files. Lines
without ``=`` are kept in order as table rows, which is how explicit distance
tables are written.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from hyperdyn.exceptions import SpecError

CONFIG_ENV_VAR = "HYPERDYN_CONFIG"
DEFAULT_FACTORS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


class FlatConfig(NamedTuple):
    values: dict[str, str]
    rows: list[str]


def read_flat_config(text: str) -> FlatConfig:
    values: dict[str, str] = {}
    rows: list[str] = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.lower()] = value
        else:
            rows.append(line)
    return FlatConfig(values, rows)


def parse_fraction(text: str) -> Fraction:
    """Parse ``p/q`` or an integer into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise SpecError(f"not a rational: {text!r}") from e


def parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_fraction(item) for item in text.split(",") if item.strip())


@dataclass(frozen=True)
class Budget:
    """
    Finite stand-ins for the unbounded quantifiers of the property definitions.

    ``delta_grid`` and ``eps_grid`` of ``None`` mean ``diameter × {1/2, 1/4, 1/8, 1/16}``.
    """

    horizon: int = 16
    delta_grid: tuple[Fraction, ...] | None = None
    eps_grid: tuple[Fraction, ...] | None = None
    m_max: int = 3
    progressions: tuple[tuple[int, int], ...] = field(default=((0, 1), (1, 2), (0, 3)))

    def __post_init__(self):
        if self.horizon < 1 or self.m_max < 1:
            raise SpecError("horizon and m-max must be positive")
        for grid in (self.delta_grid, self.eps_grid):
            if grid is not None and (not grid or any(value <= 0 for value in grid)):
                raise SpecError("delta and eps grids must hold positive rationals")
        if any(step < 1 or start < 0 for start, step in self.progressions):
            raise SpecError("progressions need a nonnegative start and a positive step")

    def deltas_for(self, diameter: Fraction) -> tuple[Fraction, ...]:
        if self.delta_grid is not None:
            return tuple(sorted(self.delta_grid, reverse=True))
        return tuple(diameter * factor for factor in DEFAULT_FACTORS)

    def epsilons_for(self, diameter: Fraction) -> tuple[Fraction, ...]:
        if self.eps_grid is not None:
            return tuple(sorted(self.eps_grid, reverse=True))
        return tuple(diameter * factor for factor in DEFAULT_FACTORS)

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "delta_grid": None if self.delta_grid is None else [str(v) for v in self.delta_grid],
            "eps_grid": None if self.eps_grid is None else [str(v) for v in self.eps_grid],
            "m_max": self.m_max,
            "progressions": [list(p) for p in self.progressions],
        }


BUDGET_KEYS = {
    "horizon": ("horizon", int),
    "delta-grid": ("delta_grid", parse_fraction_list),
    "eps-grid": ("eps_grid", parse_fraction_list),
    "m-max": ("m_max", int),
}


def budget_from_values(values: dict[str, str], base: Budget | None = None) -> Budget:
    """Apply the budget keys found in ``values`` on top of ``base``."""
    updates = {}
    for key, (attr, convert) in BUDGET_KEYS.items():
        raw = values.get(key, values.get(key.replace("-", "_")))
        if raw is None:
            continue
        try:
            updates[attr] = convert(raw)
        except ValueError as e:
            raise SpecError(f"bad value for {key}: {raw!r}") from e
    return replace(base or Budget(), **updates)


def load_config(path: str | os.PathLike | None = None) -> dict[str, str]:
    """
    Read the flat config named by ``path`` or by ``$HYPERDYN_CONFIG``.

    Returns an empty mapping when neither is set.
    """
    path = path or os.getenv(CONFIG_ENV_VAR)
    if not path:
        return {}
    config_path = Path(path)
    if not config_path.is_file():
        raise SpecError(f"config file not found: {config_path}")
    return read_flat_config(config_path.read_text()).values
