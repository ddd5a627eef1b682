"""
The full shift on ``s`` symbols, restricted to finitely describable points.

A point is either eventually periodic, ``preperiod · period^∞`` in canonical
form, or the enumeration stream: every word in length-lexicographic order,
concatenated, which has a dense orbit. The metric is ``d(x, y) = 2^-k`` with
``k`` the first index where ``x`` and ``y`` disagree; cylinders ``[w]`` are
exactly the balls of radius ``2^-(|w|-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import ClassVar

from hyperdyn.dynsys import Backend, OrbitStructure
from hyperdyn.exceptions import SpecError, UnsupportedBackendError

Word = tuple[int, ...]

STREAM_SCAN_LIMIT = 1 << 20


def as_word(word: str | Word) -> Word:
    if isinstance(word, str):
        return tuple(int(ch) for ch in word)
    return tuple(word)


def _primitive_root(word: Word) -> Word:
    size = len(word)
    for d in range(1, size + 1):
        if size % d == 0 and word[:d] * (size // d) == word:
            return word[:d]
    return word


def _stream_symbol(index: int, symbols: int) -> int:
    length = 1
    while index >= length * symbols**length:
        index -= length * symbols**length
        length += 1
    word_index, position = divmod(index, length)
    return word_index // symbols ** (length - 1 - position) % symbols


@dataclass(frozen=True)
class ShiftPoint:
    preperiod: Word = ()
    period: Word = (0,)
    stream_offset: int | None = None
    stream_symbols: int = 0

    @classmethod
    def of(cls, preperiod: str | Word, period: str | Word) -> ShiftPoint:
        """Canonical eventually periodic point: minimal period, preperiod absorbed."""
        pre, per = as_word(preperiod), as_word(period)
        if not per:
            raise SpecError("period must be a nonempty word")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        return cls(pre, per)

    @classmethod
    def stream(cls, symbols: int, offset: int = 0) -> ShiftPoint:
        return cls((), (), offset, symbols)

    @property
    def is_stream(self) -> bool:
        return self.stream_offset is not None

    def symbol(self, index: int) -> int:
        if self.is_stream:
            return _stream_symbol(self.stream_offset + index, self.stream_symbols)
        if index < len(self.preperiod):
            return self.preperiod[index]
        return self.period[(index - len(self.preperiod)) % len(self.period)]

    def prefix(self, length: int) -> Word:
        return tuple(self.symbol(i) for i in range(length))

    def shift(self, k: int = 1) -> ShiftPoint:
        if k < 0:
            raise ValueError("shift needs k >= 0")
        if self.is_stream:
            return ShiftPoint.stream(self.stream_symbols, self.stream_offset + k)
        if k <= len(self.preperiod):
            return ShiftPoint.of(self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return ShiftPoint.of((), self.period[r:] + self.period[:r])

    def sort_key(self) -> tuple:
        if self.is_stream:
            return (1, self.stream_offset, ())
        return (0, len(self.preperiod) + len(self.period), self.preperiod + self.period)

    def __str__(self) -> str:
        if self.is_stream:
            return f"stream+{self.stream_offset}"
        pre = "".join(map(str, self.preperiod))
        return f"{pre}({''.join(map(str, self.period))})"


def first_disagreement(x: ShiftPoint, y: ShiftPoint) -> int | None:
    """Index of the first differing symbol, or ``None`` when the points are equal."""
    if x == y:
        return None
    if x.is_stream or y.is_stream:
        bound = STREAM_SCAN_LIMIT
    else:
        bound = max(len(x.preperiod), len(y.preperiod)) + math.lcm(len(x.period), len(y.period))
    for i in range(bound):
        if x.symbol(i) != y.symbol(i):
            return i
    if x.is_stream or y.is_stream:
        raise UnsupportedBackendError("points agree on the whole scanned prefix")
    return None


@dataclass(frozen=True, eq=False)
class ShiftSystem:
    """The full shift with cylinders of length <= ``cylinder_len`` as its basis."""

    symbols: int
    cylinder_len: int = 4
    name: str = ""

    backend: ClassVar[Backend] = Backend.SHIFT
    faithful_compactum: ClassVar[bool] = True
    exact: ClassVar[bool] = True
    is_bijection: ClassVar[bool] = False

    def __post_init__(self):
        if self.symbols < 2:
            raise SpecError("the full shift needs at least two symbols")
        if self.cylinder_len < 1:
            raise SpecError("cylinder length must be positive")

    @property
    def alphabet(self) -> range:
        return range(self.symbols)

    def apply(self, x: ShiftPoint) -> ShiftPoint:
        return x.shift(1)

    def iterate(self, x: ShiftPoint, k: int) -> ShiftPoint:
        return x.shift(k)

    def orbit_structure(self, x: ShiftPoint) -> OrbitStructure:
        if x.is_stream:
            raise UnsupportedBackendError("the enumeration stream is not eventually periodic")
        return OrbitStructure(len(x.preperiod), len(x.period))

    def subset_orbit(self, *args, **kwargs):
        raise UnsupportedBackendError("subset trajectories are not enumerable on the shift backend")

    def preimage(self, word: str | Word) -> list[Word]:
        word = as_word(word)
        return [(a,) + word for a in self.alphabet]

    def words(self, length: int) -> list[Word]:
        return [tuple(w) for w in product(self.alphabet, repeat=length)]

    @cached_property
    def basis(self) -> tuple[Word, ...]:
        return tuple(w for length in range(1, self.cylinder_len + 1) for w in self.words(length))

    @cached_property
    def finest_cylinders(self) -> tuple[Word, ...]:
        """Cylinders of maximal length; every basis cylinder contains one of them."""
        return tuple(self.words(self.cylinder_len))

    def in_cylinder(self, x: ShiftPoint, word: Word) -> bool:
        return x.prefix(len(word)) == tuple(word)

    def dist(self, x: ShiftPoint, y: ShiftPoint) -> Fraction:
        k = first_disagreement(x, y)
        return Fraction(0) if k is None else Fraction(1, 2**k)

    def point(self, word: str | Word, tail: str | Word = (0,)) -> ShiftPoint:
        return ShiftPoint.of(word, tail)

    def enumeration_stream(self) -> ShiftPoint:
        return ShiftPoint.stream(self.symbols)

    def label(self, x: ShiftPoint) -> str:
        return str(x)

    def word_label(self, word: Word) -> str:
        return "[" + "".join(map(str, word)) + "]"


def full_shift(symbols: int, cylinder_len: int = 4) -> ShiftSystem:
    return ShiftSystem(symbols, cylinder_len, name=f"full_shift({symbols})")
