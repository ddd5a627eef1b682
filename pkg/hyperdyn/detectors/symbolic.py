"""
Constructive verdicts for the full shift and its induced systems.

Every ``Holds`` on the shift itself comes from an explicit word construction
that is replayed against the finest cylinders before the verdict is
returned; a construction that does not replay gives ``Unknown``, and so
does a property without one. Point classes that follow from mixing alone
are stated without a replay.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from fractions import Fraction
from itertools import product

from hyperdyn.detectors.hitting import HittingTimeSet
from hyperdyn.detectors.verdict import Verdict
from hyperdyn.hyperspace import ShiftProduct
from hyperdyn.shift import ShiftPoint, ShiftSystem, Word, as_word
from hyperdyn.suspension import COLLAPSED, ShiftSuspension, q

logger = logging.getLogger(__name__)

SEPARATION = Fraction(1, 2)


class ConstructionError(AssertionError):
    """A word construction did not land where it was meant to."""


def _check(condition: bool, message: str):
    if not condition:
        raise ConstructionError(message)


def cylinder_hitting_times(U: Word | str, V: Word | str) -> HittingTimeSet:
    """
    ``N(U,V)`` for cylinders of the full shift.

    Every ``n >= |u|`` is a hit; a smaller ``n`` hits when the tail of ``u``
    from ``n`` on is compatible with ``v``.
    """
    u, v = as_word(U), as_word(V)
    transient = frozenset(n for n in range(1, len(u)) if all(a == b for a, b in zip(u[n:], v)))
    return HittingTimeSet(transient, max(len(u), 1), 1, frozenset({0}))


def _sensitive(sys: ShiftSystem) -> Verdict:
    for w in sys.finest_cylinders:
        x, y = sys.point(w + (0,)), sys.point(w + (1,))
        n = len(w)
        _check(sys.in_cylinder(x, w) and sys.in_cylinder(y, w), "separating pair left the cylinder")
        _check(sys.dist(sys.iterate(x, n), sys.iterate(y, n)) > SEPARATION, "pair did not separate")
    w = sys.finest_cylinders[0]
    return Verdict.holds(f"delta={SEPARATION}; [{_word(w)}]: x={_word(w)}0(0), y={_word(w)}1(0), n={len(w)}")


def _cofinite_sensitive(sys: ShiftSystem) -> Verdict:
    length = sys.cylinder_len
    for w in sys.finest_cylinders:
        for n in range(length, length + 4):
            pad = (0,) * (n - length)
            x, y = sys.point(w + pad + (0,)), sys.point(w + pad + (1,))
            _check(sys.dist(sys.iterate(x, n), sys.iterate(y, n)) > SEPARATION, "cofinite pair did not separate")
    return Verdict.holds(f"delta={SEPARATION}, N={length - 1}: x=w0^k0(0), y=w0^k1(0) for n=|w|+k")


def _linking_point(sys: ShiftSystem, u: Word, v: Word, n: int) -> ShiftPoint:
    """A point of ``[u]`` whose ``n``-th image lies in ``[v]``, for ``n >= |u|``."""
    return sys.point(u + (0,) * (n - len(u)) + v)


def _linked(sys: ShiftSystem, u: Word, v: Word, n: int) -> bool:
    x = _linking_point(sys, u, v, n)
    return sys.in_cylinder(x, u) and sys.in_cylinder(sys.iterate(x, n), v)


def _mixing(sys: ShiftSystem) -> Verdict:
    length = sys.cylinder_len
    for u, v in product(sys.finest_cylinders, repeat=2):
        for n in range(length, length + 3):
            _check(_linked(sys, u, v, n), f"u={_word(u)} not linked to v={_word(v)} at n={n}")
    return Verdict.holds(f"N={length}: x=u0^(n-|u|)v(0) for every n >= N")


def _touhey(sys: ShiftSystem) -> Verdict:
    for u, v in product(sys.finest_cylinders, repeat=2):
        x = ShiftPoint.of((), u + v)
        _check(x.preperiod == () and sys.in_cylinder(x, u), "periodic point left [u]")
        _check(sys.in_cylinder(sys.iterate(x, len(u)), v), "periodic point missed [v]")
    return Verdict.holds("x=(uv) periodic, k=|u|")


def _onto(sys: ShiftSystem) -> int:
    """Replays ``σ^|u|[u]`` meeting every finest cylinder and returns the step length."""
    length = sys.cylinder_len
    for u, v in product(sys.finest_cylinders, repeat=2):
        _check(_linked(sys, u, v, length), f"σ^{length}[{_word(u)}] missed [{_word(v)}]")
    return length


def _fully_exact(sys: ShiftSystem) -> Verdict:
    k = _onto(sys)
    return Verdict.holds(f"k={k}: the image of a cylinder [w] under σ^|w| is the whole space")


def _strongly_transitive(sys: ShiftSystem) -> Verdict:
    return Verdict.holds(f"M={_onto(sys)}: σ^|u|[u] is the whole space")


def _totally_transitive(sys: ShiftSystem, powers: int = 3) -> Verdict:
    length = sys.cylinder_len
    for k in range(1, powers + 1):
        n = -(-length // k)
        for u, v in product(sys.finest_cylinders, repeat=2):
            _check(_linked(sys, u, v, k * n), f"σ^{k} does not carry [{_word(u)}] into [{_word(v)}]")
    return Verdict.holds(f"σ^k links [u] to [v] after ceil({length}/k) steps, checked for k <= {powers}")


def _multi_transitive(sys: ShiftSystem) -> Verdict:
    _onto(sys)
    return Verdict.holds(
        "σ^(i n)[u_i] is the whole space once n >= |u_i|", definitive=False, reason="arity bounded by m-max"
    )


def _dense_periodic(sys: ShiftSystem):
    for w in sys.finest_cylinders:
        x = ShiftPoint.of((), w)
        _check(sys.in_cylinder(x, w) and sys.iterate(x, len(w)) == x, f"({_word(w)}) is not periodic in [{_word(w)}]")


def _f_system(sys: ShiftSystem) -> Verdict:
    _totally_transitive(sys)
    _dense_periodic(sys)
    return Verdict.holds("totally transitive; (w) is a periodic point of every [w]")


def _stream_reach(sys: ShiftSystem, length: int) -> int:
    """Index where the stream has listed every word up to ``length``."""
    return sum(ell * sys.symbols**ell for ell in range(1, length + 1))


def stream_visits(sys: ShiftSystem, word: Word, start: int = 0) -> list[int]:
    """
    Times ``n >= start`` with ``σ^n`` of the stream in ``[word]``.

    The search runs to the end of the first word block that starts after
    ``start``; that block lists ``word`` followed by zeros.
    """
    word = as_word(word)
    length = len(word)
    while _stream_reach(sys, length) <= start:
        length += 1
    end = _stream_reach(sys, length + 1)
    symbols = sys.enumeration_stream().prefix(end + len(word))
    return [n for n in range(start, end) if symbols[n : n + len(word)] == word]


def _omega_full(sys: ShiftSystem) -> Verdict:
    for w in sys.finest_cylinders:
        _check(len(stream_visits(sys, w)) >= 2, f"the stream does not return to [{_word(w)}]")
    return Verdict.holds("every word recurs in the enumeration stream, so its ω-limit is everything")


def _transitive_points_dense(sys: ShiftSystem) -> Verdict:
    for w in sys.finest_cylinders:
        visits = stream_visits(sys, w)
        _check(bool(visits), f"the stream never enters [{_word(w)}]")
        for v in sys.finest_cylinders:
            _check(bool(stream_visits(sys, v, visits[0] + 1)), f"σ^{visits[0]} of the stream misses [{_word(v)}]")
    return Verdict.holds("the stream shifted into [w] goes on to visit every cylinder")


def _martelli(sys: ShiftSystem) -> Verdict:
    from hyperdyn.detectors.global_props import martelli_threshold

    x = sys.enumeration_stream()
    threshold = martelli_threshold(SEPARATION)
    for length in range(1, sys.cylinder_len + 1):
        prefix = x.prefix(length)
        flipped = (x.symbol(length) + 1) % sys.symbols
        y = sys.point(prefix + (flipped,))
        _check(sys.in_cylinder(y, prefix), "unstable partner left the neighbourhood")
        _check(sys.dist(sys.iterate(x, length), sys.iterate(y, length)) > threshold, "orbits did not separate")
    return Verdict.holds(
        f"x=enumeration stream, delta={SEPARATION}: y flips symbol l of x, n=l separates beyond {threshold}"
    )


def _accessible(sys: ShiftSystem) -> Verdict:
    length = sys.cylinder_len
    for u, v in product(sys.finest_cylinders, repeat=2):
        x, y = sys.point(u), sys.point(v)
        _check(sys.dist(sys.iterate(x, length), sys.iterate(y, length)) == 0, "orbits did not merge")
    return Verdict.holds(f"x=u(0), y=v(0) coincide after n={length} steps, for every eps")


def _word(w: Word) -> str:
    return "".join(map(str, w))


BASE_RULES: dict[str, Callable[[ShiftSystem], Verdict]] = {
    "sensitive": _sensitive,
    "cofinite_sensitive": _cofinite_sensitive,
    "multi_sensitive": lambda sys: _cofinite_sensitive(sys).tentative("arity is unbounded"),
    "transitive": _mixing,
    "z_transitive": _mixing,
    "weakly_mixing": _mixing,
    "mixing": _mixing,
    "tt_plus_plus": _mixing,
    "totally_transitive": _totally_transitive,
    "strongly_transitive": _strongly_transitive,
    "multi_transitive": _multi_transitive,
    "two_sided": lambda sys: Verdict.fails("the shift is not a bijection"),
    "fully_exact": _fully_exact,
    "touhey": _touhey,
    "martelli": _martelli,
    "accessible": _accessible,
    "minimal": lambda sys: Verdict.fails("the fixed point (0) has a finite orbit"),
    "f_system": _f_system,
    "omega_full": _omega_full,
    "transitive_points_dense": _transitive_points_dense,
}


def _product_transitive(sys: ShiftProduct) -> Verdict:
    length = sys.base.cylinder_len
    for U, V in product(sys.basis, repeat=2):
        size = max(len(U), len(V))
        members = frozenset(
            sys.base.point(U[min(t, len(U) - 1)] + V[min(t, len(V) - 1)]) for t in range(size)
        )
        _check(sys.contains(U, members), "start set left its Vietoris element")
        _check(sys.contains(V, sys.iterate(members, length)), "image missed the target Vietoris element")
    return Verdict.holds(f"n={length}: A={{u_i v_j (0)}} pairs every part of U with every part of V")


def _suspension_witness(sys: ShiftSuspension, U: tuple, V: tuple):
    """Start point and time linking the basis element ``U`` to ``V``."""
    base, length = sys.base, sys.base.cylinder_len
    (kind_u, data_u), (kind_v, data_v) = U, V
    if kind_u == "basepoint" and kind_v == "basepoint":
        return COLLAPSED, 1
    if kind_u == "basepoint":
        zeros = (0,) * data_u
        return q(base.point(zeros + v) for v in data_v), data_u
    if kind_v == "basepoint":
        return q(base.point(u) for u in data_u), length
    size = max(len(data_u), len(data_v))
    members = (base.point(data_u[min(t, len(data_u) - 1)] + data_v[min(t, len(data_v) - 1)]) for t in range(size))
    return q(members), length


def _suspension_transitive(sys: ShiftSuspension) -> Verdict:
    for U, V in product(sys.basis, repeat=2):
        chi, n = _suspension_witness(sys, U, V)
        _check(sys.contains(U, chi), f"start point left {sys.element_label(U)}")
        _check(sys.contains(V, sys.iterate(chi, n)), f"image missed {sys.element_label(V)}")
    return Verdict.holds("Vietoris pairs via u_i v_j (0); the basepoint via 0^m v_j (0) and u_i (0)")


LEVEL_RULES: dict[type, Callable] = {
    ShiftProduct: _product_transitive,
    ShiftSuspension: _suspension_transitive,
}


def shift_verdict(sys, prop: str) -> Verdict:
    """Verdict for ``prop`` on the shift or on one of its induced systems."""
    try:
        if isinstance(sys, ShiftSystem):
            rule = BASE_RULES.get(prop)
            if rule is None:
                return Verdict.unknown(f"no symbolic construction for {prop}")
            return rule(sys)
        if prop in ("transitive", "z_transitive"):
            return LEVEL_RULES[type(sys)](sys)
        return Verdict.unknown(f"no symbolic construction for {prop} on {sys.name}")
    except ConstructionError as e:
        logger.warning("Construction for %s on %s failed: %s", prop, getattr(sys, "name", sys), e)
        return Verdict.unknown(f"construction did not verify: {e}")


def classify_shift_point(sys: ShiftSystem, x: ShiftPoint, kind: str) -> Verdict:
    if x.is_stream:
        if kind == "recurrent":
            head = x.prefix(sys.cylinder_len)
            if len(stream_visits(sys, head, x.stream_offset)) >= 2:
                return Verdict.holds("every word occurs in the enumeration stream, and recurs")
            return Verdict.unknown(f"the stream did not return to [{_word(head)}]")
        if kind == "transitive_point":
            missed = [w for w in sys.finest_cylinders if not stream_visits(sys, w, x.stream_offset)]
            if not missed:
                return Verdict.holds("every word occurs in the enumeration stream, and recurs")
            return Verdict.unknown(f"the stream did not reach [{_word(missed[0])}] in time")
        if kind == "nonwandering":
            return Verdict.holds("the shift is mixing, so every point is nonwandering")
        if kind == "periodic":
            return Verdict.fails("the enumeration stream is not eventually periodic")
        return Verdict.unknown(f"{kind} is not decided for the enumeration stream")
    periodic = not x.preperiod
    if kind == "nonwandering":
        return Verdict.holds("the shift is mixing, so every point is nonwandering")
    if kind == "transitive_point":
        return Verdict.fails(f"orbit of {x} is finite")
    if periodic:
        return Verdict.holds(f"σ^{len(x.period)}({x}) = {x}")
    return Verdict.fails(f"{x} never returns to its cylinder of length {2 * len(x.preperiod) + len(x.period)}")
