"""Step functions with finite point exceptions, and the x**(-1/2) tail family.

A :class:`StepFunction` is constant on finitely many disjoint intervals
(``pieces``), zero elsewhere, and may be overridden at finitely many points
(``exceptions``).  That is enough to hold every finite-stage counterexample
exactly, including indicators of finite sets whose L1 seminorm vanishes.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import DomainError, KindMismatchError
from .exact_core import (
    ONE,
    ZERO,
    Enclosure,
    Interval,
    IntervalSet,
    Point,
    QuadraticIrrational,
    RationalLike,
    as_rational,
    normalize,
    sqrt_enclosure,
)

# x**(-1/2) values are enclosed to 2**-62 so sums of two stay under 2**-60
_SQRT_BITS = 62


def _check_domain(x: Point | int) -> Point:
    if not isinstance(x, QuadraticIrrational):
        x = as_rational(x)
    if not (0 <= x <= 1):
        raise DomainError(f"{x} is outside [0, 1]")
    return x


def _piece_key(item: tuple[Interval, Fraction]) -> tuple:
    iv = item[0]
    return (iv.lo, not iv.lo_closed, iv.hi)


@dataclass(frozen=True)
class StepFunction:
    """Finite step function on [0, 1].

    ``pieces`` are (interval, value) pairs with pairwise disjoint intervals;
    the function is 0 off their union.  ``exceptions`` are (point, value)
    pairs that take priority over the pieces.
    """

    pieces: tuple[tuple[Interval, Fraction], ...] = ()
    exceptions: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        pieces = sorted(((iv, as_rational(v)) for iv, v in self.pieces), key=_piece_key)
        for (a, _), (b, _) in zip(pieces, pieces[1:]):
            if a.hi > b.lo or (a.hi == b.lo and a.hi_closed and b.lo_closed):
                raise ValueError(f"overlapping pieces {a} and {b}")
        exceptions = sorted((as_rational(p), as_rational(v)) for p, v in self.exceptions)
        for (p, _), (q, _) in zip(exceptions, exceptions[1:]):
            if p == q:
                raise ValueError(f"duplicate exception point {p}")
        for p, _ in exceptions:
            _check_domain(p)
        object.__setattr__(self, "pieces", tuple(pieces))
        object.__setattr__(self, "exceptions", tuple(exceptions))
        object.__setattr__(self, "_los", [iv.lo for iv, _ in pieces])
        object.__setattr__(self, "_exc", dict(exceptions))

    # construction helpers

    @classmethod
    def indicator(cls, s: IntervalSet | Iterable[Interval], value: RationalLike = 1) -> StepFunction:
        v = as_rational(value)
        return cls(tuple((iv, v) for iv in s))

    @classmethod
    def constant(cls, c: RationalLike) -> StepFunction:
        c = as_rational(c)
        if c == 0:
            return cls()
        return cls(((Interval.closed(0, 1), c),))

    @classmethod
    def point_mass(cls, points: Iterable[RationalLike], value: RationalLike = 1) -> StepFunction:
        v = as_rational(value)
        return cls((), tuple((as_rational(p), v) for p in points))

    # evaluation

    def base_value(self, x: Point) -> Fraction:
        """Value from the pieces alone, ignoring exceptions."""
        i = bisect.bisect_right(self._los, x)
        for k in (i - 1, i - 2):
            if k >= 0 and self.pieces[k][0].contains(x):
                return self.pieces[k][1]
        return ZERO

    def __call__(self, x: Point | int) -> Fraction:
        x = _check_domain(x)
        if not isinstance(x, QuadraticIrrational) and x in self._exc:
            return self._exc[x]
        return self.base_value(x)

    def breakpoints(self) -> list[Fraction]:
        pts = {ZERO, ONE}
        for iv, _ in self.pieces:
            pts.add(iv.lo)
            pts.add(iv.hi)
        pts.update(p for p, _ in self.exceptions)
        return sorted(pts)

    def support(self) -> IntervalSet:
        return normalize(iv for iv, v in self.pieces if v != 0)

    def with_edits(self, edits: Iterable[tuple[RationalLike, RationalLike]]) -> StepFunction:
        """Same function but overridden at finitely many points."""
        exc = dict(self.exceptions)
        for p, v in edits:
            exc[as_rational(p)] = as_rational(v)
        return StepFunction(self.pieces, tuple(exc.items()))

    def canonical(self) -> StepFunction:
        return combine([self], lambda v: v)

    def __neg__(self) -> StepFunction:
        return combine([self], lambda v: -v)

    def __abs__(self) -> StepFunction:
        return combine([self], abs)


@dataclass(frozen=True)
class KurtzTail:
    """``f_j(x) = 0`` on ``[0, 1/j]`` and ``x**(-1/2)`` on ``(1/j, 1]``."""

    j: int

    def __post_init__(self) -> None:
        if not isinstance(self.j, int) or self.j < 1:
            raise ValueError(f"KurtzTail needs an integer j >= 1, got {self.j!r}")

    @property
    def cutoff(self) -> Fraction:
        return Fraction(1, self.j)

    def __call__(self, x: Point | int) -> Fraction | Enclosure:
        x = _check_domain(x)
        if x <= self.cutoff:
            return ZERO
        if isinstance(x, QuadraticIrrational):
            xe = x.enclosure(_SQRT_BITS + 32)
            lo = sqrt_enclosure(1 / xe.hi, _SQRT_BITS).lo
            hi = sqrt_enclosure(1 / xe.lo, _SQRT_BITS).hi
            return Enclosure(lo, hi)
        return sqrt_enclosure(1 / x, _SQRT_BITS)


PiecewiseFunction = Union[StepFunction, KurtzTail]


def evaluate(f: PiecewiseFunction, x: Point | int) -> Fraction | Enclosure:
    return f(x)


# -- canonical assembly ------------------------------------------------------


def _assemble(bps: Sequence[Fraction], point_vals: Sequence[Fraction],
              open_vals: Sequence[Fraction]) -> StepFunction:
    """Build the canonical step function from values on the atoms of a grid.

    The atoms are the points ``bps[i]`` and the open gaps between them.  Runs
    of gaps with equal value are merged through a point carrying that same
    value; a point joins the neighbouring run whose value it shares, and any
    other nonzero point value becomes an exception.
    """
    runs: list[list] = []  # [first_gap, last_gap, value]
    for i, v in enumerate(open_vals):
        if runs and runs[-1][2] == v and point_vals[i] == v:
            runs[-1][1] = i
        else:
            runs.append([i, i, v])

    pieces = []
    claimed = set()
    n = len(open_vals)
    for r, (first, last, v) in enumerate(runs):
        lo_closed = point_vals[first] == v
        hi_closed = point_vals[last + 1] == v
        if lo_closed:
            claimed.add(first)
        if hi_closed:
            claimed.add(last + 1)
        claimed.update(range(first + 1, last + 1))
        if v != 0:
            pieces.append((Interval(bps[first], bps[last + 1], lo_closed, hi_closed), v))

    exceptions = []
    for i in range(n + 1):
        if i not in claimed and point_vals[i] != 0:
            exceptions.append((bps[i], point_vals[i]))
    return StepFunction(tuple(pieces), tuple(exceptions))


def combine(fs: Sequence[StepFunction], op: Callable[..., Fraction]) -> StepFunction:
    """Pointwise ``op(f_1(x), ..., f_n(x))`` as a canonical step function."""
    for f in fs:
        if not isinstance(f, StepFunction):
            raise KindMismatchError(f"expected a step function, got {type(f).__name__}")
    bps = sorted(set().union(*(f.breakpoints() for f in fs)))
    point_vals = [as_rational(op(*(f(b) for f in fs))) for b in bps]
    open_vals = []
    for a, b in zip(bps, bps[1:]):
        m = (a + b) / 2
        open_vals.append(as_rational(op(*(f.base_value(m) for f in fs))))
    return _assemble(bps, point_vals, open_vals)


def linear_combine(a: RationalLike, f: StepFunction, b: RationalLike, g: StepFunction) -> StepFunction:
    """``a*f + b*g``, exact at every point of [0, 1] including exceptions."""
    a, b = as_rational(a), as_rational(b)
    return combine([f, g], lambda u, v: a * u + b * v)


# -- seminorms and a.e. classes -----------------------------------------------


def seminorm_l1(f: PiecewiseFunction) -> Fraction | Enclosure:
    """Integral of ``|f|`` over [0, 1]; point exceptions carry no mass."""
    if isinstance(f, KurtzTail):
        # antiderivative 2*sqrt(x) between 1/j and 1
        return 2 * (1 - sqrt_enclosure(Fraction(1, f.j), _SQRT_BITS))
    return sum((abs(v) * iv.length for iv, v in f.pieces), ZERO)


def ae_equal(f: StepFunction, g: StepFunction) -> bool:
    """True iff ``f`` and ``g`` differ only on a null set."""
    d = linear_combine(1, f, -1, g)
    # canonical pieces are nondegenerate with nonzero value
    return not d.pieces


@dataclass(frozen=True, eq=False)
class AeClass:
    """Equivalence class of a function modulo equality almost everywhere."""

    representative: PiecewiseFunction

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AeClass):
            return NotImplemented
        f, g = self.representative, other.representative
        if isinstance(f, StepFunction) and isinstance(g, StepFunction):
            return ae_equal(f, g)
        return f == g

    __hash__ = None  # type: ignore[assignment]
