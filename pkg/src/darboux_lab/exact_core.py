"""Exact rationals, certified enclosures and interval sets on [0, 1].

Every quantity in the package is either an exact ``Fraction`` or an
``Enclosure`` (a pair of rationals known to bracket a real number).
Interval sets carry open/closed endpoint flags so that pointwise
evaluation of indicators is exact, while measures ignore the flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegenerateIntervalError, DomainError, InvariantViolation

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- enclosures --------------------------------------------------------------


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval ``[lo, hi]`` certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"enclosure with lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def exact(cls, x: RationalLike) -> Enclosure:
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: RationalLike | Enclosure) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        x = as_rational(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def overlaps(self, other: Enclosure) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: Enclosure) -> Enclosure:
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: Enclosure) -> Enclosure | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Enclosure(lo, hi) if lo <= hi else None

    def widen(self, r: RationalLike) -> Enclosure:
        r = as_rational(r)
        return Enclosure(self.lo - r, self.hi + r)

    def round_out(self, bits: int) -> Enclosure:
        """Outward rounding to multiples of ``2**-bits``."""
        d = 1 << bits
        lo = (self.lo.numerator * d) // self.lo.denominator
        hi = -((-self.hi.numerator * d) // self.hi.denominator)
        return Enclosure(Fraction(lo, d), Fraction(hi, d))

    def __neg__(self) -> Enclosure:
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other: Enclosure | RationalLike) -> Enclosure:
        o = _lift(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other: Enclosure | RationalLike) -> Enclosure:
        o = _lift(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other: RationalLike) -> Enclosure:
        return _lift(other) - self

    def __mul__(self, other: Enclosure | RationalLike) -> Enclosure:
        o = _lift(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Enclosure | RationalLike) -> Enclosure:
        o = _lift(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        return self * Enclosure(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other: RationalLike) -> Enclosure:
        return _lift(other) / self

    def __abs__(self) -> Enclosure:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(ZERO, max(-self.lo, self.hi))

    def square(self) -> Enclosure:
        a = abs(self)
        return Enclosure(a.lo * a.lo, a.hi * a.hi)

    def __repr__(self) -> str:
        return f"Enclosure({self.lo}, {self.hi})"


def _lift(x: Enclosure | RationalLike) -> Enclosure:
    return x if isinstance(x, Enclosure) else Enclosure.exact(x)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def sqrt_enclosure(x: RationalLike, bits: int = 64) -> Enclosure:
    """Enclose ``sqrt(x)`` with width at most ``2**-bits``; exact for rational squares."""
    x = as_rational(x)
    if x < 0:
        raise DomainError(f"square root of negative rational {x}")
    if _is_square(x.numerator) and _is_square(x.denominator):
        r = Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))
        return Enclosure(r, r)
    s = math.isqrt((x.numerator << (2 * bits)) // x.denominator)
    return Enclosure(Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits))


# -- quadratic irrationals ---------------------------------------------------


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real number ``p + q*sqrt(2)`` with ``q != 0`` (hence never rational)."""

    p: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        p, q = as_rational(self.p), as_rational(self.q)
        if q == 0:
            raise ValueError("q must be nonzero, otherwise the value is rational")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def compare(self, r: RationalLike) -> int:
        """Return the sign of ``self - r`` (never 0)."""
        d = as_rational(r) - self.p
        # sign of q*sqrt(2) - d, decided with integers only
        if self.q > 0:
            if d < 0:
                return 1
            return 1 if 2 * self.q * self.q > d * d else -1
        if d >= 0:
            return -1
        return 1 if 2 * self.q * self.q < d * d else -1

    def _sign_vs(self, other: object) -> int | None:
        if isinstance(other, QuadraticIrrational):
            dq = self.q - other.q
            if dq == 0:
                dp = self.p - other.p
                return (dp > 0) - (dp < 0)
            return QuadraticIrrational(self.p - other.p, dq).compare(0)
        if isinstance(other, (Fraction, int)) and not isinstance(other, bool):
            return self.compare(other)
        return None

    def __lt__(self, other: object) -> bool:
        s = self._sign_vs(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other: object) -> bool:
        s = self._sign_vs(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other: object) -> bool:
        s = self._sign_vs(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other: object) -> bool:
        s = self._sign_vs(other)
        return NotImplemented if s is None else s >= 0

    def enclosure(self, bits: int = 64) -> Enclosure:
        return self.p + self.q * sqrt_enclosure(2, bits)

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(2)

    def __str__(self) -> str:
        return f"{format_rational(self.p)} + ({format_rational(self.q)})*sqrt(2)"


Point = Union[Fraction, QuadraticIrrational]


# -- intervals ---------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Subinterval of [0, 1]; ``lo == hi`` is allowed only as a closed point."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self) -> None:
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (0 <= lo <= hi <= 1):
            raise DomainError(f"interval [{lo}, {hi}] is not inside [0, 1]")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise DegenerateIntervalError(f"empty interval at {lo}")

    @classmethod
    def closed(cls, lo: RationalLike, hi: RationalLike) -> Interval:
        return cls(as_rational(lo), as_rational(hi), True, True)

    @classmethod
    def open(cls, lo: RationalLike, hi: RationalLike) -> Interval:
        return cls(as_rational(lo), as_rational(hi), False, False)

    @classmethod
    def point(cls, x: RationalLike) -> Interval:
        x = as_rational(x)
        return cls(x, x, True, True)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Point | int) -> bool:
        if isinstance(x, QuadraticIrrational):
            return self.lo < x < self.hi
        x = as_rational(x)
        if x == self.lo:
            return self.lo_closed
        if x == self.hi:
            return self.hi_closed
        return self.lo < x < self.hi

    __contains__ = contains

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def make_interval(lo: Fraction, hi: Fraction, lo_closed: bool, hi_closed: bool) -> Interval | None:
    """Build an interval, or return None when the flags make it empty."""
    if lo < hi or (lo == hi and lo_closed and hi_closed):
        return Interval(lo, hi, lo_closed, hi_closed)
    return None


def _mergeable(a: Interval, b: Interval) -> bool:
    # assumes a.lo <= b.lo
    return b.lo < a.hi or (b.lo == a.hi and (a.hi_closed or b.lo_closed))


def _merge(a: Interval, b: Interval) -> Interval:
    lo_closed = a.lo_closed or (b.lo == a.lo and b.lo_closed)
    if b.hi > a.hi:
        hi, hi_closed = b.hi, b.hi_closed
    elif b.hi == a.hi:
        hi, hi_closed = a.hi, a.hi_closed or b.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed
    return Interval(a.lo, hi, lo_closed, hi_closed)


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of pairwise disjoint, non-mergeable intervals sorted by ``lo``.

    Build instances through :func:`normalize`; the constructor only validates.
    """

    components: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for a, b in zip(comps, comps[1:]):
            if a.lo > b.lo or _mergeable(a, b):
                raise ValueError("components are not normalized; use normalize()")

    @classmethod
    def of(cls, *intervals: Interval) -> IntervalSet:
        return normalize(intervals)

    @classmethod
    def unit(cls) -> IntervalSet:
        return cls((Interval.closed(0, 1),))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def contains(self, x: Point | int) -> bool:
        return any(c.contains(x) for c in self.components)

    __contains__ = contains

    def endpoints(self) -> list[Fraction]:
        pts = set()
        for c in self.components:
            pts.add(c.lo)
            pts.add(c.hi)
        return sorted(pts)

    def __str__(self) -> str:
        if not self.components:
            return "{}"
        return " u ".join(str(c) for c in self.components)


def normalize(raw: Iterable[Interval]) -> IntervalSet:
    """Sweep-merge arbitrary intervals into a normalized :class:`IntervalSet`."""
    items = sorted(raw, key=lambda iv: (iv.lo, not iv.lo_closed))
    out: list[Interval] = []
    for iv in items:
        if out and _mergeable(out[-1], iv):
            out[-1] = _merge(out[-1], iv)
        else:
            out.append(iv)
    return IntervalSet(tuple(out))


def measure(s: IntervalSet) -> Fraction:
    """Exact Lebesgue measure; closure flags are irrelevant."""
    return sum((c.hi - c.lo for c in s.components), ZERO)


def _intersect_intervals(x: Interval, y: Interval) -> Interval | None:
    if x.lo > y.lo:
        lo, lo_closed = x.lo, x.lo_closed
    elif y.lo > x.lo:
        lo, lo_closed = y.lo, y.lo_closed
    else:
        lo, lo_closed = x.lo, x.lo_closed and y.lo_closed
    if x.hi < y.hi:
        hi, hi_closed = x.hi, x.hi_closed
    elif y.hi < x.hi:
        hi, hi_closed = y.hi, y.hi_closed
    else:
        hi, hi_closed = x.hi, x.hi_closed and y.hi_closed
    if lo > hi:
        return None
    return make_interval(lo, hi, lo_closed, hi_closed)


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    xs, ys = a.components, b.components
    i = j = 0
    while i < len(xs) and j < len(ys):
        piece = _intersect_intervals(xs[i], ys[j])
        if piece is not None:
            out.append(piece)
        if xs[i].hi < ys[j].hi:
            i += 1
        elif ys[j].hi < xs[i].hi:
            j += 1
        else:
            i += 1
            j += 1
    return normalize(out)


def complement(s: IntervalSet) -> IntervalSet:
    """Complement relative to the closed unit interval."""
    out = []
    lo, lo_closed = ZERO, True
    for c in s.components:
        gap = make_interval(lo, c.lo, lo_closed, not c.lo_closed)
        if gap is not None:
            out.append(gap)
        lo, lo_closed = c.hi, not c.hi_closed
    gap = make_interval(lo, ONE, lo_closed, True)
    if gap is not None:
        out.append(gap)
    return IntervalSet(tuple(out))


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return normalize(a.components + b.components)


def diff(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return intersect(a, complement(b))


_SET_OPS = {"union": union, "intersect": intersect, "diff": diff}


def set_op(a: IntervalSet, b: IntervalSet, op: str) -> IntervalSet:
    """Apply ``op`` in {"union", "intersect", "diff"} with exact point-set semantics."""
    try:
        return _SET_OPS[op](a, b)
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}") from None


# -- rational and irrational witnesses ---------------------------------------


def _simplest_open(a: Fraction, b: Fraction | None) -> Fraction:
    """Simplest rational strictly between ``a >= 0`` and ``b`` (``None`` = +inf).

    Continued-fraction form of the Stern-Brocot descent: the run lengths of the
    descent are the partial quotients, so the loop is logarithmic in the
    denominators instead of linear.
    """
    n = math.floor(a)
    if b is None or n + 1 < b:
        return Fraction(n + 1)
    lo_y = 1 / (b - n)
    hi_y = None if a == n else 1 / (a - n)
    return n + 1 / _simplest_open(lo_y, hi_y)


def _simplicity(r: Fraction) -> tuple[int, int]:
    return (r.denominator, r.numerator)


def simplest_rational_in(j: Interval) -> Fraction:
    """Rational in ``j`` with minimal denominator, ties to the smaller numerator."""
    candidates = []
    if j.lo < j.hi:
        candidates.append(_simplest_open(j.lo, j.hi))
    if j.lo_closed:
        candidates.append(j.lo)
    if j.hi_closed:
        candidates.append(j.hi)
    if not candidates:
        raise DegenerateIntervalError(f"no point in {j}")
    return min(candidates, key=_simplicity)


def iter_rationals_in(j: Interval) -> Iterator[Fraction]:
    """All rationals of ``j`` ordered by (denominator, numerator)."""
    d = simplest_rational_in(j).denominator
    while True:
        first = math.ceil(j.lo * d)
        last = math.floor(j.hi * d)
        for p in range(first, last + 1):
            if math.gcd(p, d) == 1:
                r = Fraction(p, d)
                if j.contains(r):
                    yield r
        d += 1


def rational_in_avoiding(j: Interval, avoid: Sequence[Fraction] | set[Fraction]) -> Fraction:
    """Simplest rational of ``j`` outside the finite set ``avoid``."""
    avoid = set(avoid)
    if j.is_degenerate and j.lo in avoid:
        raise DegenerateIntervalError(f"{j} is exhausted by the avoided points")
    for r in iter_rationals_in(j):
        if r not in avoid:
            return r
    raise InvariantViolation("unreachable")  # pragma: no cover


def irrational_in(j: Interval) -> QuadraticIrrational:
    """Midpoint-anchored witness ``m + (w/4)*sqrt(2)`` strictly inside ``j``."""
    if j.lo >= j.hi:
        raise DegenerateIntervalError(f"{j} has no interior")
    w = j.hi - j.lo
    x = QuadraticIrrational((j.lo + j.hi) / 2, w / 4)
    if not (j.lo < x < j.hi):
        raise InvariantViolation(f"irrational witness {x} escaped {j}")
    return x
