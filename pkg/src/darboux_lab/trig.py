"""Certified pi, sine and cosine in integer fixed point.

Every routine returns an integer approximation scaled by ``2**bits`` together
with an explicit error bound in units of ``2**-bits``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact_core import Enclosure, RationalLike, as_rational

_GUARD = 32


def _atan_inv(x: int, scale: int) -> tuple[int, int]:
    """``atan(1/x) * scale`` by its Taylor series; returns (value, term count)."""
    total = 0
    power = scale // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= x2
        k += 1
    return total, k


@lru_cache(maxsize=64)
def pi_fixed(bits: int) -> int:
    """Integer ``P`` with ``|pi * 2**bits - P| <= 1``."""
    if bits < 0:
        raise ValueError("bits must be nonnegative")
    scale = 1 << (bits + _GUARD)
    a, _ = _atan_inv(5, scale)
    b, _ = _atan_inv(239, scale)
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239); truncation error is far below 2**GUARD
    p = 16 * a - 4 * b
    return (p + (1 << (_GUARD - 1))) >> _GUARD


def pi_enclosure(bits: int = 64) -> Enclosure:
    p = pi_fixed(bits)
    return Enclosure(Fraction(p - 1, 1 << bits), Fraction(p + 1, 1 << bits))


def _series(y: int, w: int) -> tuple[int, int, int]:
    """sin and cos of ``y / 2**w`` (``0 <= y/2**w <= 1``) plus error in ulps."""
    one = 1 << w
    y2 = (y * y) >> w
    s, term, k = 0, y, 1
    while term:
        s += term
        term = -((term * y2) >> w) // ((k + 1) * (k + 2))
        k += 2
    ns = k
    c, term, k = 0, one, 0
    while term:
        c += term
        term = -((term * y2) >> w) // ((k + 1) * (k + 2))
        k += 2
    return s, c, 3 * max(ns, k) + 4


def sincos_pi(r: RationalLike, bits: int) -> tuple[int, int, int]:
    """``(S, C, e)`` with ``|sin(pi r) 2**bits - S| <= e`` and likewise for cos.

    ``r`` is reduced exactly mod 2 and folded into ``[0, 1/4]`` by symmetry, so
    the series argument never exceeds ``pi/4``.
    """
    r = as_rational(r)
    r -= 2 * (r.numerator // (2 * r.denominator))
    ss = sc = 1
    if r >= 1:
        r -= 1
        ss, sc = -1, -1
    if r > Fraction(1, 2):
        r = 1 - r
        sc = -sc
    swap = r > Fraction(1, 4)
    if swap:
        r = Fraction(1, 2) - r
    w = bits + 20
    y = pi_fixed(w) * r.numerator // r.denominator  # error <= r + 1 <= 2 ulps
    s, c, e = _series(y, w)
    e += 2
    if swap:
        s, c = c, s
    shift = 1 << 19
    s_out = (s + shift) >> 20
    c_out = (c + shift) >> 20
    err = 1 + ((e + (1 << 20) - 1) >> 20)
    return ss * s_out, sc * c_out, err


def sincos_pi_enclosure(r: RationalLike, bits: int = 64) -> tuple[Enclosure, Enclosure]:
    """Enclosures of ``sin(pi r)`` and ``cos(pi r)`` of width ``<= 2**(2-bits)``-ish."""
    s, c, e = sincos_pi(r, bits)
    d = 1 << bits

    def clip(v: int) -> Enclosure:
        lo = max(Fraction(v - e, d), Fraction(-1))
        hi = min(Fraction(v + e, d), Fraction(1))
        return Enclosure(lo, hi)

    return clip(s), clip(c)
