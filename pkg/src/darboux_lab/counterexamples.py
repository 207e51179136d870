"""Canonical constructors for the counterexample sequences.

The rationals of [0, 1] are enumerated as 0, 1, then reduced fractions by
ascending denominator and ascending numerator (the Farey order).  Fat
covers centre an interval of length ``ell / 2**j`` on the j-th rational.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_core import (
    ONE,
    ZERO,
    Interval,
    IntervalSet,
    RationalLike,
    as_rational,
    measure,
    normalize,
)
from .functions import KurtzTail, PiecewiseFunction, StepFunction

# -- totient machinery for the enumeration ----------------------------------

_SIEVE_LIMIT = 1 << 16
_lock = threading.Lock()
_phi_prefix: list[int] = [0]  # _phi_prefix[n] = phi(1) + ... + phi(n)


def _extend_sieve(n: int) -> None:
    with _lock:
        if len(_phi_prefix) > n:
            return
        size = max(n + 1, 2 * len(_phi_prefix))
        phi = list(range(size))
        for p in range(2, size):
            if phi[p] == p:
                for m in range(p, size, p):
                    phi[m] -= phi[m] // p
        prefix = [0] * size
        for k in range(1, size):
            prefix[k] = prefix[k - 1] + phi[k]
        _phi_prefix[:] = prefix


@lru_cache(maxsize=None)
def _phi_sum_large(n: int) -> int:
    # sum_{k=1}^n Phi(n // k) = n (n + 1) / 2, grouped by equal quotients
    total = n * (n + 1) // 2
    k = 2
    while k <= n:
        q = n // k
        k_last = n // q
        total -= (k_last - k + 1) * totient_sum(q)
        k = k_last + 1
    return total


def totient_sum(n: int) -> int:
    """``phi(1) + ... + phi(n)``."""
    if n <= 0:
        return 0
    if n < _SIEVE_LIMIT:
        if len(_phi_prefix) <= n:
            _extend_sieve(n)
        return _phi_prefix[n]
    return _phi_sum_large(n)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _coprime_count(upto: int, d: int) -> int:
    """Number of ``1 <= t <= upto`` with ``gcd(t, d) == 1``."""
    primes = _prime_factors(d)
    total = 0
    for mask in range(1 << len(primes)):
        prod, bits = 1, 0
        for i, p in enumerate(primes):
            if mask >> i & 1:
                prod *= p
                bits += 1
        total += (-1) ** bits * (upto // prod)
    return total


def enumerate_rationals(j: int) -> Fraction:
    """The j-th rational of [0, 1] (1-based) in the canonical order."""
    if j < 1:
        raise ValueError(f"enumeration index must be >= 1, got {j}")
    if j == 1:
        return ZERO
    if j == 2:
        return ONE
    # index of p/d is 1 + Phi(d - 1) + rank(p); find d with Phi(d-1) + 1 < j <= Phi(d) + 1
    lo, hi = 2, 2
    while totient_sum(hi) + 1 < j:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if totient_sum(mid) + 1 < j:
            lo = mid + 1
        else:
            hi = mid
    d = lo
    rank = j - 1 - totient_sum(d - 1)
    seen = 0
    for p in range(1, d):
        if math.gcd(p, d) == 1:
            seen += 1
            if seen == rank:
                return Fraction(p, d)
    raise AssertionError("enumeration rank out of range")  # pragma: no cover


def rational_index(r: RationalLike) -> int:
    """Inverse of :func:`enumerate_rationals`."""
    r = as_rational(r)
    if not (0 <= r <= 1):
        raise ValueError(f"{r} is not in [0, 1]")
    if r == 0:
        return 1
    if r == 1:
        return 2
    d = r.denominator
    return 1 + totient_sum(d - 1) + _coprime_count(r.numerator, d)


# -- fat covers ----------------------------------------------------------------


@dataclass(frozen=True)
class FatCoverConfig:
    """Total length budget ``ell`` of the cover, strictly between 0 and 1."""

    ell: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        ell = as_rational(self.ell)
        if not (0 < ell < 1):
            raise ValueError(f"ell must lie strictly between 0 and 1, got {ell}")
        object.__setattr__(self, "ell", ell)

    def tail_bound(self, k: int) -> Fraction:
        """Upper bound ``ell * 2**-k`` on the total length of ``I_j``, ``j > k``."""
        return self.ell / (1 << k)


def fat_interval(cfg: FatCoverConfig, j: int) -> Interval:
    """``[0, 1]`` intersected with the open interval of radius ``ell / 2**(j+1)`` about ``q_j``."""
    if j < 1:
        raise ValueError(f"index must be >= 1, got {j}")
    q = enumerate_rationals(j)
    r = cfg.ell / (1 << (j + 1))
    lo, lo_closed = q - r, False
    hi, hi_closed = q + r, False
    if lo < 0:
        lo, lo_closed = ZERO, True
    if hi > 1:
        hi, hi_closed = ONE, True
    return Interval(lo, hi, lo_closed, hi_closed)


@lru_cache(maxsize=256)
def fat_union(cfg: FatCoverConfig, k: int) -> IntervalSet:
    """``A_k``, the union of the first ``k`` fat intervals (``A_0`` is empty)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return IntervalSet()
    prev = fat_union(cfg, k - 1)
    return normalize(prev.components + (fat_interval(cfg, k),))


def fat_union_measure(cfg: FatCoverConfig, k: int) -> Fraction:
    return measure(fat_union(cfg, k))


def fat_cover_contains(cfg: FatCoverConfig, k: int, x) -> bool:
    return fat_union(cfg, k).contains(x)


# -- sequences -----------------------------------------------------------------

SEQUENCE_TAGS = ("F", "G", "typewriter", "kurtz")


@dataclass(frozen=True)
class SequenceKind:
    """Which counterexample sequence; ``cfg`` is required for ``G`` only."""

    tag: str
    cfg: FatCoverConfig | None = None

    def __post_init__(self) -> None:
        if self.tag not in SEQUENCE_TAGS:
            raise ValueError(f"unknown sequence kind {self.tag!r}; expected one of {SEQUENCE_TAGS}")
        if self.tag == "G" and self.cfg is None:
            object.__setattr__(self, "cfg", FatCoverConfig())
        if self.tag != "G" and self.cfg is not None:
            raise ValueError(f"kind {self.tag!r} takes no fat-cover configuration")

    @classmethod
    def rationals(cls) -> SequenceKind:
        return cls("F")

    @classmethod
    def fat_cover(cls, ell: RationalLike = Fraction(1, 2)) -> SequenceKind:
        return cls("G", FatCoverConfig(as_rational(ell)))

    @classmethod
    def typewriter(cls) -> SequenceKind:
        return cls("typewriter")

    @classmethod
    def kurtz(cls) -> SequenceKind:
        return cls("kurtz")


def dyadic_block(j: int) -> tuple[int, int]:
    """Write ``j = 2**n + i`` with ``0 <= i < 2**n``; return ``(n, i)``."""
    if j < 1:
        raise ValueError(f"index must be >= 1, got {j}")
    n = j.bit_length() - 1
    return n, j - (1 << n)


def typewriter_interval(j: int) -> Interval:
    n, i = dyadic_block(j)
    return Interval.closed(Fraction(i, 1 << n), Fraction(i + 1, 1 << n))


def sequence_term(kind: SequenceKind, j: int) -> PiecewiseFunction:
    if j < 1:
        raise ValueError(f"index must be >= 1, got {j}")
    if kind.tag == "F":
        return StepFunction.point_mass(enumerate_rationals(m) for m in range(1, j + 1))
    if kind.tag == "G":
        return StepFunction.indicator(fat_union(kind.cfg, j))
    if kind.tag == "typewriter":
        return StepFunction.indicator([typewriter_interval(j)])
    return KurtzTail(j)
