"""Certificates for the convergence-mode claims about the four sequences.

Everything here is exact except quantities involving square roots (the
Kurtz sequence), which come back as :class:`Enclosure` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .counterexamples import (
    SequenceKind,
    dyadic_block,
    fat_union,
    rational_index,
    sequence_term,
    typewriter_interval,
)
from .errors import KindMismatchError, OrderingError, UnsupportedKindError
from .exact_core import (
    ONE,
    ZERO,
    Enclosure,
    Interval,
    Point,
    QuadraticIrrational,
    RationalLike,
    as_rational,
    diff,
    measure,
    sqrt_enclosure,
)
from .functions import StepFunction, _check_domain, combine, linear_combine, seminorm_l1

_SQRT_BITS = 62

MODES = (
    "pointwise-stabilized",
    "oscillating",
    "in-measure-to-zero",
    "cauchy-l1",
    "l1-converged",
    "monotone-bounded",
    "undetermined",
)

# what is known about the limit of each sequence
LIMIT_NOTES = {
    "F": "L1 limit is the zero class; the pointwise limit (indicator of the rationals) is not Riemann integrable",
    "G": "L1 limit class [G] has no Riemann integrable representative",
    "typewriter": "converges to 0 in measure and in L1 but at no point pointwise",
    "kurtz": "limit x^(-1/2) on (0,1] is improperly Riemann integrable with integral 2",
}


@dataclass(frozen=True)
class ConvergenceVerdict:
    """A mode verdict plus the exact evidence needed to re-check it."""

    mode: str
    certified: bool
    witness: dict[str, Any] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class CauchyModulus:
    N: int
    certificate: str
    bound: Fraction | Enclosure
    eps: Fraction


def _check_order(j: int, m: int) -> None:
    if not 1 <= j < m:
        raise OrderingError(f"need 1 <= j < m, got j={j}, m={m}")


def _inv_sqrt(k: int) -> Enclosure:
    return sqrt_enclosure(Fraction(1, k), _SQRT_BITS)


def pairwise_l1_distance(kind: SequenceKind, j: int, m: int) -> Fraction | Enclosure:
    """``||f_m - f_j||_1`` for ``j < m``."""
    _check_order(j, m)
    if kind.tag == "F":
        return ZERO
    if kind.tag == "G":
        # A_j is a subset of A_m, so |G_m - G_j| is the indicator of the difference
        return measure(diff(fat_union(kind.cfg, m), fat_union(kind.cfg, j)))
    if kind.tag == "typewriter":
        return seminorm_l1(linear_combine(1, sequence_term(kind, m), -1, sequence_term(kind, j)))
    return 2 * (_inv_sqrt(j) - _inv_sqrt(m))


def cauchy_modulus(kind: SequenceKind, eps: RationalLike) -> CauchyModulus:
    """Least ``N`` whose certified bound puts every distance ``m > k >= N`` below ``eps``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if kind.tag == "F":
        return CauchyModulus(1, "every term has L1 seminorm 0", ZERO, eps)
    if kind.tag == "G":
        # ||G_m - G_k|| <= sum_{j>k} lambda(I_j) <= ell 2^-k
        n = 1
        while kind.cfg.tail_bound(n) >= eps:
            n += 1
        return CauchyModulus(n, "tail<=ell*2^-k", kind.cfg.tail_bound(n), eps)
    if kind.tag == "kurtz":
        # 2 (k^-1/2 - m^-1/2) < 2 k^-1/2 <= eps  iff  k >= 4 / eps^2
        t = 4 / (eps * eps)
        n = max(1, -(-t.numerator // t.denominator))
        return CauchyModulus(n, "2*k^(-1/2)<=eps", 2 * _inv_sqrt(n), eps)
    raise UnsupportedKindError("the typewriter sequence has no Cauchy modulus here; see l1_limit_defect")


def cauchy_verdict(kind: SequenceKind, eps: RationalLike) -> ConvergenceVerdict:
    c = cauchy_modulus(kind, eps)
    return ConvergenceVerdict(
        "cauchy-l1", True,
        {"N": c.N, "eps": c.eps, "certificate": c.certificate, "bound": c.bound},
        (LIMIT_NOTES[kind.tag],),
    )


def l1_limit_defect(kind: SequenceKind, k: int, probe_m: int) -> Enclosure:
    """Enclosure of the L1 distance from term ``k`` to the sequence's limit."""
    _check_order(k, probe_m)
    if kind.tag == "F":
        return Enclosure.exact(0)
    if kind.tag == "G":
        lam = measure(diff(fat_union(kind.cfg, probe_m), fat_union(kind.cfg, k)))
        return Enclosure(lam, lam + kind.cfg.tail_bound(probe_m))
    if kind.tag == "typewriter":
        n, _ = dyadic_block(k)
        return Enclosure.exact(Fraction(1, 1 << n))
    # integral of x^-1/2 over (0, 1/k)
    return 2 * _inv_sqrt(k)


# -- pointwise behaviour ---------------------------------------------------------


def _typewriter_profile(x: Point, jmax: int) -> ConvergenceVerdict:
    ones = [j for j in range(1, jmax + 1) if typewriter_interval(j).contains(x)]
    blocks = []
    n = 0
    while (1 << (n + 1)) - 1 <= jmax:
        block = range(1 << n, 1 << (n + 1))
        hit = [j for j in block if typewriter_interval(j).contains(x)]
        miss = [j for j in block if j not in hit]
        blocks.append({"n": n, "one": hit[0] if hit else None, "zero": miss[0] if miss else None})
        n += 1
    ok = (all(b["one"] is not None for b in blocks)
          and all(b["zero"] is not None for b in blocks if b["n"] >= 2)
          and any(b["n"] >= 2 for b in blocks))
    return ConvergenceVerdict(
        "oscillating" if ok else "undetermined", ok,
        {"ones": ones, "blocks": blocks, "complete_blocks": len(blocks)},
        (f"oscillation verified through index {(1 << len(blocks)) - 1}, not for all j",),
    )


def _g_profile(kind: SequenceKind, x: Point, jmax: int) -> ConvergenceVerdict:
    cfg = kind.cfg
    bound = None if isinstance(x, QuadraticIrrational) else rational_index(x)
    limit = jmax if bound is None else min(jmax, bound)
    for j in range(1, limit + 1):
        if fat_union(cfg, j).contains(x):
            # A_j grows with j, so G_j(x) = 1 from here on
            return ConvergenceVerdict("pointwise-stabilized", True,
                                      {"index": j, "value": ONE, "centre_index": bound})
    if bound is not None:
        return ConvergenceVerdict("pointwise-stabilized", True,
                                  {"index": None, "value": ONE, "centre_index": bound},
                                  (f"stabilizes at some index <= {bound}",))
    return ConvergenceVerdict("undetermined", False, {"index": None, "checked_through": jmax},
                              ("irrational probe not covered within jmax",))


def pointwise_profile(kind: SequenceKind, x: Point | RationalLike, jmax: int) -> ConvergenceVerdict:
    """Pointwise behaviour of ``f_j(x)`` for ``j <= jmax``."""
    x = _check_domain(x)
    if jmax < 4:
        raise ValueError(f"jmax must be >= 4, got {jmax}")
    if kind.tag == "typewriter":
        return _typewriter_profile(x, jmax)
    if kind.tag == "G":
        return _g_profile(kind, x, jmax)
    if kind.tag == "F":
        if isinstance(x, QuadraticIrrational):
            return ConvergenceVerdict("pointwise-stabilized", True, {"index": 1, "value": ZERO})
        return ConvergenceVerdict("pointwise-stabilized", True, {"index": rational_index(x), "value": ONE})
    # Kurtz: f_j(x) = x^-1/2 once 1/j < x
    if x == 0:
        return ConvergenceVerdict("pointwise-stabilized", True, {"index": 1, "value": ZERO})
    xe = x if not isinstance(x, QuadraticIrrational) else x.enclosure(64).lo
    j = int(1 / xe) + 1
    while j > 1 and Fraction(1, j - 1) < x:
        j -= 1
    while not Fraction(1, j) < x:
        j += 1
    return ConvergenceVerdict("pointwise-stabilized", True, {"index": j, "value": "x^(-1/2)"})


def _level_measure(f: StepFunction, eps: Fraction) -> Fraction:
    return sum((iv.length for iv, v in f.pieces if abs(v) >= eps), ZERO)


def in_measure_profile(kind: SequenceKind, eps: RationalLike, jmax: int) -> list[tuple[int, Fraction]]:
    """``[(j, lambda{|f_j| >= eps}) for j = 1..jmax]``."""
    eps = as_rational(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if jmax < 1:
        raise ValueError(f"jmax must be >= 1, got {jmax}")
    if kind.tag == "kurtz":
        # x^-1/2 >= 1 >= eps on all of (1/j, 1]
        return [(j, 1 - Fraction(1, j)) for j in range(1, jmax + 1)]
    return [(j, _level_measure(sequence_term(kind, j), eps)) for j in range(1, jmax + 1)]


def in_measure_verdict(kind: SequenceKind, eps: RationalLike, jmax: int) -> ConvergenceVerdict:
    """Certified only when the profile is exact and hits 0 or halves block-wise."""
    prof = in_measure_profile(kind, eps, jmax)
    if kind.tag == "typewriter":
        ok = all(v == Fraction(1, 1 << dyadic_block(j)[0]) for j, v in prof)
        return ConvergenceVerdict("in-measure-to-zero" if ok else "undetermined", ok,
                                  {"profile": prof},
                                  ("measure 2^-floor(log2 j) tends to 0",))
    ok = kind.tag == "F"
    return ConvergenceVerdict("in-measure-to-zero" if ok else "undetermined", ok, {"profile": prof})


# -- domination ------------------------------------------------------------------


@dataclass(frozen=True)
class DominationVerdict:
    """``dominated`` plus, on failure, the first offending term and a witness.

    In ``"ae"`` mode the witness is an interval of positive length; in
    ``"everywhere"`` mode it may also be a single point.
    """

    dominated: bool
    mode: str
    term_index: int | None = None
    witness: Interval | Fraction | None = None
    excess: Fraction | None = None


def dominated_check(terms: Sequence[StepFunction], g: StepFunction, mode: str = "ae") -> DominationVerdict:
    """Decide ``|f_j| <= g`` a.e. (or everywhere) for every term, exactly."""
    if mode not in ("ae", "everywhere"):
        raise ValueError(f"mode must be 'ae' or 'everywhere', got {mode!r}")
    for f in (*terms, g):
        if not isinstance(f, StepFunction):
            raise KindMismatchError(f"domination is decided for step functions only, got {type(f).__name__}")
    if any(v < 0 for _, v in g.pieces) or any(v < 0 for _, v in g.exceptions):
        raise ValueError("the dominating function must be nonnegative")
    for idx, f in enumerate(terms, start=1):
        excess = combine([f, g], lambda u, v: max(abs(u) - v, ZERO))
        if excess.pieces:
            iv, e = excess.pieces[0]
            return DominationVerdict(False, mode, idx, iv, e)
        if mode == "everywhere" and excess.exceptions:
            p, e = excess.exceptions[0]
            return DominationVerdict(False, mode, idx, p, e)
    return DominationVerdict(True, mode)
