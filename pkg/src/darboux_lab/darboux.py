"""Darboux sums with per-cell witnesses and Riemann-gap certificates.

Three function descriptors are supported: finite step functions (exact
sums), the indicator of the fat cover ``A`` (an infinite union, handled by
truncation at depth ``K`` plus a tail-measure bound), and the indicator of
the rationals in [0, 1].
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .counterexamples import FatCoverConfig, fat_union, rational_index
from .errors import InvariantViolation
from .exact_core import (
    ONE,
    ZERO,
    Enclosure,
    Interval,
    IntervalSet,
    Point,
    RationalLike,
    as_rational,
    diff,
    irrational_in,
    measure,
    rational_in_avoiding,
    simplest_rational_in,
)
from .functions import StepFunction

DEFAULT_K = 20


@dataclass(frozen=True)
class Partition:
    """Strictly increasing breakpoints ``0 = x_0 < x_1 < ... < x_n = 1``."""

    breakpoints: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = tuple(as_rational(x) for x in self.breakpoints)
        if len(pts) < 2 or pts[0] != 0 or pts[-1] != 1:
            raise ValueError("a partition must start at 0, end at 1 and have at least one cell")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ValueError(f"breakpoints must be strictly increasing ({a} then {b})")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def uniform(cls, n: int) -> Partition:
        if n < 1:
            raise ValueError("need at least one cell")
        return cls(tuple(Fraction(i, n) for i in range(n + 1)))

    @classmethod
    def random(cls, n: int, seed: int, max_denominator: int | None = None) -> Partition:
        """Seeded partition into ``n`` cells with breakpoints ``k / D``."""
        if n < 1:
            raise ValueError("need at least one cell")
        d = max_denominator or max(1024, 4 * n)
        if d < n:
            raise ValueError(f"denominator bound {d} cannot produce {n} cells")
        rng = random.Random(seed)
        inner = sorted(rng.sample(range(1, d), n - 1))
        return cls((ZERO, *(Fraction(k, d) for k in inner), ONE))

    @classmethod
    def from_spec(cls, spec: str, seed: int | None = None) -> Partition:
        """Parse ``uniform:n``, ``random:n[:seed]`` or a comma list of rationals."""
        kind, _, rest = spec.partition(":")
        if kind == "uniform":
            return cls.uniform(int(rest))
        if kind == "random":
            n, _, s = rest.partition(":")
            if s:
                seed = int(s)
            return cls.random(int(n), 0 if seed is None else seed)
        if kind == "list":
            spec = rest
        return cls(tuple(as_rational(x) for x in spec.split(",")))

    def __len__(self) -> int:
        return len(self.breakpoints) - 1

    def cells(self) -> list[Interval]:
        b = self.breakpoints
        return [Interval.closed(x, y) for x, y in zip(b, b[1:])]

    def refines(self, other: Partition) -> bool:
        return set(other.breakpoints) <= set(self.breakpoints)

    def refine(self, points: Iterable[RationalLike]) -> Partition:
        return Partition(tuple(sorted(set(self.breakpoints) | {as_rational(p) for p in points})))


# -- descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class StepFn:
    f: StepFunction


@dataclass(frozen=True)
class FatCoverIndicator:
    """The indicator of the full (infinite) fat cover ``A``."""

    cfg: FatCoverConfig = field(default_factory=FatCoverConfig)


@dataclass(frozen=True)
class RationalsIndicator:
    """The indicator of the rationals in [0, 1]."""


FunctionDescriptor = Union[StepFn, FatCoverIndicator, RationalsIndicator]


@dataclass(frozen=True)
class CellWitness:
    """Certificate for the sup or inf of the function on the interior of one cell.

    Sums are taken over open cells; endpoint values of the partition do not
    enter, which leaves both Darboux integrals unchanged.

    ``point`` is where the value is attained (``None`` when the certificate
    is a measure argument rather than an explicit point); ``index`` is the
    enumeration index of a rational witness, or the truncation depth at
    which a cell was found inside the cover.
    """

    cell: Interval
    kind: str
    value: Fraction | Enclosure
    point: Point | None
    certificate: str
    index: int | None = None


@dataclass(frozen=True)
class DarbouxReport:
    upper_sum: Fraction | Enclosure
    lower_sum: Fraction | Enclosure
    per_cell_witnesses: tuple[CellWitness, ...]
    truncation_depth: int | None = None
    gap_certificate: Enclosure | None = None

    def __post_init__(self) -> None:
        if lower_bound(self.lower_sum) > upper_bound(self.upper_sum):
            raise InvariantViolation("lower Darboux sum exceeds the upper sum")

    @property
    def gap_lower(self) -> Fraction:
        """Certified lower bound on ``upper_sum - lower_sum``."""
        return lower_bound(self.upper_sum) - upper_bound(self.lower_sum)

    def witnesses_of(self, kind: str) -> list[CellWitness]:
        return [w for w in self.per_cell_witnesses if w.kind == kind]


def lower_bound(x: Fraction | Enclosure) -> Fraction:
    return x.lo if isinstance(x, Enclosure) else x


def upper_bound(x: Fraction | Enclosure) -> Fraction:
    return x.hi if isinstance(x, Enclosure) else x


# -- step functions ------------------------------------------------------------


def _step_cell(f: StepFunction, bps: Sequence[Fraction], cell: Interval) -> tuple[CellWitness, CellWitness]:
    a, b = cell.lo, cell.hi
    i, k = bisect.bisect_right(bps, a), bisect.bisect_left(bps, b)
    inner = bps[i:k]
    atoms: list[tuple[Fraction, Point, str]] = [(f(p), p, "attained at a breakpoint") for p in inner]
    pts = [a, *inner, b]
    for x, y in zip(pts, pts[1:]):
        w = simplest_rational_in(Interval.open(x, y))
        atoms.append((f.base_value(w), w, "constant on the open subcell"))
    sup = max(atoms, key=lambda t: t[0])
    inf = min(atoms, key=lambda t: t[0])
    return (CellWitness(cell, "sup", sup[0], sup[1], sup[2]),
            CellWitness(cell, "inf", inf[0], inf[1], inf[2]))


def _step_sums(f: StepFunction, p: Partition) -> DarbouxReport:
    bps = f.breakpoints()
    upper = lower = ZERO
    witnesses = []
    for cell in p.cells():
        ws, wi = _step_cell(f, bps, cell)
        upper += ws.value * cell.length
        lower += wi.value * cell.length
        witnesses += [ws, wi]
    return DarbouxReport(upper, lower, tuple(witnesses))


# -- fat cover -----------------------------------------------------------------


def _first_covering_depth(cfg: FatCoverConfig, cell: Interval, k_max: int) -> int:
    single = IntervalSet((Interval.open(cell.lo, cell.hi),))
    for k in range(1, k_max + 1):
        if not diff(single, fat_union(cfg, k)):
            return k
    raise InvariantViolation(f"{cell} is not inside A_{k_max}")


def _fat_cell_inf(cfg: FatCoverConfig, k: int, cell: Interval) -> tuple[str, CellWitness]:
    """Three-way verdict on ``inf`` of the cover indicator over ``cell``."""
    outside = diff(IntervalSet((Interval.open(cell.lo, cell.hi),)), fat_union(cfg, k))
    tail = cfg.tail_bound(k)
    if not outside:
        depth = _first_covering_depth(cfg, cell, k)
        return "inside", CellWitness(cell, "inf", ONE, None, f"cell inside A_{depth}", depth)
    m = measure(outside)
    if m > tail:
        cert = f"measure(cell minus A_{k}) = {m} > tail bound {tail}"
        return "escapes", CellWitness(cell, "inf", ZERO, None, cert, k)
    return "unresolved", CellWitness(cell, "inf", Enclosure(ZERO, ONE), None,
                                     f"unresolved at depth {k}", k)


def _fat_sup_witness(cell: Interval, avoid: Iterable[Fraction] = ()) -> CellWitness:
    r = rational_in_avoiding(Interval.open(cell.lo, cell.hi), set(avoid))
    j = rational_index(r)
    return CellWitness(cell, "sup", ONE, r, f"q_{j} = {r} lies in I_{j}", j)


def _fat_lower(cfg: FatCoverConfig, k: int, verdicts: Sequence[tuple[str, Interval]],
               upper: Fraction) -> Fraction | Enclosure:
    inside = sum((c.length for v, c in verdicts if v == "inside"), ZERO)
    open_mass = sum((c.length for v, c in verdicts if v == "unresolved"), ZERO)
    if open_mass == 0:
        return inside
    hi = min(inside + open_mass, measure(fat_union(cfg, k)) + cfg.tail_bound(k), upper)
    return Enclosure(inside, hi)


def _fat_sums(d: FatCoverIndicator, p: Partition, k: int) -> DarbouxReport:
    witnesses = []
    verdicts = []
    upper = ZERO
    for cell in p.cells():
        sup = _fat_sup_witness(cell)
        verdict, inf = _fat_cell_inf(d.cfg, k, cell)
        upper += cell.length
        verdicts.append((verdict, cell))
        witnesses += [sup, inf]
    lower = _fat_lower(d.cfg, k, verdicts, upper)
    return DarbouxReport(upper, lower, tuple(witnesses), truncation_depth=k)


# -- rationals -------------------------------------------------------------------


def _rationals_sums(p: Partition) -> DarbouxReport:
    witnesses = []
    for cell in p.cells():
        interior = Interval.open(cell.lo, cell.hi)
        r = simplest_rational_in(interior)
        witnesses.append(CellWitness(cell, "sup", ONE, r, "rational point"))
        witnesses.append(CellWitness(cell, "inf", ZERO, irrational_in(interior), "irrational point"))
    return DarbouxReport(ONE, ZERO, tuple(witnesses))


def darboux_sums(d: FunctionDescriptor, p: Partition, k: int = DEFAULT_K) -> DarbouxReport:
    """Upper and lower Darboux sums of ``d`` on ``p`` with per-cell witnesses."""
    if k < 1:
        raise ValueError(f"truncation depth must be >= 1, got {k}")
    if isinstance(d, StepFn):
        return _step_sums(d.f, p)
    if isinstance(d, FatCoverIndicator):
        return _fat_sums(d, p, k)
    if isinstance(d, RationalsIndicator):
        return _rationals_sums(p)
    raise TypeError(f"unknown descriptor {d!r}")


def _step_gap_dyadic(f: StepFunction, depth: int) -> Fraction:
    """``U - L`` on the uniform partition into ``2**depth`` cells.

    Only cells touching a breakpoint of ``f`` can have ``sup != inf``.
    """
    n = 1 << depth
    bps = f.breakpoints()
    touched = set()
    for b in bps:
        i = b.numerator * n // b.denominator
        touched.update(c for c in (i - 1, i) if 0 <= c < n)
    gap = ZERO
    for c in sorted(touched):
        cell = Interval.closed(Fraction(c, n), Fraction(c + 1, n))
        ws, wi = _step_cell(f, bps, cell)
        gap += (ws.value - wi.value) * cell.length
    return gap


def riemann_gap_certificate(d: FunctionDescriptor, k: int = DEFAULT_K) -> Enclosure:
    """Enclosure of (upper Darboux integral - lower Darboux integral).

    For the fat cover, ``1 - lambda(A_k) - ell 2**-k <= gap <= 1 - lambda(A_k)``:
    every cell of every partition contains some ``q_j``, so the upper integral
    is 1, while ``G_k <= G`` and ``lambda(A) <= lambda(A_k) + ell 2**-k``
    pin the lower integral.  For step functions, ``k`` is a dyadic refinement
    depth and the returned bound is ``[0, U - L]`` on that partition.
    """
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    if isinstance(d, FatCoverIndicator):
        lam = measure(fat_union(d.cfg, k))
        return Enclosure(1 - lam - d.cfg.tail_bound(k), 1 - lam)
    if isinstance(d, RationalsIndicator):
        return Enclosure(ONE, ONE)
    if isinstance(d, StepFn):
        return Enclosure(ZERO, _step_gap_dyadic(d.f, k))
    raise TypeError(f"unknown descriptor {d!r}")


def robustness_probe(d: FatCoverIndicator, edits: Mapping[RationalLike, RationalLike] | Iterable,
                     p: Partition, k: int = DEFAULT_K) -> DarbouxReport:
    """Darboux sums of the cover indicator after finitely many point edits.

    Sup witnesses are re-chosen among unedited rationals, so each cell still
    certifies the value 1; the gap certificate is attached unchanged since
    finite edits of a bounded function leave both Darboux integrals fixed.
    """
    items = edits.items() if isinstance(edits, Mapping) else edits
    table = {as_rational(x): as_rational(v) for x, v in items}
    edited = sorted(table)
    witnesses = []
    verdicts = []
    upper = ZERO
    lower_lo = lower_hi = ZERO
    for cell in p.cells():
        inside = edited[bisect.bisect_right(edited, cell.lo):bisect.bisect_left(edited, cell.hi)]
        vals = [table[x] for x in inside]
        sup = _fat_sup_witness(cell, avoid=inside)
        if vals and max(vals) > 1:
            top = max(inside, key=lambda x: table[x])
            sup = CellWitness(cell, "sup", table[top], top, "edited value", None)
        verdict, inf = _fat_cell_inf(d.cfg, k, cell)
        verdicts.append((verdict, cell))
        base = inf.value
        if vals and min(vals) < upper_bound(base):
            low = min(inside, key=lambda x: table[x])
            e = table[low]
            value = Enclosure(min(ZERO, e), e) if isinstance(base, Enclosure) else min(base, e)
            inf = CellWitness(cell, "inf", value, low, "edited value", None)
        upper += sup.value * cell.length
        lower_lo += lower_bound(inf.value) * cell.length
        lower_hi += upper_bound(inf.value) * cell.length
        witnesses += [sup, inf]
    if lower_lo == lower_hi:
        lower: Fraction | Enclosure = lower_lo
    else:
        # edits sit at rationals, all inside A, so they can only lower an inf
        cap = measure(fat_union(d.cfg, k)) + d.cfg.tail_bound(k)
        lower = Enclosure(lower_lo, max(lower_lo, min(lower_hi, cap)))
    return DarbouxReport(upper, lower, tuple(witnesses), truncation_depth=k,
                         gap_certificate=riemann_gap_certificate(d, k))
