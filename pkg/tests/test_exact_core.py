from __future__ import annotations

import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_lab.errors import DegenerateIntervalError
from darboux_lab.exact_core import (
    Enclosure,
    Interval,
    IntervalSet,
    QuadraticIrrational,
    as_rational,
    complement,
    diff,
    format_rational,
    intersect,
    irrational_in,
    iter_rationals_in,
    measure,
    normalize,
    rational_in_avoiding,
    set_op,
    simplest_rational_in,
    sqrt_enclosure,
    union,
)

GRID = 16


@st.composite
def intervals(draw):
    a = draw(st.integers(0, GRID))
    b = draw(st.integers(0, GRID))
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return Interval.point(F(lo, GRID))
    return Interval(F(lo, GRID), F(hi, GRID), draw(st.booleans()), draw(st.booleans()))


interval_lists = st.lists(intervals(), max_size=6)


# -- brute-force oracle: a finite set of intervals on the 1/GRID lattice is
# determined by membership at the lattice points and the gap midpoints

SAMPLES = [F(k, 2 * GRID) for k in range(2 * GRID + 1)]


def member(ivs, x):
    return any(iv.contains(x) for iv in ivs)


def profile(ivs):
    return tuple(member(ivs, x) for x in SAMPLES)


def oracle_measure(ivs):
    return sum(F(1, GRID) for k in range(GRID) if member(ivs, F(2 * k + 1, 2 * GRID)))


@given(interval_lists)
def test_normalize_preserves_membership(ivs):
    s = normalize(ivs)
    assert profile(s) == profile(ivs)
    assert measure(s) == oracle_measure(ivs)


@given(interval_lists)
def test_normalize_is_canonical(ivs):
    s = normalize(ivs)
    assert normalize(s) == s
    assert normalize(reversed(ivs)) == s
    for a, b in zip(s.components, s.components[1:]):
        assert a.hi < b.lo or (a.hi == b.lo and not (a.hi_closed or b.lo_closed))


@given(interval_lists, interval_lists)
def test_set_ops_match_pointwise_oracle(xs, ys):
    a, b = normalize(xs), normalize(ys)
    pa, pb = profile(a), profile(b)
    assert profile(union(a, b)) == tuple(p or q for p, q in zip(pa, pb))
    assert profile(intersect(a, b)) == tuple(p and q for p, q in zip(pa, pb))
    assert profile(diff(a, b)) == tuple(p and not q for p, q in zip(pa, pb))
    assert profile(complement(a)) == tuple(not p for p in pa)


@given(interval_lists, interval_lists)
def test_measure_is_additive(xs, ys):
    a, b = normalize(xs), normalize(ys)
    assert measure(union(a, b)) + measure(intersect(a, b)) == measure(a) + measure(b)
    assert measure(complement(a)) == 1 - measure(a)


def test_normalize_merges_overlap():
    s = normalize([Interval.open(F(1, 4), F(1, 2)), Interval.open(F(1, 3), F(2, 3))])
    assert s.components == (Interval.open(F(1, 4), F(2, 3)),)


def test_touching_open_intervals_stay_apart():
    s = normalize([Interval.open(0, F(1, 2)), Interval.open(F(1, 2), 1)])
    assert len(s) == 2
    assert not s.contains(F(1, 2))


def test_set_op_examples():
    a3 = IntervalSet.of(Interval(0, F(1, 8), True, False), Interval.open(F(15, 32), F(17, 32)),
                        Interval(F(15, 16), 1, False, True))
    a2 = IntervalSet.of(Interval(0, F(1, 8), True, False), Interval(F(15, 16), 1, False, True))
    assert measure(a3) == F(1, 4)
    assert set_op(a3, a2, "diff").components == (Interval.open(F(15, 32), F(17, 32)),)
    with pytest.raises(ValueError):
        set_op(a3, a2, "xor")


def test_degenerate_intervals():
    with pytest.raises(DegenerateIntervalError):
        Interval(F(1, 2), F(1, 2), True, False)
    assert Interval.point(F(1, 2)).length == 0
    with pytest.raises(ValueError):
        Interval.closed(F(1, 2), F(3, 2))


# -- simplest rational --------------------------------------------------------


def oracle_simplest(iv: Interval) -> F:
    d = 1
    while True:
        for p in range(0, d + 1):
            r = F(p, d)
            if r.denominator == d and iv.contains(r):
                return r
        d += 1


@given(intervals())
def test_simplest_rational_matches_brute_force(iv):
    assert simplest_rational_in(iv) == oracle_simplest(iv)


@pytest.mark.parametrize("iv,expected", [
    (Interval.open(F(15, 32), F(17, 32)), F(1, 2)),
    (Interval.open(0, F(1, 2)), F(1, 3)),
    (Interval(0, F(1, 8), True, False), F(0)),
    (Interval.open(F(1, 2), 1), F(2, 3)),
])
def test_simplest_rational_examples(iv, expected):
    assert simplest_rational_in(iv) == expected


def test_rational_in_avoiding_skips_edits():
    iv = Interval.open(0, F(1, 2))
    assert rational_in_avoiding(iv, {F(1, 3)}) == F(1, 4)
    avoid = set()
    for _ in range(50):
        r = rational_in_avoiding(iv, avoid)
        assert iv.contains(r) and r not in avoid
        avoid.add(r)


def test_iter_rationals_in_is_ordered_and_inside():
    iv = Interval.open(F(1, 3), F(2, 5))
    got = [r for _, r in zip(range(30), iter_rationals_in(iv))]
    assert all(iv.contains(r) for r in got)
    assert got == sorted(got, key=lambda r: (r.denominator, r.numerator))
    assert len(set(got)) == len(got)


@given(intervals())
def test_irrational_witness_lies_inside(iv):
    if iv.is_degenerate:
        return
    q = irrational_in(iv)
    assert q.q != 0
    assert iv.contains(q)
    assert iv.lo < q < iv.hi


# -- quadratic irrationals and enclosures ----------------------------------------


@settings(max_examples=200)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=1000),
       st.fractions(min_value=-3, max_value=3, max_denominator=1000).filter(lambda q: q != 0),
       st.fractions(min_value=-8, max_value=8, max_denominator=1000))
def test_quadratic_compare_matches_mpmath(p, q, r):
    mpmath.mp.prec = 200
    true = mpmath.mpf(p.numerator) / p.denominator + mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(2)
    x = QuadraticIrrational(p, q)
    assert x.compare(r) == (1 if true > mpmath.mpf(r.numerator) / r.denominator else -1)
    assert (x < r) == (true < mpmath.mpf(r.numerator) / r.denominator)


def test_quadratic_needs_irrational_part():
    with pytest.raises(ValueError):
        QuadraticIrrational(F(1), F(0))


@given(st.fractions(min_value=0, max_value=100, max_denominator=10**6))
def test_sqrt_enclosure_brackets(x):
    e = sqrt_enclosure(x, 40)
    assert e.lo >= 0
    assert e.lo * e.lo <= x <= e.hi * e.hi
    assert e.width <= F(1, 2 ** 40)


def test_sqrt_is_exact_on_squares():
    assert sqrt_enclosure(F(9, 16)) == Enclosure(F(3, 4), F(3, 4))


enclosures = st.tuples(st.fractions(-5, 5, max_denominator=50), st.fractions(0, 3, max_denominator=50)).map(
    lambda t: Enclosure(t[0], t[0] + t[1]))


@given(enclosures, enclosures, st.floats(0, 1), st.floats(0, 1))
def test_enclosure_arithmetic_is_inclusive(a, b, s, t):
    x = a.lo + a.width * F(s)
    y = b.lo + b.width * F(t)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    assert abs(a).contains(abs(x))
    assert a.square().contains(x * x)
    if not b.contains(0):
        assert (a / b).contains(x / y)


def test_enclosure_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Enclosure(1, 2) / Enclosure(-1, 1)


def test_round_out_contains():
    e = Enclosure(F(1, 3), F(2, 3)).round_out(10)
    assert e.contains(Enclosure(F(1, 3), F(2, 3)))
    assert e.lo.denominator <= 1024 and e.hi.denominator <= 1024


def test_rational_parsing_and_format():
    assert as_rational("3/6") == F(1, 2)
    assert as_rational(2) == F(2)
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert format_rational(F(2)) == "2/1"
    assert math.isclose(float(QuadraticIrrational(F(0), F(1))), math.sqrt(2))
