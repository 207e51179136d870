from __future__ import annotations

from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux_lab.errors import DomainError, KindMismatchError
from darboux_lab.exact_core import Interval, QuadraticIrrational
from darboux_lab.functions import (
    AeClass,
    KurtzTail,
    StepFunction,
    ae_equal,
    combine,
    linear_combine,
    seminorm_l1,
)

GRID = 12


@st.composite
def step_functions(draw):
    cuts = sorted(draw(st.sets(st.integers(1, GRID - 1), max_size=4)))
    pts = [0, *cuts, GRID]
    pieces = []
    for a, b in zip(pts, pts[1:]):
        v = draw(st.integers(-3, 3))
        if v:
            # alternate closure so pieces stay disjoint at shared ends
            pieces.append((Interval(F(a, GRID), F(b, GRID), a == 0, False), F(v)))
    exc = draw(st.dictionaries(st.integers(0, GRID), st.integers(-2, 2), max_size=3))
    return StepFunction(tuple(pieces), tuple((F(k, GRID), F(v)) for k, v in exc.items()))


SAMPLES = [F(k, 2 * GRID) for k in range(2 * GRID + 1)]


@given(step_functions(), step_functions(), st.integers(-2, 2), st.integers(-2, 2))
def test_linear_combine_is_pointwise(f, g, a, b):
    h = linear_combine(a, f, b, g)
    for x in SAMPLES:
        assert h(x) == a * f(x) + b * g(x)


@given(step_functions())
def test_canonical_form_is_stable(f):
    c = f.canonical()
    assert c.canonical() == c
    assert all(c(x) == f(x) for x in SAMPLES)
    assert all(v != 0 and not iv.is_degenerate for iv, v in c.pieces)


@given(step_functions())
def test_seminorm_matches_riemann_sum_oracle(f):
    # |f| is constant on each open gap of the 1/GRID lattice
    oracle = sum(abs(f(F(2 * k + 1, 2 * GRID))) * F(1, GRID) for k in range(GRID))
    assert seminorm_l1(f) == oracle
    assert seminorm_l1(abs(f)) == oracle
    assert seminorm_l1(-f) == oracle


@given(step_functions(), step_functions())
def test_ae_equality_is_seminorm_zero(f, g):
    assert ae_equal(f, g) == (seminorm_l1(linear_combine(1, f, -1, g)) == 0)
    assert AeClass(f) == AeClass(f.with_edits([(F(1, 3), 7)]))


def test_point_values_and_exceptions():
    f = StepFunction.indicator([Interval.closed(0, F(1, 2))]).with_edits([(F(1, 4), 5)])
    assert f(F(1, 4)) == 5
    assert f(F(1, 2)) == 1
    assert f(F(3, 4)) == 0
    assert f(QuadraticIrrational(F(0), F(1, 4))) == 1
    with pytest.raises(DomainError):
        f(F(3, 2))


def test_closed_and_half_open_are_ae_equal():
    a = StepFunction.indicator([Interval.closed(0, F(1, 2))])
    b = StepFunction.indicator([Interval(0, F(1, 2), True, False)])
    assert ae_equal(a, b)
    assert a != b


def test_finite_sets_are_null():
    f = StepFunction.point_mass([0, 1, F(1, 2)])
    assert seminorm_l1(f) == 0
    assert ae_equal(f, StepFunction())


def test_combine_rejects_symbolic():
    with pytest.raises(KindMismatchError):
        combine([StepFunction(), KurtzTail(3)], lambda u, v: u)


@pytest.mark.parametrize("j", [1, 2, 4, 9, 10, 100])
def test_kurtz_seminorm_matches_antiderivative(j):
    mpmath.mp.prec = 120
    true = 2 * (1 - 1 / mpmath.sqrt(j))
    e = seminorm_l1(KurtzTail(j))
    tol = mpmath.mpf(2) ** -100  # mpmath rounding, far below the enclosure width
    assert mpmath.mpf(e.lo.numerator) / e.lo.denominator <= true + tol
    assert true - tol <= mpmath.mpf(e.hi.numerator) / e.hi.denominator
    assert e.width <= F(1, 2 ** 60)


def test_kurtz_values():
    f = KurtzTail(4)
    assert f(F(1, 4)) == 0
    assert f(F(1, 9)) == 0
    assert f(F(4, 9)).contains(F(3, 2))
    v = f(QuadraticIrrational(F(1, 2), F(1, 8)))
    x = 0.5 + 2 ** 0.5 / 8
    assert float(v.lo) <= x ** -0.5 <= float(v.hi) + 1e-12
    with pytest.raises(ValueError):
        KurtzTail(0)
