"""Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction as F

import pytest

from darboux_lab.convergence import (
    cauchy_modulus,
    cauchy_verdict,
    dominated_check,
    in_measure_profile,
    l1_limit_defect,
    pairwise_l1_distance,
    pointwise_profile,
)
from darboux_lab.counterexamples import (
    FatCoverConfig,
    SequenceKind,
    enumerate_rationals,
    fat_interval,
    fat_union,
    rational_index,
    sequence_term,
)
from darboux_lab.darboux import (
    FatCoverIndicator,
    Partition,
    RationalsIndicator,
    darboux_sums,
    riemann_gap_certificate,
    robustness_probe,
)
from darboux_lab.exact_core import Enclosure, Interval, measure
from darboux_lab.fourier import (
    TransformProbe,
    improper_l2_profile,
    plancherel_probe,
    riemann_defect_summary,
    transform_value,
)
from darboux_lab.functions import StepFunction, combine

ELLS = (F(1, 2), F(1, 10), F(9, 10))


@pytest.fixture
def gate(capsys):
    """Print one verdict line per criterion, even under output capture."""

    def report(number: int, title: str, checks: dict[str, bool], detail: str = "") -> None:
        ok = all(checks.values())
        failed = [name for name, v in checks.items() if not v]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}"
        if detail:
            line += f" [{detail}]"
        if failed:
            line += f" failed: {', '.join(failed)}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return report


def test_criterion_01_fat_cover_measure_bound(gate):
    checks = {}
    for ell in ELLS:
        cfg = FatCoverConfig(ell)
        # lengths of the individual intervals, far past the truncations used
        lengths = {j: fat_interval(cfg, j).length for j in range(1, 61)}
        checks[f"lambda(I_j) <= ell 2^-j, ell={ell}"] = all(lengths[j] <= ell / 2 ** j for j in lengths)
        for k in range(1, 31):
            m = measure(fat_union(cfg, k))
            checks[f"lambda(A_{k}) < ell={ell}"] = m < ell and m <= sum(lengths[j] for j in range(1, k + 1))
            # the geometric majorant of the tail sums exactly to ell 2^-k
            geometric = ell / 2 ** k
            checks[f"tail bound k={k}, ell={ell}"] = (
                cfg.tail_bound(k) == geometric
                and sum(lengths[j] for j in range(k + 1, 61)) <= geometric - ell / 2 ** 60
            )
    gate(1, "fat-cover measure bound", checks, "3 values of ell, k <= 30")


def test_criterion_02_riemann_gap(gate):
    checks = {}
    for ell in ELLS:
        g = riemann_gap_certificate(FatCoverIndicator(FatCoverConfig(ell)), 20)
        checks[f"gap >= 1 - {ell}"] = g.lo >= 1 - ell
    checks["rationals gap = 1"] = riemann_gap_certificate(RationalsIndicator(), 20) == Enclosure(1, 1)
    r = darboux_sums(RationalsIndicator(), Partition.uniform(10))
    checks["rationals sums 1 and 0"] = (r.upper_sum, r.lower_sum) == (1, 0)
    gate(2, "Riemann gap certificate", checks)


def test_criterion_03_upper_sum_universality(gate):
    cfg = FatCoverConfig()
    d = FatCoverIndicator(cfg)
    start = time.perf_counter()
    checks = {}
    cells = 0
    for seed in range(50):
        n = 20 * (seed + 1)  # 20 .. 1000 cells
        p = Partition.random(n, seed)
        r = darboux_sums(d, p, 20)
        good = r.upper_sum == 1
        for w in r.witnesses_of("sup"):
            q = w.point
            good = good and (w.cell.lo < q < w.cell.hi and enumerate_rationals(w.index) == q
                             and rational_index(q) == w.index and fat_interval(cfg, w.index).contains(q))
        checks[f"seed {seed}"] = good
        cells += n
    elapsed = time.perf_counter() - start
    checks["runtime <= 60 s"] = elapsed <= 60
    gate(3, "upper-sum universality", checks, f"50 partitions, {cells} cells, {elapsed:.1f} s")


def test_criterion_04_robustness(gate):
    d = FatCoverIndicator()
    edits = [(enumerate_rationals(j), 0) for j in range(1, 101)]
    edited = {x for x, _ in edits}
    checks = {}
    for p in (Partition.uniform(64), Partition.random(300, 4), Partition((0, F(1, 2), 1))):
        base = darboux_sums(d, p, 20)
        r = robustness_probe(d, edits, p, 20)
        checks[f"{len(p)} cells: gap unchanged"] = r.gap_certificate == riemann_gap_certificate(d, 20)
        checks[f"{len(p)} cells: gap >= 1 - ell"] = r.gap_certificate.lo >= F(1, 2)
        checks[f"{len(p)} cells: upper still 1"] = r.upper_sum == base.upper_sum == 1
        checks[f"{len(p)} cells: witnesses avoid edits"] = all(
            w.point not in edited and w.value == 1 for w in r.witnesses_of("sup"))
    gate(4, "robustness under 100 point edits", checks)


def test_criterion_05_cauchy_incompleteness(gate):
    g = SequenceKind.fat_cover()
    checks = {}
    for eps in (F(1, 100), F(1, 10 ** 6)):
        c = cauchy_modulus(g, eps)
        checks[f"ell 2^-N < eps={eps}"] = F(1, 2) / 2 ** c.N < eps
        n = c.N
        checks[f"distances below eps={eps}"] = all(
            pairwise_l1_distance(g, k, m) < eps for k in range(n, n + 8) for m in range(k + 1, k + 12))
    checks["limit has Darboux gap >= 1 - ell"] = riemann_gap_certificate(FatCoverIndicator(), 20).lo >= F(1, 2)
    gate(5, "Cauchy sequence without a Riemann limit", checks,
         f"N = {cauchy_modulus(g, F(1, 100)).N}, {cauchy_modulus(g, F(1, 10 ** 6)).N}")


def test_criterion_06_l1_defect_enclosures(gate):
    g = SequenceKind.fat_cover()
    encs = [l1_limit_defect(g, 3, m) for m in (10, 15, 20)]
    checks = {
        f"width m={m}": e.width == F(1, 2) / 2 ** m for m, e in zip((10, 15, 20), encs)
    }
    checks["nested"] = encs[0].contains(encs[1]) and encs[1].contains(encs[2])
    common = encs[0]
    for e in encs[1:]:
        common = common.intersect(e)
    checks["common value"] = common is not None
    gate(6, "L1 defect enclosures", checks)


def test_criterion_07_kurtz_contrast(gate):
    k = SequenceKind.kurtz()
    checks = {}
    for j, m, exact in ((1, 4, F(1)), (4, 16, F(1, 2)), (100, 400, F(1, 10))):
        e = pairwise_l1_distance(k, j, m)
        checks[f"({j},{m}) contains {exact}"] = e.contains(exact)
        checks[f"({j},{m}) width <= 2^-50"] = e.width <= F(1, 2 ** 50)
    v = cauchy_verdict(k, F(1, 10))
    checks["metadata: improper Riemann limit"] = any("improperly Riemann integrable" in n for n in v.notes)
    gate(7, "Kurtz contrast", checks)


def test_criterion_08_mode_separation(gate):
    t = SequenceKind.typewriter()
    checks = {}
    for eps in (F(1, 2), F(1)):
        prof = in_measure_profile(t, eps, 1024)
        checks[f"in-measure profile eps={eps}"] = all(
            v == F(1, 2 ** (j.bit_length() - 1)) for j, v in prof) and len(prof) == 1024
    probes = [F(1, 3), F(1, 2), F(0), F(1), F(2, 7), F(5, 9)] + [F(k, 17) for k in range(1, 15)]
    for x in probes:
        v = pointwise_profile(t, x, 1024)
        blocks = v.witness["blocks"]
        ok = v.mode == "oscillating" and v.certified and len(blocks) == 10
        ok = ok and all(b["one"] is not None for b in blocks)
        ok = ok and all(b["zero"] is not None for b in blocks if b["n"] >= 2)
        for b in blocks:
            if b["one"] is not None:
                ok = ok and sequence_term(t, b["one"])(x) == 1
            if b["zero"] is not None:
                ok = ok and sequence_term(t, b["zero"])(x) == 0
        checks[f"oscillates at {x}"] = ok
    gate(8, "mode separation", checks, f"{len(probes)} probes, jmax 1024")


def test_criterion_09_domination(gate):
    g = SequenceKind.fat_cover()
    terms = [sequence_term(g, k) for k in range(1, 21)]
    one = StepFunction.constant(1)
    checks = {
        "dominated a.e.": dominated_check(terms, one, "ae").dominated,
        "dominated everywhere": dominated_check(terms, one, "everywhere").dominated,
    }
    scaled = [combine([f], lambda v, k=k: k * v) for k, f in enumerate(terms, start=1)]
    for c in (F(1), F(2), F(10), F(19), F(39, 2)):
        v = dominated_check(scaled, StepFunction.constant(c))
        witness_ok = isinstance(v.witness, Interval) and v.witness.length > 0
        if witness_ok:
            bad = scaled[v.term_index - 1]
            mid = (v.witness.lo + v.witness.hi) / 2
            witness_ok = abs(bad(mid)) > c
        checks[f"k*G_k escapes {c}"] = not v.dominated and witness_ok
    gate(9, "domination", checks)


def test_criterion_10_fourier(gate):
    start = time.perf_counter()
    checks = {}
    cfg = FatCoverConfig()
    for k in range(1, 11):
        v = transform_value(TransformProbe(cfg, k), 0)
        checks[f"F_{k}(0) = lambda(A_{k})"] = v.re == Enclosure.exact(measure(fat_union(cfg, k))) and v.im == Enclosure.exact(0)
    g3 = TransformProbe(cfg, 3)
    freqs = [F(n, 3) for n in range(1, 26)]
    checks["conjugate symmetry at 25 frequencies"] = all(
        transform_value(g3, f).overlaps(transform_value(g3, -f).conj()) for f in freqs)
    one = TransformProbe.indicator([Interval.open(0, 1)])
    pl = plancherel_probe(one, 64, 2 ** 14)
    checks["Plancherel brackets 1"] = pl.brackets
    checks["slack <= 2e-3"] = pl.slack <= F(2, 1000)
    for name, probe in (("single interval", one), ("A_3", g3)):
        prof = improper_l2_profile(probe, (8, 16, 32, 64), 2 ** 14)
        rows = prof.witness["rows"]
        checks[f"L2 profile {name} monotone and bounded"] = (
            prof.certified and all(r["lo"] <= prof.witness["target"] for r in rows)
            and all(a["lo"] <= b["hi"] for a, b in zip(rows, rows[1:])))
    s = riemann_defect_summary(cfg, 10, 20)
    checks["defect report gap >= 1 - ell"] = s.defect and s.gap.lo >= 1 - cfg.ell
    checks["defect report profile certified"] = s.profile.certified
    elapsed = time.perf_counter() - start
    checks["runtime <= 120 s"] = elapsed <= 120
    gate(10, "Fourier transform leaves the Riemann class", checks,
         f"slack {float(pl.slack):.3e}, {elapsed:.1f} s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
