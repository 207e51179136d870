"""Command-line front end: ``darboux-lab <command> [options]``.

Exit status is 0 on certified success, 2 when a certified verdict is
negative (for example a domination failure) and 1 on usage, config or I/O
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import convergence as conv
from .counterexamples import FatCoverConfig, SequenceKind, SEQUENCE_TAGS, sequence_term
from .darboux import (
    DEFAULT_K,
    FatCoverIndicator,
    Partition,
    RationalsIndicator,
    StepFn,
    darboux_sums,
    riemann_gap_certificate,
)
from .errors import DarbouxLabError
from .exact_core import Interval, as_rational, format_rational
from .fourier import (
    TransformProbe,
    decay_bound,
    improper_l2_profile,
    plancherel_probe,
    riemann_defect_summary,
    transform_value,
)
from .functions import StepFunction, combine
from .serialize import approx, dumps

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which we reserve
        raise UsageError(f"{self.prog}: {message}")


def _rational(s: str) -> Fraction:
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from exc


def _rational_list(s: str) -> list[Fraction]:
    return [_rational(x) for x in s.split(",") if x]


class Result:
    """Payload plus exit status and optional CSV rows."""

    def __init__(self, payload: Any, status: int = EXIT_OK,
                 rows: list[list[Any]] | None = None, header: list[str] | None = None):
        self.payload = payload
        self.status = status
        self.rows = rows
        self.header = header


def _kind(args: argparse.Namespace) -> SequenceKind:
    if args.kind == "G":
        return SequenceKind.fat_cover(args.ell)
    return SequenceKind(args.kind)


def _frac_cells(x: Fraction) -> list[str]:
    return [format_rational(x), approx(x)]


# -- commands ----------------------------------------------------------------------


def cmd_cauchy(args) -> Result:
    c = conv.cauchy_modulus(_kind(args), args.eps)
    return Result({"kind": args.kind, "eps": c.eps, "N": c.N, "certificate": c.certificate,
                   "bound": c.bound, "limit": conv.LIMIT_NOTES[args.kind]})


def cmd_defect(args) -> Result:
    enc = conv.l1_limit_defect(_kind(args), args.k, args.probe_m)
    return Result({"kind": args.kind, "k": args.k, "probe_m": args.probe_m, "defect": enc, "width": enc.width})


def cmd_pointwise(args) -> Result:
    kind = _kind(args)
    v = conv.pointwise_profile(kind, args.x, args.jmax)
    rows = []
    if kind.tag != "kurtz":
        for j in range(1, args.jmax + 1):
            rows.append([j, *_frac_cells(sequence_term(kind, j)(args.x))])
    return Result({"kind": args.kind, "x": args.x, "jmax": args.jmax, "verdict": v},
                  rows=rows, header=["j", "value", "value_approx"])


def cmd_inmeasure(args) -> Result:
    kind = _kind(args)
    prof = conv.in_measure_profile(kind, args.eps, args.jmax)
    rows = [[j, *_frac_cells(m)] for j, m in prof]
    return Result({"kind": args.kind, "eps": args.eps, "profile": [{"j": j, "measure": m} for j, m in prof]},
                  rows=rows, header=["j", "measure", "measure_approx"])


def _dominating(spec: str) -> StepFunction:
    if spec == "one":
        return StepFunction.constant(1)
    if spec == "zero":
        return StepFunction()
    return StepFunction.constant(_rational(spec))


def cmd_dominate(args) -> Result:
    kind = _kind(args)
    terms = []
    for j in range(1, args.jmax + 1):
        f = sequence_term(kind, j)
        if args.scaled:
            f = combine([f], lambda v, j=j: j * v)
        terms.append(f)
    v = conv.dominated_check(terms, _dominating(args.g), args.mode)
    return Result({"kind": args.kind, "jmax": args.jmax, "g": args.g, "scaled": args.scaled,
                   "dominated": v.dominated, "verdict": v},
                  EXIT_OK if v.dominated else EXIT_NEGATIVE)


def _descriptor(args):
    if args.descriptor == "G":
        return FatCoverIndicator(FatCoverConfig(args.ell))
    if args.descriptor == "Q":
        return RationalsIndicator()
    f = sequence_term(_kind(args), args.j)
    if not isinstance(f, StepFunction):
        raise UsageError("term descriptors must be step functions")
    return StepFn(f)


def cmd_darboux(args) -> Result:
    p = Partition.from_spec(args.partition, args.seed)
    r = darboux_sums(_descriptor(args), p, args.K)
    return Result({"descriptor": args.descriptor, "partition": args.partition, "cells": len(p),
                   "report": r, "gap_lower": r.gap_lower})


def cmd_gap(args) -> Result:
    g = riemann_gap_certificate(_descriptor(args), args.K)
    return Result({"descriptor": args.descriptor, "K": args.K, "gap": g, "gap_lower": g.lo,
                   "one_minus_ell": 1 - args.ell})


def _probe(args) -> TransformProbe:
    if args.single_interval:
        return TransformProbe.indicator([Interval.open(0, 1)], args.direction)
    return TransformProbe(FatCoverConfig(args.ell), args.k, args.direction, args.untruncated)


def cmd_ft(args) -> Result:
    p = _probe(args)
    out, rows = [], []
    for f in args.freq:
        v = transform_value(p, f, args.prec)
        a = v.abs_bounds()
        entry = {"freq": f, "value": v, "abs": a}
        if f != 0:
            entry["decay_bound"] = decay_bound(p, f)
        out.append(entry)
        rows.append([format_rational(f), *(approx(x) for x in (v.re.lo, v.re.hi, v.im.lo, v.im.hi, a.lo, a.hi))])
    return Result({"direction": args.direction, "values": out}, rows=rows,
                  header=["freq", "re_lo", "re_hi", "im_lo", "im_hi", "abs_lo", "abs_hi"])


def cmd_plancherel(args) -> Result:
    r = plancherel_probe(_probe(args), args.R, args.n)
    return Result({"result": r, "brackets": r.brackets, "slack": r.slack},
                  EXIT_OK if r.brackets else EXIT_NEGATIVE)


def cmd_l2profile(args) -> Result:
    v = improper_l2_profile(_probe(args), args.R_list, args.n)
    rows = [[format_rational(r["R"]), approx(r["lo"]), approx(r["hi"]), approx(r["tail"])]
            for r in v.witness["rows"]]
    return Result({"verdict": v}, EXIT_OK if v.certified else EXIT_NEGATIVE,
                  rows=rows, header=["R", "lo", "hi", "tail"])


def cmd_fourier_defect(args) -> Result:
    cfg = None if args.single_interval else FatCoverConfig(args.ell)
    s = riemann_defect_summary(cfg, args.k, args.K_gap, args.R_list, args.n)
    return Result({"summary": s, "gap_lower": s.gap.lo})


def cmd_term(args) -> Result:
    return Result({"kind": args.kind, "j": args.j, "term": sequence_term(_kind(args), args.j)})


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--ell", type=_rational, default=Fraction(1, 2))
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="darboux-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with a 'command' key and flag values")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    def kind(p, default=None):
        p.add_argument("--kind", choices=SEQUENCE_TAGS, default=default, required=default is None)

    def probe(p):
        p.add_argument("--k", type=int, default=3)
        p.add_argument("--direction", choices=("forward", "inverse"), default="inverse")
        p.add_argument("--single-interval", action="store_true", help="use the indicator of (0,1)")
        p.add_argument("--untruncated", action="store_true")

    p = add("cauchy", cmd_cauchy, "Cauchy modulus for eps")
    kind(p)
    p.add_argument("--eps", type=_rational, required=True)

    p = add("defect", cmd_defect, "L1 distance from term k to the limit")
    kind(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--probe-m", type=int, default=20)

    p = add("pointwise", cmd_pointwise, "pointwise behaviour at a rational x")
    kind(p)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--jmax", type=int, default=64)

    p = add("inmeasure", cmd_inmeasure, "measure of {|f_j| >= eps}")
    kind(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--jmax", type=int, default=64)

    p = add("dominate", cmd_dominate, "domination of terms 1..jmax by a constant")
    kind(p)
    p.add_argument("--jmax", type=int, default=10)
    p.add_argument("--g", default="one", help="'one', 'zero' or a rational constant")
    p.add_argument("--mode", choices=("ae", "everywhere"), default="ae")
    p.add_argument("--scaled", action="store_true", help="use j*f_j instead of f_j")

    for name, fn, text in (("darboux", cmd_darboux, "Darboux sums with witnesses"),
                           ("gap", cmd_gap, "Riemann gap certificate")):
        p = add(name, fn, text)
        p.add_argument("--descriptor", choices=("G", "Q", "term"), default="G")
        kind(p, "G")
        p.add_argument("--j", type=int, default=3)
        p.add_argument("-K", "--K", dest="K", type=int, default=DEFAULT_K)
        if name == "darboux":
            p.add_argument("--partition", default="uniform:8")

    p = add("ft", cmd_ft, "transform values")
    probe(p)
    p.add_argument("--freq", type=_rational_list, required=True, help="comma-separated rationals")
    p.add_argument("--prec", type=int, default=32)

    p = add("plancherel", cmd_plancherel, "L2 mass of the transform on [-R, R]")
    probe(p)
    p.add_argument("--R", type=_rational, default=Fraction(64))
    p.add_argument("--n", type=int, default=1 << 14)

    p = add("l2profile", cmd_l2profile, "improper L2 integrability profile")
    probe(p)
    p.add_argument("--R-list", dest="R_list", type=_rational_list, default=[8, 16, 32, 64])
    p.add_argument("--n", type=int, default=1 << 12)

    p = add("fourier-defect", cmd_fourier_defect, "transform leaves the Riemann class")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--K-gap", dest="K_gap", type=int, default=DEFAULT_K)
    p.add_argument("--R-list", dest="R_list", type=_rational_list, default=[8, 16, 32, 64])
    p.add_argument("--n", type=int, default=1 << 12)
    p.add_argument("--single-interval", action="store_true")

    p = add("term", cmd_term, "dump a sequence term")
    kind(p)
    p.add_argument("--j", type=int, required=True)
    return parser


def _config_argv(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict) or "command" not in doc:
        raise UsageError("config must be a JSON object with a 'command' key")
    argv = [str(doc.pop("command"))]
    for key, value in doc.items():
        flag = "--" + key.replace("_", "-") if key not in ("K", "R_list", "K_gap") else {
            "K": "--K", "R_list": "--R-list", "K_gap": "--K-gap"}[key]
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        elif isinstance(value, list):
            argv += [flag, ",".join(str(v) for v in value)]
        else:
            argv += [flag, str(value)]
    return argv


def _expand_config(argv: list[str]) -> list[str]:
    for i, a in enumerate(argv):
        if a == "--config" or a.startswith("--config="):
            if "=" in a:
                path, rest = a.split("=", 1)[1], argv[:i] + argv[i + 1:]
            else:
                if i + 1 >= len(argv):
                    raise UsageError("--config needs a path")
                path, rest = argv[i + 1], argv[:i] + argv[i + 2:]
            return _config_argv(path) + rest
    return argv


def _render(result: Result, fmt: str) -> str:
    if fmt == "csv":
        if result.rows is None:
            raise UsageError("this command has no CSV form; use --format json")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(result.header)
        w.writerows(result.rows)
        return buf.getvalue()
    return dumps(result.payload)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_expand_config(argv))
        result = args.fn(args)
        text = _render(result, args.format)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return result.status
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DarbouxLabError, ValueError, OSError) as exc:
        print(f"darboux-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
