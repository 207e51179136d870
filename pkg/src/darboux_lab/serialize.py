"""JSON encoding for reports: every number is exact ``p/q`` plus a 12-digit decimal."""

from __future__ import annotations

import dataclasses
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any

from .exact_core import (
    Enclosure,
    Interval,
    IntervalSet,
    QuadraticIrrational,
    as_rational,
    format_rational,
)
from .functions import KurtzTail, StepFunction


def approx(x: Fraction) -> str:
    """Round-to-nearest decimal with 12 significant digits (display only)."""
    with localcontext() as ctx:
        ctx.prec = 12
        q = Decimal(x.numerator) / Decimal(x.denominator)
    return format(q, "g")


def number(x: Fraction | int) -> dict[str, str]:
    x = Fraction(x)
    return {"exact": format_rational(x), "approx": approx(x)}


def interval_json(iv: Interval) -> dict[str, Any]:
    return {"lo": number(iv.lo), "hi": number(iv.hi), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}


def to_jsonable(obj: Any) -> Any:
    """Recursively convert library values to JSON-ready structures."""
    # plain ints are indices and counts; quantities are always Fractions
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return number(obj)
    if isinstance(obj, Enclosure):
        return {"lo": number(obj.lo), "hi": number(obj.hi)}
    if isinstance(obj, Interval):
        return interval_json(obj)
    if isinstance(obj, IntervalSet):
        return [interval_json(iv) for iv in obj]
    if isinstance(obj, QuadraticIrrational):
        e = obj.enclosure(64)
        return {"form": "p+q*sqrt(2)", "p": format_rational(obj.p), "q": format_rational(obj.q),
                "approx": approx(e.mid)}
    if isinstance(obj, StepFunction):
        return {
            "kind": "step",
            "pieces": [{"interval": interval_json(iv), "value": number(v)} for iv, v in obj.pieces],
            "exceptions": [{"point": number(p), "value": number(v)} for p, v in obj.exceptions],
        }
    if isinstance(obj, KurtzTail):
        return {"kind": "kurtz", "j": obj.j}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if not f.name.startswith("_")}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


# -- decoding ----------------------------------------------------------------------


def _rat(v: Any) -> Fraction:
    if isinstance(v, dict):
        v = v["exact"]
    return as_rational(v)


def interval_from_json(d: dict[str, Any]) -> Interval:
    return Interval(_rat(d["lo"]), _rat(d["hi"]), bool(d["lo_closed"]), bool(d["hi_closed"]))


def function_from_json(d: dict[str, Any]) -> StepFunction | KurtzTail:
    if d.get("kind") == "kurtz":
        return KurtzTail(int(d["j"]))
    pieces = tuple((interval_from_json(p["interval"]), _rat(p["value"])) for p in d.get("pieces", ()))
    exceptions = tuple((_rat(e["point"]), _rat(e["value"])) for e in d.get("exceptions", ()))
    return StepFunction(pieces, exceptions)
