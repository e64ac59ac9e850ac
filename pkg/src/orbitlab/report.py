"""JSON encoding of reports; exact numbers become {"num", "den"} strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import Gaussian

SCHEMA_VERSION = 1


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Gaussian):
        return {"re": to_jsonable(obj.re), "im": to_jsonable(obj.im)}
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): to_jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_fraction(doc) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def dumps(report: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, **report}
    return json.dumps(to_jsonable(body), indent=2, sort_keys=True)
