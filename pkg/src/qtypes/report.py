"""JSON encodings shared by the CLI and the verification harness."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra.poly import PolyC
from .algebra.scalars import ExtendedRational, GaussianRational
from .algebra.series import UniSeries

SCHEMA_VERSION = "qtypes.report/1"


def scalar_json(c: GaussianRational) -> dict:
    return {
        "re": {"num": int(c.re.numerator), "den": int(c.re.denominator)},
        "im": {"num": int(c.im.numerator), "den": int(c.im.denominator)},
    }


def series_json(s: UniSeries) -> dict:
    return {
        "truncation": s.truncation,
        "terms": {str(k): str(c) for k, c in enumerate(s.stored) if c},
    }


def poly_json(p: PolyC, names=None) -> str:
    return p.to_string(names)


def default(obj):
    if isinstance(obj, ExtendedRational):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, GaussianRational):
        return scalar_json(obj)
    if isinstance(obj, PolyC):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(payload, default=default, sort_keys=True, indent=2)
