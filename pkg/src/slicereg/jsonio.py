"""JSON encodings and payload schemas.

Quaternions are ``[w, x, y, z]`` in the basis 1, i, j, k; complex numbers are
``[re, im]``; imaginary units are ``[a, b, c]``. A polynomial is
``{"coeffs": [[w, x, y, z], ...]}`` lowest degree first, a rational stem adds
a real denominator: ``{"num": [[...], ...], "den": [d0, d1, ...]}``.
"""
from __future__ import annotations

import math

import numpy as np

from .hypercomplex import ComplexQuad, ImaginaryUnit, Quaternion
from .stem import ComplexPoly, StemPolynomial, StemRational
from .zeros import Contour, ZeroRecord

SCHEMA_VERSION = "1.0"

_num = {"type": "number"}
_quat = {"type": "array", "items": _num, "minItems": 4, "maxItems": 4}
_cplx = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_unit = {"type": "array", "items": _num, "minItems": 3, "maxItems": 3}
_oct = {"type": "array", "items": _num, "minItems": 8, "maxItems": 8}
_poly = {
    "type": "object",
    "properties": {"coeffs": {"type": "array", "items": _quat, "minItems": 1}},
    "required": ["coeffs"],
}
_rational = {
    "type": "object",
    "properties": {
        "num": {"type": "array", "items": _quat, "minItems": 1},
        "den": {"type": "array", "items": _num, "minItems": 1},
    },
    "required": ["num", "den"],
}
_function = {"oneOf": [_poly, _rational]}
_contour = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "circle"}, "center": _cplx, "radius": {"type": "number", "exclusiveMinimum": 0}},
            "required": ["kind", "center", "radius"],
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "rectangle"}, "corner_min": _cplx, "corner_max": _cplx},
            "required": ["kind", "corner_min", "corner_max"],
        },
    ]
}


def _obj(props: dict, required: list) -> dict:
    return {"type": "object", "properties": props, "required": required}


PAYLOAD_SCHEMAS = {
    "eval": {**_obj({"f": _function, "q": _quat, "z": _cplx}, ["f"]), "anyOf": [{"required": ["q"]}, {"required": ["z"]}]},
    "star": _obj({"f": _function, "g": _function}, ["f", "g"]),
    "symmetrize": _obj({"f": _function}, ["f"]),
    "zeros": _obj({"f": _function, "contour": _contour}, ["f"]),
    "count": _obj({"f": _function, "contour": _contour}, ["f", "contour"]),
    "rouche": _obj({"f": _poly, "g": _poly, "contour": _contour}, ["f", "g", "contour"]),
    "jensen": _obj({"f": _poly, "R": {"type": "number", "exclusiveMinimum": 0}}, ["f", "R"]),
    "cauchy": _obj(
        {"f": _poly, "unit": _unit, "center": _num, "radius": {"type": "number", "exclusiveMinimum": 0}, "q": _quat, "nodes": {"type": "integer", "minimum": 8}},
        ["f", "unit", "radius", "q"],
    ),
    "bergman": _obj(
        {
            "f": _poly,
            "unit": _unit,
            "q": {"oneOf": [_quat, {"type": "array", "items": _quat, "minItems": 1}]},
            "nodes": {"type": "integer", "minimum": 8},
        },
        ["f", "unit", "q"],
    ),
    "norms": _obj(
        {
            "f": _poly,
            "x": _num,
            "y": _num,
            "radius": {"type": "number", "exclusiveMinimum": 0},
            "unit": _unit,
            "samples": {"type": "integer", "minimum": 2},
        },
        ["f", "x", "y"],
    ),
    "clifford": {
        "type": "object",
        "properties": {
            "a": _oct,
            "b": _oct,
            "coeffs": {"type": "array", "items": _oct, "minItems": 1},
            "contour": _contour,
        },
        "oneOf": [{"required": ["a", "b"]}, {"required": ["coeffs", "contour"]}],
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": sorted(PAYLOAD_SCHEMAS)},
        "params": {"type": "object"},
        "result": {"type": "object"},
    },
    "required": ["schema_version", "command", "params", "result"],
    "additionalProperties": False,
}

ERROR_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "error": _obj({"kind": {"type": "string"}, "detail": {"type": "string"}}, ["kind", "detail"]),
    },
    "required": ["schema_version", "error"],
}


def normalize_payload(payload):
    """Allow the function fields at top level as shorthand for ``{"f": ...}``."""
    if isinstance(payload, dict) and "f" not in payload and ("coeffs" in payload or "num" in payload):
        payload = dict(payload)
        f = {k: payload.pop(k) for k in ("coeffs", "num", "den") if k in payload}
        payload["f"] = f
    return payload


def _finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite number in input")
    return x


def decode_complex(a) -> complex:
    return complex(_finite(a[0]), _finite(a[1]))


def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def decode_quaternion(a) -> Quaternion:
    return Quaternion(*(_finite(t) for t in a))


def encode_quaternion(q: Quaternion) -> list:
    return [float(t) + 0.0 for t in q.as_array()]


def decode_unit(a) -> ImaginaryUnit:
    return ImaginaryUnit(*(_finite(t) for t in a))


def encode_unit(v: ImaginaryUnit | None):
    return None if v is None else [v.a + 0.0, v.b + 0.0, v.c + 0.0]


def encode_quad(A) -> list:
    arr = A.as_array() if isinstance(A, ComplexQuad) else np.asarray(A)
    return [encode_complex(t) for t in arr]


def decode_function(obj):
    if "coeffs" in obj:
        return StemPolynomial([[_finite(t) for t in row] for row in obj["coeffs"]])
    num = StemPolynomial([[_finite(t) for t in row] for row in obj["num"]])
    return StemRational(num, ComplexPoly([_finite(t) for t in obj["den"]]))


def encode_function(f) -> dict:
    if isinstance(f, StemRational):
        return {"num": f.num.coeffs.tolist(), "den": f.den.coeffs.real.tolist()}
    return {"coeffs": f.coeffs.tolist()}


def encode_real_poly(P: ComplexPoly) -> list:
    return [float(t) for t in P.coeffs.real]


def decode_contour(obj) -> Contour:
    if obj["kind"] == "circle":
        return Contour.circle(decode_complex(obj["center"]), _finite(obj["radius"]))
    return Contour.rectangle(decode_complex(obj["corner_min"]), decode_complex(obj["corner_max"]))


def encode_contour(c: Contour) -> dict:
    if c.kind == "circle":
        return {"kind": "circle", "center": encode_complex(c.center), "radius": c.radius}
    return {"kind": "rectangle", "corner_min": encode_complex(c.corner_min), "corner_max": encode_complex(c.corner_max)}


def encode_record(rec: ZeroRecord) -> dict:
    return {
        "kind": rec.kind,
        "stem": encode_complex(rec.stem_point),
        "order": rec.order,
        "unit": encode_unit(rec.unit),
    }
