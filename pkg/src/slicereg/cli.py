"""Batch command-line front end.

Reads one JSON payload (``--input FILE`` or stdin), runs ``--command`` and
writes a JSON report (or flattened CSV) to stdout. Exit status: 0 success,
1 malformed input, 2 contract violation such as a zero on the contour.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import jsonschema
import numpy as np

from . import clifford, kernels, norms, stem, zeros
from .errors import ContractViolation
from .jsonio import (
    PAYLOAD_SCHEMAS,
    SCHEMA_VERSION,
    decode_complex,
    decode_contour,
    decode_function,
    decode_quaternion,
    decode_unit,
    encode_complex,
    encode_contour,
    encode_function,
    encode_quad,
    encode_quaternion,
    encode_real_poly,
    encode_record,
    normalize_payload,
)

COMMANDS = sorted(PAYLOAD_SCHEMAS)


class MalformedInput(Exception):
    pass


def _require_poly(f, what="f"):
    if not isinstance(f, stem.StemPolynomial):
        raise MalformedInput(f"{what} must be a polynomial for this command")
    return f


def _eval(p, opts):
    f = decode_function(p["f"])
    out = {}
    if "q" in p:
        out["value"] = encode_quaternion(stem.eval_slice_any(f, decode_quaternion(p["q"])))
    if "z" in p:
        out["stem"] = encode_quad(stem.eval_stem_any(f, decode_complex(p["z"])))
    return {}, out


def _star(p, opts):
    h = stem.star_product_rational(decode_function(p["f"]), decode_function(p["g"]))
    if h.den.degree == 0:
        h = stem.StemPolynomial(h.num.coeffs / h.den.coeffs[0].real)
    return {}, {"product": encode_function(h)}


def _symmetrize(p, opts):
    f = decode_function(p["f"])
    if isinstance(f, stem.StemRational):
        num, den = f.symmetrized()
        return {}, {"num": encode_real_poly(num), "den": encode_real_poly(den)}
    return {}, {"coeffs": encode_real_poly(stem.symmetrize(f))}


def _zeros(p, opts):
    f = decode_function(p["f"])
    region = decode_contour(p["contour"]) if "contour" in p else None
    recs = zeros.find_zeros(f, region)
    params = {"contour": encode_contour(region) if region else None}
    return params, {"zeros": [encode_record(r) for r in recs]}


def _count(p, opts):
    f = decode_function(p["f"])
    c = decode_contour(p["contour"])
    rep = zeros.count_in_region(f, c)
    return {"contour": encode_contour(c)}, {
        "tallies": rep.tallies(),
        "winding": rep.winding,
        "predicted_winding": rep.predicted_winding(),
        "consistent": rep.is_consistent(),
        "zeros": [encode_record(r) for r in rep.records],
    }


def _rouche(p, opts):
    f = _require_poly(decode_function(p["f"]))
    g = _require_poly(decode_function(p["g"]), "g")
    c = decode_contour(p["contour"])
    samples = opts.nodes or 512
    res = zeros.rouche_same_count(f, g, c, samples=samples)
    return {"contour": encode_contour(c), "samples": samples}, {
        "conclusive": res.conclusive,
        "count_f": res.count_f,
        "count_g": res.count_g,
        "witness": None if res.witness is None else encode_complex(res.witness),
        "margin": res.margin,
    }


def _jensen(p, opts):
    f = _require_poly(decode_function(p["f"]))
    nodes = opts.nodes or 4096
    lhs, rhs = zeros.jensen_check(f, float(p["R"]), nodes=nodes)
    return {"R": float(p["R"]), "nodes": nodes}, {"lhs": lhs, "rhs": rhs, "difference": lhs - rhs}


def _cauchy(p, opts):
    f = _require_poly(decode_function(p["f"]))
    nodes = int(p.get("nodes") or opts.nodes or 512)
    circle = kernels.SliceCircle(decode_unit(p["unit"]), float(p.get("center", 0.0)), float(p["radius"]), nodes)
    q = decode_quaternion(p["q"])
    val = kernels.cauchy_eval(f, circle, q)
    direct = stem.eval_slice(f, q)
    return {"nodes": nodes, "center": circle.center, "radius": circle.radius}, {
        "value": encode_quaternion(val),
        "direct": encode_quaternion(direct),
        "error": (val - direct).norm(),
    }


def _bergman(p, opts):
    f = _require_poly(decode_function(p["f"]))
    v = decode_unit(p["unit"])
    pts = p["q"] if isinstance(p["q"][0], list) else [p["q"]]
    qs = [decode_quaternion(a) for a in pts]
    radial = int(p.get("nodes") or opts.nodes or 64)
    angular = 8 * radial
    vals = kernels.bergman_reproduce(f, v, qs, radial_nodes=radial, angular_nodes=angular)
    direct = [stem.eval_slice(f, q) for q in qs]
    return {"radial_nodes": radial, "angular_nodes": angular}, {
        "values": [encode_quaternion(a) for a in vals],
        "direct": [encode_quaternion(a) for a in direct],
        "max_error": max((a - b).norm() for a, b in zip(vals, direct)),
    }


def _norms(p, opts):
    f = _require_poly(decode_function(p["f"]))
    x, y = float(p["x"]), float(p["y"])
    radius = float(p.get("radius", 1.0))
    v = decode_unit(p["unit"]) if "unit" in p else decode_unit([1.0, 0.0, 0.0])
    samples = int(p.get("samples", 100_000))
    nodes = opts.nodes or 64
    mc, err = norms.sphere_l2_mc(f, x, y, n=samples, seed=opts.seed)
    sw = norms.norm_sandwich(f, x, y)
    tol = opts.tol if opts.tol is not None else 1e-12
    params = {"x": x, "y": y, "radius": radius, "unit": [v.a, v.b, v.c], "samples": samples, "seed": opts.seed, "nodes": nodes, "tol": tol}
    return params, {
        "sphere_l2": norms.sphere_l2(f, x, y),
        "sphere_l2_mc": mc,
        "sphere_l2_mc_stderr": err,
        "slice_l2": norms.slice_l2(f, v, radius, nodes=nodes),
        "bulk_l2": norms.bulk_l2(f, radius, nodes=nodes),
        "bulk_convention": "2*pi * integral of y^2 |F|^2 over the full stem disc (= 4*pi over the upper half disc)",
        "sandwich": {
            "min_sample": sw.min_sample,
            "stem_norm": sw.stem_norm,
            "max_closed": sw.max_closed,
            "max_sample": sw.max_sample,
            "holds": sw.holds(tol),
        },
    }


def _clifford(p, opts):
    tol = opts.tol if opts.tol is not None else 1e-9
    if "a" in p:
        a, b = clifford.Clifford3(p["a"]), clifford.Clifford3(p["b"])
        prod = clifford.cl3_mul(a, b)
        return {"tol": tol}, {
            "product": list(prod.c),
            "a_in_S": clifford.in_S3(a, tol),
            "b_in_S": clifford.in_S3(b, tol),
        }
    f = clifford.CliffordPolynomial(p["coeffs"])
    c = decode_contour(p["contour"])
    return {"contour": encode_contour(c), "tol": tol}, {
        "symmetrized": encode_real_poly(clifford.symmetrize8(f)),
        "winding_upper_bound": clifford.count_upper_bound(f, c),
    }


HANDLERS = {
    "eval": _eval,
    "star": _star,
    "symmetrize": _symmetrize,
    "zeros": _zeros,
    "count": _count,
    "rouche": _rouche,
    "jensen": _jensen,
    "cauchy": _cauchy,
    "bergman": _bergman,
    "norms": _norms,
    "clifford": _clifford,
}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def run(command: str, payload, opts) -> tuple[dict, int]:
    """Run one job; returns the report (or error object) and the exit code."""
    try:
        if command not in HANDLERS:
            raise MalformedInput(f"unknown command {command!r}")
        if command != "clifford":
            payload = normalize_payload(payload)
        jsonschema.validate(payload, PAYLOAD_SCHEMAS[command])
        params, result = HANDLERS[command](payload, opts)
    except ContractViolation as exc:
        return _error(type(exc).__name__, str(exc)), 2
    except jsonschema.ValidationError as exc:
        return _error("SchemaError", exc.message), 1
    except (MalformedInput, ValueError, TypeError, KeyError, IndexError) as exc:
        return _error(type(exc).__name__, str(exc)), 1
    params = {"seed": opts.seed, "nodes": opts.nodes, "tol": opts.tol, **params}
    report = {"schema_version": SCHEMA_VERSION, "command": command, "params": params, "result": result}
    return _jsonable(report), 0


def _error(kind: str, detail: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "error": {"kind": kind, "detail": detail}}


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, obj


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(report):
        w.writerow([k, v if isinstance(v, str) else json.dumps(v)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slicereg", description="Slice-regular polynomial toolkit.")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--input", help="JSON payload file (default: stdin)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--nodes", type=int, default=None, help="quadrature nodes (command-specific default)")
    ap.add_argument("--tol", type=float, default=None)
    ap.add_argument("--format", choices=["json", "csv"], default="json")
    return ap


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    try:
        if opts.input:
            with open(opts.input, encoding="utf-8") as fh:
                payload = json.load(fh)
        else:
            payload = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        report, code = _error(type(exc).__name__, str(exc)), 1
    else:
        if opts.nodes is not None and opts.nodes < 8:
            report, code = _error("ValueError", "--nodes must be at least 8"), 1
        else:
            report, code = run(opts.command, payload, opts)
    if opts.format == "csv":
        sys.stdout.write(to_csv(report))
    else:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
