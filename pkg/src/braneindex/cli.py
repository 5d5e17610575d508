"""Command-line front end: human tables or stable JSON on stdout.

Exit codes: 0 success (including reported vanishing), 2 invalid input,
3 internal consistency failure (residual pole, non-integer index, oracle
disagreement).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from dataclasses import dataclass

from . import bwb, localize, rootsys, tensorrep, toricfan
from .charseries import RatFunc
from .errors import DomainError, Error, GenericityError, InputError, PoleError


@dataclass
class RunReport:
    command: str
    inputs: dict
    result: dict
    timings_ms: dict


def _digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _parse_weight(text: str, rank: int, name: str) -> tuple[int, ...]:
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{name} must be comma-separated integers, got {text!r}")
    if len(coords) != rank:
        raise InputError(f"{name} has {len(coords)} coordinates, expected {rank}")
    return coords


def _parse_levi(text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"levi must be comma-separated indices, got {text!r}")


def _ratfunc_json(r: RatFunc) -> dict:
    return {"num": list(r.num), "den": list(r.den), "text": str(r)}


def _render(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        payload = {
            "command": report.command,
            "inputs": report.inputs,
            "result": report.result,
            "timings_ms": report.timings_ms,
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        return
    print(f"command: {report.command}")
    for key, value in report.inputs.items():
        if key != "digest":
            print(f"  {key}: {value}")
    for key, value in report.result.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for row in value:
                print("   " + "  ".join(f"{k}={v}" for k, v in row.items()))
        else:
            print(f"{key}: {value}")


def _cohomology_payload(res: bwb.CohomologyResult) -> dict:
    if res.vanishes_identically:
        return {"vanishes": True}
    return {
        "vanishes": False,
        "ghost_number": res.degree,
        "dimension": res.dimension,
        "highest_weight": list(res.highest_weight),
    }


def cmd_roots(args) -> RunReport:
    t0 = time.perf_counter()
    rs = rootsys.build_root_system(args.type, args.rank)
    inputs = {"type": args.type, "rank": args.rank}
    result = {
        "positive_root_count": len(rs.positive_roots),
        "rho": list(rootsys.rho(rs)),
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
        "positive_roots": [list(r) for r in rs.positive_roots],
    }
    ms = (time.perf_counter() - t0) * 1000.0
    inputs["digest"] = _digest(inputs)
    return RunReport("roots", inputs, result, {"compute": ms})


def _root_system_and_parabolic(args):
    rs = rootsys.build_root_system(args.type, args.rank)
    q = bwb.ParabolicSubset(rs, _parse_levi(getattr(args, "levi", None)))
    return rs, q


def cmd_strings(args) -> RunReport:
    t0 = time.perf_counter()
    rs, q = _root_system_and_parabolic(args)
    mu = _parse_weight(args.mu, rs.rank, "mu")
    lam = _parse_weight(args.lam, rs.rank, "lambda")
    res = bwb.string_space_line_bundles(rs, q, mu, lam)
    ms = (time.perf_counter() - t0) * 1000.0
    inputs = {
        "type": args.type, "rank": args.rank,
        "levi": sorted(q.levi_simple_roots),
        "mu": list(mu), "lambda": list(lam),
    }
    inputs["digest"] = _digest(inputs)
    return RunReport("strings", inputs, _cohomology_payload(res), {"compute": ms})


def cmd_ext_bundles(args) -> RunReport:
    t0 = time.perf_counter()
    rs, q = _root_system_and_parabolic(args)
    alpha = _parse_weight(args.alpha, rs.rank, "alpha")
    beta = _parse_weight(args.beta, rs.rank, "beta")
    dim = bwb.ext_dim_vector_bundles(rs, q, alpha, beta, args.k)
    ms = (time.perf_counter() - t0) * 1000.0
    inputs = {
        "type": args.type, "rank": args.rank,
        "levi": sorted(q.levi_simple_roots),
        "alpha": list(alpha), "beta": list(beta), "k": args.k,
    }
    inputs["digest"] = _digest(inputs)
    return RunReport("ext-bundles", inputs, {"dimension": dim}, {"compute": ms})


def cmd_tensor(args) -> RunReport:
    t0 = time.perf_counter()
    rs = rootsys.build_root_system(args.type, args.rank)
    alpha = _parse_weight(args.alpha, rs.rank, "alpha")
    beta = _parse_weight(args.beta, rs.rank, "beta")
    dec = tensorrep.tensor_decompose(rs, alpha, beta)
    summands = [
        {"weight": list(w), "multiplicity": m, "dimension": rootsys.weyl_dimension(rs, w)}
        for w, m in dec
    ]
    ms = (time.perf_counter() - t0) * 1000.0
    inputs = {"type": args.type, "rank": args.rank, "alpha": list(alpha), "beta": list(beta)}
    inputs["digest"] = _digest(inputs)
    return RunReport("tensor", inputs, {"summands": summands}, {"compute": ms})


def _load_fan_document(path: str) -> toricfan.FanDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read fan file {path}: {exc}")
    return toricfan.parse_fan_document(text)


def _resolve_bundle(doc: toricfan.FanDocument, divisor_arg: str | None):
    """Returns (bundle, divisor?) honoring the command line over the file."""
    if divisor_arg is not None:
        coeffs = tuple(int(x) for x in divisor_arg.split(","))
        if len(coeffs) != len(doc.fan.rays):
            raise InputError(
                f"divisor has {len(coeffs)} coefficients for {len(doc.fan.rays)} rays"
            )
        return coeffs, coeffs
    if doc.divisor is not None and doc.bundle_fixed_weights is not None:
        raise InputError("fan file carries both a divisor and fixed-point weights; pass --divisor to choose")
    if doc.bundle_fixed_weights is not None:
        return doc.bundle_fixed_weights, None
    coeffs = doc.divisor if doc.divisor is not None else tuple(0 for _ in doc.fan.rays)
    return coeffs, coeffs


def cmd_toric_index(args) -> RunReport:
    t0 = time.perf_counter()
    doc = _load_fan_document(args.fan_file)
    bundle, divisor = _resolve_bundle(doc, args.divisor)
    t1 = time.perf_counter()
    res = localize.localization_index(doc.fan, bundle, jobs=args.jobs)
    t2 = time.perf_counter()
    if res.index.denominator != 1:
        raise PoleError(f"localization index {res.index} is not an integer")
    result = {
        "index": int(res.index),
        "direction": list(res.direction.v),
        "terms": [_ratfunc_json(t) for t in res.terms],
    }
    timings = {"parse": (t1 - t0) * 1000.0, "compute": (t2 - t1) * 1000.0}
    if args.check_lattice:
        if divisor is None:
            raise InputError("--check-lattice requires a divisor description of the bundle")
        count = localize.lattice_point_character(doc.fan, divisor).total()
        result["lattice_count"] = count
        result["oracle"] = "AGREE" if count == res.index else "DISAGREE"
        if count != res.index:
            raise Error(f"lattice oracle disagrees: index {res.index} vs {count} points")
    inputs = {
        "fan_file": args.fan_file,
        "divisor": list(divisor) if divisor is not None else None,
        "explicit_weights": divisor is None,
    }
    inputs["digest"] = _digest(inputs)
    return RunReport("toric-index", inputs, result, timings)


def cmd_toric_points(args) -> RunReport:
    t0 = time.perf_counter()
    doc = _load_fan_document(args.fan_file)
    bundle, divisor = _resolve_bundle(doc, args.divisor)
    if divisor is None:
        raise InputError("toric-points needs a divisor, not explicit fiber weights")
    char = localize.lattice_point_character(doc.fan, divisor)
    ms = (time.perf_counter() - t0) * 1000.0
    inputs = {"fan_file": args.fan_file, "divisor": list(divisor)}
    inputs["digest"] = _digest(inputs)
    result = {
        "count": char.total(),
        "points": [list(p) for p in sorted(char.terms)],
    }
    return RunReport("toric-points", inputs, result, {"compute": ms})


# let argparse accept "-3,0"-style weight values without the "=" form
_WEIGHT_TOKEN = re.compile(r"^-\d+(,-?\d+)*$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braneindex",
        description="Exact string spectra on flag quotients and toric localization indices.",
    )
    parser._negative_number_matcher = _WEIGHT_TOKEN
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--jobs", type=int, default=1, help="fixed-point workers for toric commands")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group(p):
        p.add_argument("--type", required=True,
                       choices=("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2"))
        p.add_argument("--rank", required=True, type=int)

    p = sub.add_parser("roots", help="positive roots, rho, Cartan matrix")
    add_group(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("strings", help="ghost number and dimension between line-bundle branes")
    add_group(p)
    p.add_argument("--levi", default=None, help="comma-separated Levi indices, empty for Borel")
    p.add_argument("--mu", required=True)
    p.add_argument("--lam", "--lambda", dest="lam", required=True)
    p.set_defaults(fn=cmd_strings)

    p = sub.add_parser("ext-bundles", help="string-space dimension between bundle branes")
    add_group(p)
    p.add_argument("--levi", default=None)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("-k", type=int, required=True, help="ghost number")
    p.set_defaults(fn=cmd_ext_bundles)

    p = sub.add_parser("tensor", help="tensor product decomposition")
    add_group(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("toric-index", help="equivariant index by fixed-point localization")
    p.add_argument("fan_file")
    p.add_argument("--divisor", default=None, help="comma-separated coefficients, one per ray")
    p.add_argument("--check-lattice", action="store_true")
    p.set_defaults(fn=cmd_toric_index)

    p = sub.add_parser("toric-points", help="lattice points of a divisor's section polytope")
    p.add_argument("fan_file")
    p.add_argument("--divisor", default=None)
    p.set_defaults(fn=cmd_toric_points)

    for child in sub.choices.values():
        child._negative_number_matcher = _WEIGHT_TOKEN
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        print("error: invalid-input: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        report = args.fn(args)
    except (InputError, DomainError) as exc:
        print(f"error: invalid-input: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"error: pole: {exc}", file=sys.stderr)
        return 3
    except GenericityError as exc:
        print(f"error: genericity: {exc}", file=sys.stderr)
        return 3
    except Error as exc:
        print(f"error: internal: {exc}", file=sys.stderr)
        return 3
    _render(report, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
