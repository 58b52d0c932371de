"""psdec command line: cone enumeration, decomposition records, the zeta
comparison and the verification suites.

Exit codes: 0 success, 1 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

import numpy as np

from . import closed_forms as cf
from . import cone
from .reports import FAIL, Report

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 3

OUTPUT_SCHEMA: dict = {
    "type": "object",
    "oneOf": [
        {"required": ["entries"]},
        {"required": ["reports"]},
    ],
    "properties": {
        "command": {"type": "string"},
        "entries": {"type": "array", "items": {"type": "object"}},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "params", "status", "detail"],
                "properties": {
                    "check": {"type": "string"},
                    "params": {"type": "object"},
                    "status": {"enum": ["pass", "fail", "expected-deviation"]},
                    "detail": {"type": "object"},
                },
            },
        },
    },
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(obj: Any):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, cf.Poly):
        return obj.coefficients()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _clean(obj):
    """Recursively turn keys into strings and numpy scalars into Python values."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer, np.bool_, np.ndarray, cf.Poly)):
        return _clean(_jsonable(obj))
    return obj


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def render(payload: dict, fmt: str) -> str:
    payload = _clean(payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    key = "entries" if "entries" in payload else "reports"
    rows = payload[key]
    if key == "reports":
        rows = [{"check": r["check"], "status": r["status"], "params": r["params"], "detail": r["detail"]} for r in rows]
    columns: list[str] = []
    for row in rows:
        for k in row:
            if k not in columns:
                columns.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c, "")) for c in columns])
        return buf.getvalue().rstrip("\n")
    # aligned table; long detail payloads are left out for readability
    if key == "reports":
        columns = ["check", "status", "params"]
    table = [columns] + [[_cell(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def cmd_cone(args) -> tuple[dict, int]:
    if not 0 <= args.max_level <= 30:
        raise UsageError("--max-level must lie in [0, 30]")
    entries = []
    for level in range(args.max_level + 1):
        if args.classes:
            for members in cone.classes_at_level(level):
                inv = cone.invariants(members[0])
                rep = cone.canonical_representative(members[0])
                entries.append({
                    "c": list(rep),
                    "mu": inv.mu,
                    "kappa": inv.kappa,
                    "level": inv.level,
                    "region": cone.region(rep).value,
                    "class_size": cone.class_size(*inv),
                    "members": [list(c) for c in members],
                })
        else:
            for c in cone.enumerate_level(level):
                inv = cone.invariants(c)
                entries.append({
                    "c": list(c),
                    "mu": inv.mu,
                    "kappa": inv.kappa,
                    "level": inv.level,
                    "region": cone.region(c).value,
                    "class_size": cone.class_size(*inv),
                })
    return {"command": "cone", "entries": entries}, EXIT_OK


def _parse_c(text: str) -> cone.ConePoint:
    try:
        return cone.ConePoint.parse(text)
    except (ValueError, cone.NotInCone) as exc:
        raise UsageError(str(exc)) from exc


def cmd_decompose(args) -> tuple[dict, int]:
    c = _parse_c(args.c)
    if args.q < 2:
        raise UsageError("--q must be >= 2")
    inv = cone.invariants(c)
    count, dim = cf.constituents_of_class(c, args.q)
    record = {
        "c": list(c),
        "mu": inv.mu,
        "kappa": inv.kappa,
        "level": inv.level,
        "region": cone.region(c).value,
        "family": cf.family_of(c).value,
        "q": args.q,
        "count": count,
        "dim": dim,
        "count_poly": cf.count_poly(c).coefficients(),
        "dim_poly": cf.dimension_poly(c).coefficients(),
        "class_size": cone.class_size(*inv),
        "representative": list(cone.canonical_representative(c)),
    }
    if count == 0:
        record["note"] = "V_c = 0"
    return {"command": "decompose", "entries": [record]}, EXIT_OK


def cmd_zeta(args) -> tuple[dict, int]:
    if not 0 <= args.max_n <= cf.MAX_ZETA_N:
        raise UsageError(f"--max-n must lie in [0, {cf.MAX_ZETA_N}]")
    if args.q is None and not args.symbolic:
        raise UsageError("--q is required unless --symbolic is given")
    if args.q is not None and args.q < 2:
        raise UsageError("--q must be >= 2")
    if args.aggregate:
        if args.q is None:
            raise UsageError("--aggregate needs a numeric --q")
        agg = cf.dimension_aggregate(args.max_n, args.q)
        entries = [{"dimension": d, "count": n} for d, n in agg.items()]
        return {"command": "zeta", "entries": entries}, EXIT_OK
    q = None if args.symbolic else args.q
    entries = [t.row(q) for t in cf.zeta_terms(args.max_n)]
    failed = any(e["status"] == FAIL for e in entries)
    return {"command": "zeta", "entries": entries}, EXIT_FAILED if failed else EXIT_OK


def _closed_reports() -> list[Report]:
    from . import gl3

    reports = [cf.flag_identity_check(6, q, strict=False) for q in (2, 3, 4, 5, 7, 8, 9)]
    reports.append(cf.flag_identity_check(4, None, strict=False))
    reports.append(gl3.flag_index_check(2, 2, strict=False))
    reports.extend(cf.zeta_reports(16, None))
    return reports


def cmd_verify(args) -> tuple[dict, int]:
    from . import gl3, spectral

    if args.p is None:
        raise UsageError("--p is required")
    reports: list[Report] = []
    try:
        if args.suite in ("group", "all"):
            if args.m is None:
                raise UsageError("--m is required for the group suite")
            reports += spectral.run_group_suite(args.p, args.m, args.delta_exp, args.backend, args.seed)
        if args.suite in ("gl3", "all"):
            m = args.m if args.m is not None else 1
            c = _parse_c(args.c) if args.c else cone.ConePoint(2 * m, 2 * m, 3 * m)
            if args.backend != "zmod":
                raise UsageError("the gl3 suite runs over Z/p^l only (--backend zmod)")
            reports += gl3.run_gl3_suite(args.p, c, m, args.seed)
        if args.suite == "all":
            reports += _closed_reports()
    except UsageError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": f"verify {args.suite}", "reports": [r.to_dict() for r in reports]}
    return payload, EXIT_FAILED if any(r.status == FAIL for r in reports) else EXIT_OK



def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "table"), default="json")

    parser = _Parser(prog="psdec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cone", parents=[fmt], help="list cone points or classes")
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--classes", action="store_true")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("decompose", parents=[fmt], help="constituents of one summand V_c")
    p.add_argument("--c", required=True, help="c1,c2,c3")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("zeta", parents=[fmt], help="catalogue counts against the printed coefficients")
    p.add_argument("--q", type=int)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--aggregate", action="store_true")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify", parents=[fmt], help="run verification suites")
    p.add_argument("suite", choices=("group", "gl3", "all"))
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--delta-exp", type=int, default=0)
    p.add_argument("--c")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=("zmod", "polymod"), default="zmod")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        print(f"psdec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(payload, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
