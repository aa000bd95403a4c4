"""Command-line front-end: analysis, classification, enumeration, search.

Conventions: polynomial coefficients are ascending (constant term first)
both on the command line and in JSON; every number in JSON is a decimal
string so arbitrary precision survives any consumer.  All output data goes
to stdout, progress notes to stderr.  Exit codes: 0 success, 1 usage
error, 2 invalid Weil polynomial, 3 classifier/oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    ClassificationReport,
    classify,
    classify_auto,
    fourfold_diagnostic,
    sufficiency_degree,
)
from .errors import OracleDisagreement, WeilrankError
from .exactcore import IntPoly
from .newton import classify_newton, newton_polygon
from .relfinder import oracle_rank
from .search import (
    SearchSpec,
    construct_totally_real_cubic,
    enumerate_weil,
    find_non_neat_sextics,
)
from .weil import base_change, eigenvalue_structure, validate

SCHEMA = "weilrank/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_DISAGREEMENT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_poly(text: str) -> IntPoly:
    try:
        return IntPoly([int(c.strip()) for c in text.split(",")])
    except ValueError:
        raise SystemExit(_usage_error("polynomial coefficients must be integers"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _poly_json(poly: IntPoly):
    return [str(c) for c in poly.coeffs]


def _newton_json(polygon):
    return [[str(s), l] for s, l in polygon.segments]


def _witness_json(cf):
    if cf is None:
        return None
    return {
        "m": str(cf.m),
        "g": [[str(c.a0), str(c.a1)] for c in cf.g],
    }


def _report_json(report: ClassificationReport) -> dict:
    out = {
        "schema": SCHEMA,
        "q": str(report.q),
        "coeffs": _poly_json(report.poly),
        "g": report.g,
        "neat": report.neat,
        "rank": report.rank,
        "gamma_rank": report.gamma_rank,
        "newton": report.newton.primary,
        "newton_labels": sorted(report.newton.labels),
        "polygon": _newton_json(report.polygon),
        "simple": report.simple,
        "conditions": {
            "i": report.condition_i,
            "ii": report.condition_ii,
            "iii": report.condition_iii,
        },
        "witness": _witness_json(report.witness),
        "components": [
            {
                "pmin": _poly_json(c.pmin),
                "e": c.e,
                "pairs": c.d,
                "newton": c.newton_primary,
                "supersingular": c.supersingular,
            }
            for c in report.components
        ],
        "rank_source": report.rank_source,
        "sufficiency_degree": report.sufficiency_degree,
        "notes": list(report.notes),
    }
    if report.extension_from is not None:
        q0, n = report.extension_from
        out["extension"] = {"from_q": str(q0), "degree": n}
    if report.oracle is not None:
        out["oracle"] = {
            "rank": report.oracle.rank,
            "confidence": report.oracle.confidence,
            "basis": [list(v) for v in report.oracle.lattice.basis],
            "exponent_bound": report.oracle.lattice.exponent_bound,
            "agrees": report.oracle.rank == report.rank,
        }
    return out


def _analyze_record(poly: IntPoly, q: int) -> dict:
    w = validate(poly, q)
    decomp = eigenvalue_structure(w)
    polygon = newton_polygon(w)
    ntype = classify_newton(polygon, w.g)
    return {
        "schema": SCHEMA,
        "valid": True,
        "q": str(q),
        "coeffs": _poly_json(poly),
        "g": w.g,
        "p": str(w.p),
        "v": w.v,
        "simple": decomp.simple,
        "components": [
            {
                "pmin": _poly_json(c.pmin),
                "e": c.e,
                "pairs": c.d,
                "sqrt_root": c.sqrt_root,
            }
            for c in decomp.components
        ],
        "end_rank": decomp.end_rank,
        "newton": ntype.primary,
        "newton_labels": sorted(ntype.labels),
        "polygon": _newton_json(polygon),
        "sufficiency_degree": sufficiency_degree(w),
    }


def _print_human_analysis(rec: dict):
    print(f"Weil polynomial over F_{rec['q']}: valid (g = {rec['g']})")
    print(f"  p = {rec['p']}, v = {rec['v']}")
    print(f"  simple: {rec['simple']}")
    for c in rec["components"]:
        print(
            f"  component {','.join(c['pmin'])} e={c['e']} pairs={c['pairs']}"
            f" sqrt_root={c['sqrt_root']}"
        )
    print(f"  endomorphism rank: {rec['end_rank']}")
    print(f"  newton: {rec['newton']} {rec['polygon']}")
    print(f"  sufficiency degree: {rec['sufficiency_degree']}")


def _cmd_analyze(args) -> int:
    if args.batch:
        return _run_batch(args.batch, lambda poly, q: _analyze_record(poly, q))
    poly = _parse_poly(args.poly)
    try:
        rec = _analyze_record(poly, args.q)
    except WeilrankError as exc:
        if args.json:
            print(
                json.dumps(
                    {
                        "schema": SCHEMA,
                        "valid": False,
                        "q": str(args.q),
                        "coeffs": _poly_json(poly),
                        "error": type(exc).__name__,
                        "detail": str(exc),
                    }
                )
            )
        else:
            print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.json:
        print(json.dumps(rec))
    else:
        _print_human_analysis(rec)
    return EXIT_OK


def _cmd_classify(args) -> int:
    if args.batch:
        def run(poly, q):
            w = validate(poly, q)
            if args.auto_extend:
                report = classify_auto(
                    w, exponent_bound=args.bound, force_oracle=args.oracle_check
                )
            else:
                report = classify(
                    w, exponent_bound=args.bound, force_oracle=args.oracle_check
                )
            return _report_json(report)

        return _run_batch(args.batch, run)
    poly = _parse_poly(args.poly)
    try:
        w = validate(poly, args.q)
        if args.fourfold_diagnostic:
            diag = fourfold_diagnostic(w, exponent_bound=args.bound)
            print(
                json.dumps(
                    {
                        "schema": SCHEMA,
                        "q": str(args.q),
                        "coeffs": _poly_json(poly),
                        "decomposition": [
                            [_poly_json(f), e] for f, e in diag.decomposition
                        ],
                        "newton": diag.newton_primary,
                        "oracle_rank": diag.oracle.rank,
                        "confidence": diag.oracle.confidence,
                        "rank_is_three": diag.rank_is_three,
                        "quadratic_subfield_in_component": diag.quadratic_subfield_in_component,
                        "non_neat_threefold_component": diag.non_neat_threefold_component,
                    }
                )
            )
            return EXIT_OK
        if args.auto_extend:
            report = classify_auto(
                w, exponent_bound=args.bound, force_oracle=args.oracle_check
            )
        else:
            report = classify(
                w, exponent_bound=args.bound, force_oracle=args.oracle_check
            )
    except OracleDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except WeilrankError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(_report_json(report)))
    return EXIT_OK


def _run_batch(path: str, fn) -> int:
    """Process JSONL records one per line; output line i matches input line i."""
    stream = sys.stdin if path == "-" else open(path, "r", encoding="utf-8")
    worst = EXIT_OK
    try:
        for line in stream:
            line = line.strip()
            if not line:
                print("{}")
                continue
            rec = json.loads(line)
            poly = IntPoly([int(c) for c in rec["coeffs"]])
            q = int(rec["q"])
            try:
                out = fn(poly, q)
            except OracleDisagreement as exc:
                out = {"schema": SCHEMA, "error": "OracleDisagreement", "detail": str(exc)}
                worst = max(worst, EXIT_DISAGREEMENT)
            except WeilrankError as exc:
                out = {
                    "schema": SCHEMA,
                    "valid": False,
                    "q": str(q),
                    "coeffs": [str(c) for c in poly.coeffs],
                    "error": type(exc).__name__,
                    "detail": str(exc),
                }
                worst = max(worst, EXIT_INVALID)
            print(json.dumps(out))
    finally:
        if stream is not sys.stdin:
            stream.close()
    return worst


def _cmd_enumerate(args) -> int:
    bounds = {}
    for item in args.bound_override or []:
        idx, val = item.split("=", 1)
        bounds[int(idx)] = int(val)
    spec = SearchSpec(
        g=args.g,
        q=args.q,
        bounds=bounds,
        irreducible_only=args.irreducible,
        newton_label=args.newton,
        non_neat_only=args.non_neat,
        limit=args.limit,
    )
    count = 0
    for w in enumerate_weil(spec):
        print(json.dumps({"schema": SCHEMA, "coeffs": _poly_json(w.poly), "q": str(w.q)}))
        count += 1
    print(f"enumerated {count} polynomials", file=sys.stderr)
    return EXIT_OK


def _cmd_search_nonneat(args) -> int:
    count = 0
    for w, cf in find_non_neat_sextics(args.p, args.q, args.m, limit=args.limit):
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "coeffs": _poly_json(w.poly),
                    "q": str(w.q),
                    "witness": _witness_json(cf),
                }
            )
        )
        count += 1
    print(f"found {count} non-neat sextics", file=sys.stderr)
    return EXIT_OK


def _cmd_cubic_field(args) -> int:
    try:
        rep = construct_totally_real_cubic(args.p, args.l)
    except WeilrankError as exc:
        print(f"rejected: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(
        json.dumps(
            {
                "schema": SCHEMA,
                "p": str(args.p),
                "l": str(args.l),
                "cleared_coeffs": _poly_json(rep.cleared),
                "eisenstein_at_l": rep.eisenstein_at_l,
                "real_root_count": rep.real_root_count,
                "mod_p_shape": rep.mod_p_shape,
                "all_checks_pass": rep.all_checks_pass,
            }
        )
    )
    return EXIT_OK if rep.all_checks_pass else EXIT_INVALID


def _cmd_base_change(args) -> int:
    poly = _parse_poly(args.poly)
    try:
        w = validate(poly, args.q)
        wn = base_change(w, args.n)
    except WeilrankError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps({"schema": SCHEMA, "coeffs": _poly_json(wn.poly), "q": str(wn.q)}))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    poly = _parse_poly(args.poly)
    try:
        w = validate(poly, args.q)
        result = oracle_rank(w, exponent_bound=args.bound)
    except WeilrankError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(
        json.dumps(
            {
                "schema": SCHEMA,
                "q": str(args.q),
                "coeffs": _poly_json(poly),
                "rank": result.rank,
                "confidence": result.confidence,
                "representatives": list(result.lattice.representatives),
                "basis": [list(v) for v in result.lattice.basis],
                "exponent_bound": result.lattice.exponent_bound,
            }
        )
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="weilrank",
        description="Exact analysis of Weil q-polynomials: validation, Newton "
        "polygons, neatness and multiplicative rank.  Coefficients are always "
        "ascending: constant term first.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="validate and report structure")
    p_an.add_argument("--q", type=int)
    p_an.add_argument("--poly", type=str)
    p_an.add_argument("--json", action="store_true")
    p_an.add_argument("--batch", type=str, help="JSONL file or '-' for stdin")
    p_an.set_defaults(func=_cmd_analyze)

    p_cl = sub.add_parser("classify", help="neatness / rank report (JSON)")
    p_cl.add_argument("--q", type=int)
    p_cl.add_argument("--poly", type=str)
    p_cl.add_argument("--auto-extend", action="store_true", dest="auto_extend")
    p_cl.add_argument("--oracle-check", action="store_true", dest="oracle_check")
    p_cl.add_argument("--bound", type=int, default=20, help="oracle exponent bound")
    p_cl.add_argument(
        "--fourfold-diagnostic", action="store_true", dest="fourfold_diagnostic"
    )
    p_cl.add_argument("--batch", type=str)
    p_cl.set_defaults(func=_cmd_classify)

    p_en = sub.add_parser("enumerate", help="stream valid Weil polynomials (JSONL)")
    p_en.add_argument("--g", type=int, required=True)
    p_en.add_argument("--q", type=int, required=True)
    p_en.add_argument("--irreducible", action="store_true")
    p_en.add_argument("--newton", type=str, default=None)
    p_en.add_argument("--non-neat", action="store_true", dest="non_neat")
    p_en.add_argument("--limit", type=int, default=None)
    p_en.add_argument(
        "--bound-override",
        action="append",
        dest="bound_override",
        metavar="INDEX=BOUND",
    )
    p_en.set_defaults(func=_cmd_enumerate)

    p_nn = sub.add_parser("search-nonneat", help="find non-neat sextics (JSONL)")
    p_nn.add_argument("--p", type=int, required=True)
    p_nn.add_argument("--q", type=int, required=True)
    p_nn.add_argument("--m", type=int, required=True)
    p_nn.add_argument("--limit", type=int, default=None)
    p_nn.set_defaults(func=_cmd_search_nonneat)

    p_cf = sub.add_parser("cubic-field", help="totally real cubic constructor")
    p_cf.add_argument("--p", type=int, required=True)
    p_cf.add_argument("--l", type=int, required=True)
    p_cf.set_defaults(func=_cmd_cubic_field)

    p_bc = sub.add_parser("base-change", help="extend the base field")
    p_bc.add_argument("--n", type=int, required=True)
    p_bc.add_argument("--q", type=int, required=True)
    p_bc.add_argument("--poly", type=str, required=True)
    p_bc.set_defaults(func=_cmd_base_change)

    p_or = sub.add_parser("oracle", help="certified relation-lattice rank")
    p_or.add_argument("--q", type=int, required=True)
    p_or.add_argument("--poly", type=str, required=True)
    p_or.add_argument("--bound", type=int, default=20)
    p_or.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("analyze", "classify") and not args.batch:
        if args.q is None or args.poly is None:
            return _usage_error(f"{args.command} requires --q and --poly")
    try:
        return args.func(args)
    except OracleDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except WeilrankError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
