"""Command-line front end.  Thin shell over the library: parse, dispatch, print.

Exit codes: 0 success, 1 validation/input failure (machine-readable error
object on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks, distfn, operators, serialize
from .serialize import SchemaError


def _load_json(path: str, where: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(where, f"malformed JSON at line {e.lineno}, column {e.colno}") from e
    except OSError as e:
        raise SchemaError(where, str(e)) from e


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def _parse_x(text: str, where: str):
    try:
        vec = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(where, "expected a JSON list of numbers") from e
    if not isinstance(vec, list):
        raise SchemaError(where, "expected a JSON list of numbers")
    return vec


def _cmd_df_eval(args) -> int:
    F = serialize.stepdf_from_json(_load_json(args.f, "--f"), "--f")
    x = float(args.x)
    _emit({"value": distfn.df_eval(F, x)})
    return 0


def _cmd_df_conv(args) -> int:
    T = serialize.tnorm_from_json(args.tnorm, "--tnorm")
    F = serialize.stepdf_from_json(_load_json(args.f, "--f"), "--f")
    G = serialize.stepdf_from_json(_load_json(args.g, "--g"), "--g")
    from .triangle import tau_inf_conv, tau_sup_conv

    conv = tau_inf_conv if args.kind == "inf" else tau_sup_conv
    _emit(serialize.stepdf_to_json(conv(T, F, G)))
    return 0


def _cmd_df_levy(args) -> int:
    F = serialize.stepdf_from_json(_load_json(args.f, "--f"), "--f")
    G = serialize.stepdf_from_json(_load_json(args.g, "--g"), "--g")
    d = distfn.levy_metric(F, G)
    _emit({"value": d.value, "tolerance": d.tolerance})
    return 0


def _cmd_df_qinv(args) -> int:
    F = serialize.stepdf_from_json(_load_json(args.f, "--f"), "--f")
    _emit(serialize.quantile_to_json(distfn.quasi_inverse(F)))
    return 0


def _cmd_space_nu(args) -> int:
    P = serialize.space_from_json(_load_json(args.space, "--space"), "--space")
    x = _parse_x(args.x, "--x")
    _emit(serialize.stepdf_to_json(P.prob_norm(x)))
    return 0


def _cmd_space_norm(args) -> int:
    P = serialize.space_from_json(_load_json(args.space, "--space"), "--space")
    x = _parse_x(args.x, "--x")
    _emit({"value": P.norm_at(x, args.w)})
    return 0


def _cmd_op_norm(args) -> int:
    T = serialize.operator_from_json(_load_json(args.op, "--op"), "--op")
    _emit({"value": operators.operator_norm_exact(T, args.w, args.wp)})
    return 0


def _cmd_op_profile(args) -> int:
    T = serialize.operator_from_json(_load_json(args.op, "--op"), "--op")
    prof = operators.norm_profile(T)
    if args.csv:
        sys.stdout.write(prof.to_csv())
    else:
        _emit(
            {
                "domain_midpoints": list(prof.domain_midpoints),
                "codomain_midpoints": list(prof.codomain_midpoints),
                "table": [list(map(float, row)) for row in prof.table],
            }
        )
    return 0


def _cmd_op_delta(args) -> int:
    T = serialize.operator_from_json(_load_json(args.op, "--op"), "--op")
    res = operators.open_mapping_delta(T, args.w)
    _emit({"delta": res.delta, "condition_number": res.condition_number})
    return 0


def _cmd_check(args) -> int:
    rows = checks.run_suites(args.suite, args.seed, args.cases)
    sys.stdout.write(checks.format_report(rows))
    return 0 if all(r.passed for r in rows) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probnorm",
        description="Computable Serstnev probabilistic normed spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("df-eval", help="evaluate a step d.f.")
    p.add_argument("--f", required=True, help="StepDF JSON path (or - for stdin)")
    p.add_argument("--x", required=True, help="abscissa (inf / -inf allowed)")
    p.set_defaults(fn=_cmd_df_eval)

    p = sub.add_parser("df-conv", help="triangle-function convolution")
    p.add_argument("--tnorm", required=True, choices=["W", "prod", "min"])
    p.add_argument("--kind", choices=["sup", "inf"], default="sup")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(fn=_cmd_df_conv)

    p = sub.add_parser("df-levy", help="modified Levy metric")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(fn=_cmd_df_levy)

    p = sub.add_parser("df-qinv", help="quasi-inverse of a step d.f.")
    p.add_argument("--f", required=True)
    p.set_defaults(fn=_cmd_df_qinv)

    p = sub.add_parser("space-nu", help="probabilistic norm nu_x of a vector")
    p.add_argument("--space", required=True)
    p.add_argument("--x", required=True, help="vector as a JSON list")
    p.set_defaults(fn=_cmd_space_nu)

    p = sub.add_parser("space-norm", help="the norm ||x||_w")
    p.add_argument("--space", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--w", required=True, type=float)
    p.set_defaults(fn=_cmd_space_norm)

    p = sub.add_parser("op-norm", help="exact operator norm ||T||_(w,w')")
    p.add_argument("--op", required=True)
    p.add_argument("--w", required=True, type=float)
    p.add_argument("--wp", required=True, type=float)
    p.set_defaults(fn=_cmd_op_norm)

    p = sub.add_parser("op-profile", help="operator norm over all band pairs")
    p.add_argument("--op", required=True)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(fn=_cmd_op_profile)

    p = sub.add_parser("op-delta", help="open-mapping ball radius")
    p.add_argument("--op", required=True)
    p.add_argument("--w", required=True, type=float)
    p.set_defaults(fn=_cmd_op_delta)

    p = sub.add_parser("check", help="run the property suites")
    p.add_argument("--suite", choices=list(checks.SUITES) + ["all"], default="all")
    p.add_argument(
        "--seed", type=int, default=int(os.environ.get("PROBNORM_SEED", "0"))
    )
    p.add_argument("--cases", type=int, default=25)
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as e:
        _emit({"error": {"where": e.where, "message": e.message}})
        return 1
    except ValueError as e:
        _emit({"error": {"message": str(e)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
