"""Command-line front end: parse slice polynomials, apply operators, run the
decomposition / regularity / sliceness suites, emit JSON or CSV reports.

Exit codes: 0 verdict pass or value emitted, 1 verdict fail, 2 error.
"""

import argparse
import csv
import io
import json
import os
import random
import sys

from .quaternion import parse_quaternion, format_quaternion, RealArgumentError
from .expr import parse, lower, max_variable_index, ExpressionSyntaxError, ArityError
from .slicefn import format_slice
from .numeric import lift, NearRealAxisError, DepthExhaustedError, \
    DEFAULT_STEP, DEFAULT_BAND
from .almansi import (spherical_components, fueter_components, dirac_components,
                      reconstruct, reconstruct_symbolic)
from .sampling import random_slice_point
from . import wirtinger

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

_FLAVORS = {"sp": "spherical", "a": "fueter", "gamma": "dirac"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None,
                        help="ambient variable count (default: inferred)")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: QWIRT_SEED or 0)")
    common.add_argument("--samples", type=int, default=None,
                        help="number of sample points for numeric suites")
    common.add_argument("--tol", type=float, default=None,
                        help="residual tolerance override")
    common.add_argument("--fd-step", type=float, default=DEFAULT_STEP,
                        help="finite-difference step")
    common.add_argument("--fd-delta", type=float, default=DEFAULT_BAND,
                        help="exclusion band around the real axes")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(
        prog="qwirt",
        description="Slice-function calculus in several quaternionic variables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate at a point")
    p.add_argument("expr")
    p.add_argument("--at", required=True,
                   help="semicolon-separated quaternion literals, e.g. 'i;j'")

    for name in ("theta", "thetabar"):
        p = sub.add_parser(name, parents=[common],
                           help="apply the %s Wirtinger operator" % name)
        p.add_argument("expr")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--numeric", action="store_true",
                       help="evaluate the differential definition at --at")
        p.add_argument("--at", default=None)

    p = sub.add_parser("spherical", parents=[common],
                       help="spherical value or derivative in one variable")
    p.add_argument("expr")
    p.add_argument("--var", type=int, required=True)
    p.add_argument("--kind", choices=("value", "derivative"), required=True)

    p = sub.add_parser("almansi", parents=[common],
                       help="component family and reconstruction residuals")
    p.add_argument("expr")
    p.add_argument("--flavor", choices=tuple(_FLAVORS), required=True)
    p.add_argument("--level", type=int, required=True)

    p = sub.add_parser("check-regular", parents=[common],
                       help="slice-regularity verdict")
    p.add_argument("expr")
    p.add_argument("--numeric", action="store_true")

    p = sub.add_parser("check-slice", parents=[common],
                       help="strong-sliceness residuals of the lifted field")
    p.add_argument("expr")

    p = sub.add_parser("crosscheck", parents=[common],
                       help="symbolic vs numeric Wirtinger agreement")
    p.add_argument("expr")
    p.add_argument("--m", type=int, default=None)

    return parser


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QWIRT_SEED")
    return int(env) if env else 0


def _parse_point(text, n):
    coords = [parse_quaternion(part) for part in text.split(";")]
    if len(coords) != n:
        raise ValueError("point has %d coordinates, expression needs %d"
                         % (len(coords), n))
    return tuple(coords)


def _load(args):
    node = parse(args.expr)
    inferred = max_variable_index(node)
    if args.n is not None:
        n = args.n
    elif getattr(args, "at", None):
        n = max(inferred, len(args.at.split(";")), 1)
    else:
        n = max(inferred, 1)
    return lower(node, n), n


def _lift(f, args):
    return lift(f, step=args.fd_step, band=args.fd_delta)


def _emit(report, fmt):
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        records = report.get("records")
        if records:
            header = sorted(records[0])
            writer.writerow(header)
            for rec in records:
                writer.writerow([rec[key] for key in header])
        else:
            writer.writerow(["key", "value"])
            for key in sorted(report):
                if key == "records":
                    continue
                writer.writerow([key, report[key]])
        sys.stdout.write(out.getvalue())
    else:
        print(json.dumps(report, indent=2, default=str))


def _cmd_eval(args):
    f, n = _load(args)
    point = _parse_point(args.at, n)
    value = f.evaluate(point)
    _emit({"value": format_quaternion(value)}, args.format)
    return EXIT_OK


def _cmd_wirtinger(args, conj):
    f, n = _load(args)
    name = "thetabar" if conj else "theta"
    if args.numeric:
        if not args.at:
            raise ValueError("--numeric evaluation needs --at")
        point = tuple(q.to_float() for q in _parse_point(args.at, n))
        field = _lift(f, args)
        op = (wirtinger.wirtinger_conj_derivative_numeric if conj
              else wirtinger.wirtinger_derivative_numeric)
        value = op(field, args.m, point)
        report = {"operator": name, "m": args.m, "realization": "numeric",
                  "value": format_quaternion(value)}
    else:
        g = (wirtinger.wirtinger_conj_derivative(f, args.m) if conj
             else wirtinger.wirtinger_derivative(f, args.m))
        report = {"operator": name, "m": args.m, "result": format_slice(g)}
    _emit(report, args.format)
    return EXIT_OK


def _cmd_spherical(args):
    f, _ = _load(args)
    g = (f.spherical_value(args.var) if args.kind == "value"
         else f.spherical_derivative(args.var))
    _emit({"operator": "spherical_%s" % args.kind, "var": args.var,
           "result": format_slice(g)}, args.format)
    return EXIT_OK


def _cmd_almansi(args):
    f, n = _load(args)
    flavor = _FLAVORS[args.flavor]
    seed = _resolve_seed(args)
    if flavor == "spherical":
        family = spherical_components(f, args.level)
        exact = reconstruct_symbolic(family) == f
        report = {
            "level": args.level,
            "flavor": args.flavor,
            "entries": {str(mask): family.entries[mask].to_json()
                        for mask in family.masks()},
            "reconstruction_residuals": {"symbolic_exact": exact,
                                         "max_residual": 0.0 if exact else None},
        }
        _emit(report, args.format)
        return EXIT_OK if exact else EXIT_FAIL
    field = _lift(f, args)
    family = (fueter_components(field, args.level) if flavor == "fueter"
              else dirac_components(field, args.level))
    samples = args.samples if args.samples is not None else 20
    rng = random.Random(seed)
    tol = args.tol if args.tol is not None else 1e-4
    worst = 0.0
    for _ in range(samples):
        p = random_slice_point(rng, n)
        worst = max(worst, abs(reconstruct(family, p) - field(p)))
    report = {
        "level": args.level,
        "flavor": args.flavor,
        "entries": {str(mask): "numeric" for mask in family.masks()},
        "reconstruction_residuals": {"max_residual": worst, "tolerance": tol,
                                     "samples": samples, "seed": seed},
    }
    _emit(report, args.format)
    return EXIT_OK if worst < tol else EXIT_FAIL


def _cmd_check_regular(args):
    f, _ = _load(args)
    seed = _resolve_seed(args)
    if args.numeric:
        samples = args.samples if args.samples is not None else 10
        report = wirtinger.check_regularity_numeric(
            _lift(f, args), samples=samples, seed=seed, tol=args.tol,
            slice_established=True)
    else:
        report = wirtinger.check_regularity_symbolic(f)
    _emit(report, args.format)
    return EXIT_OK if report["verdict"] == "regular" else EXIT_FAIL


def _cmd_check_slice(args):
    f, _ = _load(args)
    seed = _resolve_seed(args)
    samples = args.samples if args.samples is not None else 5
    tol = args.tol if args.tol is not None else 1e-2
    report = wirtinger.check_strong_sliceness(_lift(f, args), samples=samples,
                                              seed=seed, tol=tol)
    _emit(report, args.format)
    return EXIT_OK if report["verdict"] else EXIT_FAIL


def _cmd_crosscheck(args):
    f, n = _load(args)
    seed = _resolve_seed(args)
    samples = args.samples if args.samples is not None else 10
    indices = [args.m] if args.m else list(range(1, min(n, 2) + 1))
    reports = []
    ok = True
    for m in indices:
        rep = wirtinger.crosscheck(f, m, samples=samples, seed=seed, tol=args.tol)
        reports.append(rep)
        ok = ok and rep["verdict"]
    _emit({"records": reports, "verdict": ok}, args.format)
    return EXIT_OK if ok else EXIT_FAIL


_ERROR_TYPES = (
    (ExpressionSyntaxError, "syntax"),
    (ArityError, "arity"),
    (NearRealAxisError, "near-real-axis"),
    (DepthExhaustedError, "depth-exhausted"),
    (RealArgumentError, "real-argument"),
    (ZeroDivisionError, "division-by-zero"),
    (ValueError, "value"),
)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": _cmd_eval,
        "theta": lambda a: _cmd_wirtinger(a, conj=False),
        "thetabar": lambda a: _cmd_wirtinger(a, conj=True),
        "spherical": _cmd_spherical,
        "almansi": _cmd_almansi,
        "check-regular": _cmd_check_regular,
        "check-slice": _cmd_check_slice,
        "crosscheck": _cmd_crosscheck,
    }
    try:
        return handlers[args.command](args)
    except Exception as exc:  # mapped to a machine-readable report
        for klass, label in _ERROR_TYPES:
            if isinstance(exc, klass):
                error = {"type": label, "message": str(exc)}
                if isinstance(exc, ExpressionSyntaxError):
                    error["offset"] = exc.offset
                print(json.dumps({"error": error}))
                return EXIT_ERROR
        raise


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
