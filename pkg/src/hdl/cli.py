"""``hdl`` command line: bounds, map analysis, extremal maps, fuzzing, CSV export.

Exit codes: 0 when every check passes, 2 when some check fails, 1 on usage
or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

import numpy as np

from . import extremal, fuzz, geometry, hyperbolic, schwarz
from .analysis import analyze_quiet
from .errors import HDLError
from .report import TOLERANCE
from .series import ComplexSeries, map_from_dict, map_to_dict

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _coeff_list(text: str) -> ComplexSeries:
    """``0,0,0.5`` or a JSON list of numbers / ``[re, im]`` pairs."""
    try:
        data = json.loads(text) if text.lstrip().startswith("[") else [_complex(t) for t in text.split(",")]
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list: {text!r}") from exc
    return ComplexSeries([complex(*c) if isinstance(c, list) else complex(c) for c in data])


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector: {text!r}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _emit(text: str, out: str | None):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- subcommands ----------------------------------------------------------------


def cmd_bounds(args) -> int:
    a, r = args.a, args.r
    p = schwarz.params(a)
    out = {
        "a": a,
        "r": r,
        "s": p.s,
        "alpha": p.alpha,
        "x_minus": float(schwarz.x_minus(r, a)),
        "x_plus": float(schwarz.x_plus(r, a)),
        "x_minus_deriv": float(schwarz.x_minus_deriv(r, a)),
        "x_plus_deriv": float(schwarz.x_plus_deriv(r, a)),
        "gradient_origin": schwarz.gradient_bound_origin(a),
        "gradient_interior": schwarz.gradient_bound_interior(r, a),
        "khavinson": schwarz.khavinson_bound(r),
        "boundary": schwarz.boundary_bound(a),
    }
    if args.json:
        _emit(_dump(out), args.out)
    else:
        _emit("\n".join(f"{k:18s} {v:.17g}" for k, v in out.items()), args.out)
    return EXIT_OK


def _read_map(path: str):
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return map_from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read map from {path}: {exc}") from exc


def _check_lines(checks) -> list[str]:
    lines = []
    for c in checks:
        at = "" if c.where is None else f"  at {c.where.real:.4g}{c.where.imag:+.4g}i"
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name:34s} lhs={c.lhs:.12g}  rhs={c.rhs:.12g}  slack={c.slack:.3e}{at}")
    return lines


def cmd_analyze(args) -> int:
    f = _read_map(args.map)
    rep = analyze_quiet(
        f,
        radius=args.radius,
        samples=args.samples,
        extrapolate=args.extrapolate,
        tol=args.tolerance,
        sweep=not args.no_sweep,
    )
    if args.json:
        _emit(_dump(rep.to_dict()), args.out)
    else:
        head = [
            f"L         {rep.L:.15g}",
            f"A         {rep.A:.15g}",
            f"d         {rep.d:.15g}",
            f"dirichlet {rep.dirichlet:.15g}",
            f"Kstar     {rep.Kstar:.15g}",
        ]
        body = _check_lines(rep.checks)
        if rep.tangent_checks:
            body += ["tangent:"] + _check_lines(rep.tangent_checks)
        if rep.alternative_checks:
            body += ["alternative readings (informational):"] + _check_lines(rep.alternative_checks)
        if rep.flags:
            body.append("flags: " + ", ".join(rep.flags))
        _emit("\n".join(head + body), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_extremal(args) -> int:
    kind, N = args.kind, args.terms
    if kind == "strip":
        f = geometry.as_vector_map(extremal.strip_conformal(args.z0, args.b, N))
    elif kind == "ud":
        f = extremal.u_d_map(args.d, N)
    elif kind == "uhat":
        f = extremal.u_hat_map(N)
    elif kind == "fnu":
        f = extremal.f_nu(extremal.NuSpec(args.omega), N)
    elif kind == "fh":
        f = extremal.f_H(extremal.HSpec(args.H, args.a), N)
    elif kind == "circle":
        if args.avec is None or args.bvec is None:
            raise UsageError("circle needs --avec and --bvec")
        f = extremal.circle_map(args.avec, args.bvec)
    else:
        f = extremal.duren_example(N)
    _emit(json.dumps(map_to_dict(f)), args.out)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = fuzz.FuzzConfig(
        seed=args.seed,
        count=args.count,
        degree=args.degree,
        target=args.target,
        radius=args.radius,
        tolerance=args.tolerance,
        conformal=args.conformal,
        sweep=not args.no_sweep,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", geometry.DegenerateJacobian)
        rep = fuzz.run_fuzz(cfg)
    if args.json:
        _emit(_dump(rep.to_dict()), args.out)
    else:
        w = rep.worst
        lines = [
            f"cases run     {rep.cases_run}",
            f"cases passed  {rep.cases_passed}",
            f"worst check   {w['check_name']}  slack={w['slack']:.3e}  map_seed={w['map_seed']}",
        ]
        for fl in rep.failures[:20]:
            lines.append(f"FAIL  {fl['name']}  slack={fl['slack']}  map_seed={fl['map_seed']}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if rep.cases_passed == rep.cases_run else EXIT_FAIL


def cmd_hyperbolic(args) -> int:
    d = hyperbolic.strip_distance(args.u1, args.u2)
    q = hyperbolic.strip_distance_quadrature(args.u1, args.u2)
    out = {"u1": args.u1, "u2": args.u2, "distance": d, "quadrature": q, "difference": abs(d - q)}
    if args.json:
        _emit(_dump(out), args.out)
    else:
        _emit("\n".join(f"{k:11s} {v:.17g}" for k, v in out.items()), args.out)
    return EXIT_OK


def cmd_envelope_csv(args) -> int:
    fuzz.emit_envelope_csv(args.a, args.steps, sys.stdout if not args.out or args.out == "-" else args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hdl", description="Sharp Schwarz, length, area and diameter checks for harmonic maps of the disk.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, json_flag=True):
        if json_flag:
            sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", help="write output to this file instead of stdout")

    b = sub.add_parser("bounds", help="envelopes and gradient bounds for h(0) = a")
    b.add_argument("--a", type=float, required=True)
    b.add_argument("--r", type=float, default=0.5, help="radius for the envelopes and interior bounds")
    common(b)
    b.set_defaults(func=cmd_bounds)

    a = sub.add_parser("analyze", help="run every applicable check on a map JSON file")
    a.add_argument("map", help="map JSON file, or - for stdin")
    a.add_argument("--radius", type=float, default=geometry.BOUNDARY_RADIUS)
    a.add_argument("--samples", type=int, default=None)
    a.add_argument("--tolerance", type=float, default=TOLERANCE)
    a.add_argument("--extrapolate", action="store_true", help="Richardson-extrapolate L and d to the unit circle")
    a.add_argument("--no-sweep", action="store_true", help="skip monotonicity and sub-mean-value checks")
    common(a)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("extremal", help="write an extremal map as JSON")
    e.add_argument("kind", choices=["strip", "ud", "uhat", "fnu", "fh", "circle", "duren"])
    e.add_argument("--terms", type=int, default=256, help="series truncation degree")
    e.add_argument("--z0", type=_complex, default=0j)
    e.add_argument("--b", type=float, default=0.0)
    e.add_argument("--d", type=float, default=math.pi)
    e.add_argument("--omega", type=_coeff_list, default=ComplexSeries([0, 0, 0.5]))
    e.add_argument("--H", type=_coeff_list, default=ComplexSeries([0, 0, 0.25]))
    e.add_argument("--a", type=_complex, default=1.0 + 0j)
    e.add_argument("--avec", type=_vector)
    e.add_argument("--bvec", type=_vector)
    common(e, json_flag=False)
    e.set_defaults(func=cmd_extremal)

    f = sub.add_parser("fuzz", help="seeded random maps through every check")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--degree", type=int, default=16)
    f.add_argument("--target", choices=fuzz.TARGETS, default="planar")
    f.add_argument("--radius", type=float, default=geometry.BOUNDARY_RADIUS)
    f.add_argument("--tolerance", type=float, default=TOLERANCE)
    f.add_argument("--conformal", action="store_true", help="vector3: force conformality at 0")
    f.add_argument("--no-sweep", action="store_true")
    common(f)
    f.set_defaults(func=cmd_fuzz)

    h = sub.add_parser("hyperbolic", help="strip distance between two real points")
    h.add_argument("--u1", type=float, required=True)
    h.add_argument("--u2", type=float, required=True)
    common(h)
    h.set_defaults(func=cmd_hyperbolic)

    c = sub.add_parser("envelope-csv", help="CSV of r, x_minus, x_plus, x_plus_deriv")
    c.add_argument("--a", type=float, required=True)
    c.add_argument("--steps", type=int, default=101)
    common(c, json_flag=False)
    c.set_defaults(func=cmd_envelope_csv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HDLError, UsageError, OSError, ValueError) as exc:
        sys.stderr.write(f"hdl: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
