"""Command-line front end: ordering, identity verification, and solving.

Exit codes: 0 success, 2 usage/parse error, 3 domain/ordering error,
4 numeric non-convergence.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .bessel import BesselDomainError, bessel_j
from .exponents import ExponentExpr
from .operators import OperatorExpr
from .ordering import (Convention, OrderingError, build_two_sided,
                       detect_ambiguity, hermitize, normal_order, prove_equal)
from .parser import ParseError, parse_operator, print_operator
from .quadrature import QuadratureError, QuadratureSpec
from .scalars import ScalarError
from .verification import (MomentumEigenfunction, determine_bessel_order,
                           fourier_reconstruct_detailed,
                           verify_integral_identity)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4

_FORMATS = ("human", "json", "csv")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _float_text(v: float) -> str:
    return repr(float(v))


# ---------------------------------------------------------------------------
# normal-order
# ---------------------------------------------------------------------------

def _cmd_normal_order(args) -> int:
    try:
        expr = parse_operator(args.expr)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.hermitize_scale:
        expr = expr.scaled(Fraction(1, 2))
    convention = (Convention.COORDINATE if args.rep == "coordinate"
                  else Convention.MOMENTUM)
    try:
        nf = normal_order(expr, convention)
    except OrderingError as err:
        print(f"ordering error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    text = print_operator(nf.as_operator_expr())
    if args.format == "json":
        _emit_json({"representation": args.rep, "normal_form": text,
                    "terms": len(nf.words)})
    elif args.format == "csv":
        sys.stdout.write("representation,normal_form\n")
        sys.stdout.write(f"{args.rep},\"{text}\"\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _alpha():
    return ExponentExpr.param("alpha")


def _verify_eq3():
    """Hermitized f^a p f^(1-a) is f p - (i hbar / 2) f' for every carrier."""
    cases = [
        ("x", "x^alpha * p * x^(1-alpha)",
         "x * p - 1/2 * i * hbar"),
        ("x^2", "x^(2*alpha) * p * x^(2-2*alpha)",
         "x^2 * p - i * hbar * x"),
        ("sqrt(x)", "x^(alpha/2) * p * x^((1-alpha)/2)",
         "x^(1/2) * p - 1/4 * i * hbar * x^(-1/2)"),
        ("f", "f(x)^alpha * p * f(x)^(1-alpha)",
         "f(x) * p - 1/2 * i * hbar * f'(x)"),
    ]
    for label, text, expected in cases:
        nf = normal_order(hermitize(parse_operator(text)),
                          Convention.COORDINATE)
        ok = nf == normal_order(parse_operator(expected),
                                Convention.COORDINATE)
        free = detect_ambiguity(nf, ["alpha"])
        yield (f"eq3[{label}]", ok and not free.ambiguous,
               print_operator(nf.as_operator_expr()))


def _verify_eq4():
    nf = normal_order(hermitize(parse_operator(
        "p^(2*alpha) * x * p^(2-2*alpha)")), Convention.MOMENTUM)
    expected = normal_order(parse_operator("p^2 * x + i * hbar * p"),
                            Convention.MOMENTUM)
    ambiguous = detect_ambiguity(nf, ["alpha"]).ambiguous
    yield ("eq4", nf == expected and not ambiguous,
           print_operator(nf.as_operator_expr()))


def _verify_eq11(spec):
    for a in (0.5, 1.0, 2.0):
        for b in (0.5, 1.0, 2.0):
            report = verify_integral_identity(a, b, spec)
            yield (f"eq11[a={a},b={b}]", report.passed,
                   f"max residual {report.max_residual:.3e}")


def _verify_eq14():
    alpha, gamma = _alpha(), ExponentExpr.param("gamma")
    beta = ExponentExpr.number(1) - alpha - gamma
    nf = normal_order(build_two_sided(alpha, beta, gamma),
                      Convention.COORDINATE)
    expected = normal_order(parse_operator(
        "x * p^2 - i * hbar * p + alpha * gamma * hbar^2 * x^-1"),
        Convention.COORDINATE)
    report = detect_ambiguity(nf, ["alpha", "gamma"])
    surviving = [print_operator(OperatorExpr([w]))
                 for w in report.surviving_terms]
    ok = (nf == expected and report.ambiguous
          and surviving == ["alpha * gamma * hbar^2 * x^-1"])
    yield ("eq14", ok, print_operator(nf.as_operator_expr()))
    gamma_zero = normal_order(
        build_two_sided(alpha, ExponentExpr.number(1) - alpha, 0),
        Convention.COORDINATE)
    yield ("eq14[gamma=0]",
           not detect_ambiguity(gamma_zero, ["alpha"]).ambiguous,
           print_operator(gamma_zero.as_operator_expr()))


def _verify_eq18():
    pairs = [
        ("eq18a", "x^alpha * p * x^(1-alpha) * p",
         "x^(1/2) * p * x^(1/2) * p + i * hbar * (alpha - 1/2) * p"),
        ("eq18b", "p * x^(1-alpha) * p * x^alpha",
         "p * x^(1/2) * p * x^(1/2) - i * hbar * (alpha - 1/2) * p"),
    ]
    for name, lhs, rhs in pairs:
        ok = prove_equal(parse_operator(lhs), parse_operator(rhs),
                         Convention.COORDINATE)
        yield (name, ok, "symbolic proof")


def _verify_eq19():
    o_alpha = parse_operator(
        "1/2 * (x^alpha * p * x^(1-alpha) * p + p * x^(1-alpha) * p * x^alpha)")
    o_weyl = parse_operator(
        "1/2 * (x^(1/2) * p * x^(1/2) * p + p * x^(1/2) * p * x^(1/2))")
    ok = prove_equal(o_alpha, o_weyl, Convention.COORDINATE)
    yield ("eq19", ok, "symbolic proof, alpha fully symbolic")


_IDENTITY_SUITES = {
    "eq3": lambda spec: _verify_eq3(),
    "eq4": lambda spec: _verify_eq4(),
    "eq11": _verify_eq11,
    "eq14": lambda spec: _verify_eq14(),
    "eq18": lambda spec: _verify_eq18(),
    "eq19": lambda spec: _verify_eq19(),
}


def _cmd_verify(args) -> int:
    if args.identity != "all" and args.identity not in _IDENTITY_SUITES:
        print(f"unknown identity {args.identity!r}", file=sys.stderr)
        return EXIT_USAGE
    names = (list(_IDENTITY_SUITES) if args.identity == "all"
             else [args.identity])
    spec = QuadratureSpec.from_env()
    results = []
    for name in names:
        try:
            results.extend(_IDENTITY_SUITES[name](spec))
        except QuadratureError as err:
            print(f"quadrature error in {name}: {err}", file=sys.stderr)
            return EXIT_NUMERIC
    all_pass = all(ok for _, ok, _ in results)
    if args.format == "json":
        _emit_json([{"id": name, "pass": ok, "detail": detail}
                    for name, ok, detail in results])
    elif args.format == "csv":
        sys.stdout.write("id,pass,detail\n")
        for name, ok, detail in results:
            sys.stdout.write(f"{name},{str(ok).lower()},\"{detail}\"\n")
    else:
        for name, ok, detail in results:
            sys.stdout.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
    return EXIT_OK if all_pass else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid spec must be start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + step * k for k in range(count)]


def _cmd_solve(args) -> int:
    if args.E <= 0:
        print("E must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.hbar <= 0:
        print("hbar must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        grid = _parse_grid(args.x_grid)
    except ValueError as err:
        print(f"bad grid: {err}", file=sys.stderr)
        return EXIT_USAGE
    spec = QuadratureSpec.from_env()
    psi = MomentumEigenfunction(E=args.E, hbar=args.hbar)
    rows = []
    any_failed = False
    for x in grid:
        target = bessel_j(0.0, 2.0 * math.sqrt(args.E * abs(x)) / args.hbar)
        try:
            rec = fourier_reconstruct_detailed(psi, x, spec)
            value, failed = rec.value, False
        except QuadratureError as err:
            value = complex(err.value) if err.value is not None else 0j
            failed = True
            any_failed = True
        ratio = value / target.value if target.value != 0 else complex("nan")
        rows.append((x, value, target.value, ratio, failed))

    def render(stream):
        if args.format == "json":
            stream.write(json.dumps([{
                "x": x, "psi_re": v.real, "psi_im": v.imag, "j0": j0,
                "ratio_re": r.real, "ratio_im": r.imag, "failed": failed,
            } for x, v, j0, r, failed in rows]) + "\n")
        else:
            stream.write("x,psi_re,psi_im,j0,ratio_re,ratio_im,failed\n")
            for x, v, j0, r, failed in rows:
                stream.write(",".join([
                    _float_text(x), _float_text(v.real), _float_text(v.imag),
                    _float_text(j0), _float_text(r.real), _float_text(r.imag),
                    str(failed).lower()]) + "\n")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            render(fh)
    else:
        render(sys.stdout)
    return EXIT_NUMERIC if any_failed else EXIT_OK


# ---------------------------------------------------------------------------
# order-scan
# ---------------------------------------------------------------------------

def _cmd_order_scan(args) -> int:
    values = args.alpha_gamma
    if any(v < 0 or v > 1 for v in values):
        print("alpha*gamma values must lie in [0, 1]", file=sys.stderr)
        return EXIT_USAGE
    from .verification import CoordinateEigenfunction, \
        coordinate_ode_residual, _ORDER_SCAN_GRID
    rows = []
    for ag in values:
        fitted = determine_bessel_order(ag, args.E, args.hbar)
        sqrt_index = 2.0 * math.sqrt(ag)
        res_fitted = coordinate_ode_residual(
            CoordinateEigenfunction(args.E, args.hbar, fitted), ag,
            args.E, args.hbar, _ORDER_SCAN_GRID).max_residual
        res_coupling = coordinate_ode_residual(
            CoordinateEigenfunction(args.E, args.hbar, ag), ag,
            args.E, args.hbar, _ORDER_SCAN_GRID).max_residual
        rows.append((ag, fitted, sqrt_index, ag, res_fitted, res_coupling))
    if args.format == "json":
        _emit_json([{
            "alpha_gamma": ag, "fitted_order": fitted,
            "two_sqrt_alpha_gamma": sq, "coupling_index": coupling,
            "fitted_residual": rf, "coupling_index_residual": rc,
        } for ag, fitted, sq, coupling, rf, rc in rows])
    elif args.format == "csv":
        sys.stdout.write("alpha_gamma,fitted_order,two_sqrt_alpha_gamma,"
                         "coupling_index,fitted_residual,"
                         "coupling_index_residual\n")
        for row in rows:
            sys.stdout.write(",".join(_float_text(v) for v in row) + "\n")
    else:
        for ag, fitted, sq, coupling, rf, rc in rows:
            sys.stdout.write(
                f"alpha*gamma={ag:g}: fitted order {fitted:.6f}, "
                f"2*sqrt = {sq:.6f}, coupling-as-index {coupling:g}; "
                f"residual fitted {rf:.2e}, coupling {rc:.2e}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qorder",
        description="Heisenberg-algebra ordering engine and verification tool")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-order", help="normal-order an operator")
    p.add_argument("expr")
    p.add_argument("--rep", choices=("coordinate", "momentum"),
                   default="coordinate")
    p.add_argument("--hermitize-scale", action="store_true",
                   help="multiply the parsed expression by 1/2")
    p.add_argument("--format", choices=_FORMATS, default="human")
    p.set_defaults(func=_cmd_normal_order)

    p = sub.add_parser("verify", help="run named identity suites")
    p.add_argument("--identity", default="all")
    p.add_argument("--format", choices=_FORMATS, default="human")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve",
                       help="reconstruct the coordinate eigenfunction")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--x-grid", default="0:4:17")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("order-scan",
                       help="fit the Bessel order of the coordinate ODE")
    p.add_argument("--alpha-gamma", type=float, nargs="+", required=True)
    p.add_argument("--E", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--format", choices=_FORMATS, default="human")
    p.set_defaults(func=_cmd_order_scan)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScalarError, OrderingError, BesselDomainError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except QuadratureError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
