"""thetaderiv: theta derivatives at rational characteristics through theta constants.

Exit codes: 0 ok, 1 verification failure, 2 degenerate identity,
3 bad input, 4 period cap exceeded.  Characteristics are exact rationals
("1/5", "-3", never "0.2"); tau points are "a+bi" with Im > 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from .characteristics import Characteristic, as_fraction, frac_part, is_singular
from .engine import BACKEND, EngineError, TauPoint
from .expression import ThetaExpression, dumps, render_latex, render_text
from .orbits import char_chain, orbit_of, partition
from .solver import DEFAULT_MAX_PERIOD, DegenerateIdentity, PeriodTooLarge, solve_chain
from .verification import (
    DEFAULT_TAUS,
    TOL_EXPRESSION,
    TOL_FUNDAMENTAL,
    ResidualReport,
    check_expression,
    check_fundamental,
    check_jacobi,
    cross_check_quoted_identities,
    fundamental_suite,
    golden_suite,
    linear_suite,
    relation_suite,
    sort_reports,
    summarize,
)

EXIT_OK, EXIT_FAIL, EXIT_DEGENERATE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("THETA_DERIV_SEED", "42")
    try:
        return int(raw)
    except ValueError:
        return 42


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tau", action="append", default=None, metavar="A+Bi",
                   help="evaluation point; repeatable (default: five built-in points)")
    p.add_argument("--tol", type=float, default=None, help="override the residual tolerance")
    p.add_argument("--seed", type=int, default=_default_seed(),
                   help="random seed (default: $THETA_DERIV_SEED or 42)")
    p.add_argument("--jacobi", action="store_true",
                   help="replace theta'[1/2;1/2] by -pi theta[0;0] theta[0;1/2] theta[1/2;0]")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text",
                   help="output format (default: text)")
    p.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD,
                   help=f"refuse orbits longer than this (default: {DEFAULT_MAX_PERIOD}; exit 4)")
    p.add_argument("--verbose", "-v", action="store_true",
                   help="print the effective configuration and per-point reports to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="thetaderiv", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbit", parents=[common], help="tripling orbit of m/p, or all orbits of P(p)")
    p.add_argument("value", help="integer p or fraction m/p")

    p = sub.add_parser("partition", parents=[common], help="split P(p) into orbits (3 must not divide p)")
    p.add_argument("p")

    for name, text in (("chain", "tripling chain of a characteristic"),
                       ("derive", "theta derivative through theta constants"),
                       ("verify", "numerically check the tripling identity and the derived expression")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("ep", help="top entry, e.g. 1/5")
        p.add_argument("e", help="bottom entry, e.g. 2/5")

    p = sub.add_parser("suite", parents=[common], help="golden examples and randomized relation checks")
    p.add_argument("--samples", type=int, default=100, help="cases per relation family")
    return parser


# -- helpers -----------------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadInput(f"not an exact rational: {text!r}") from exc


def _char(args) -> Characteristic:
    return Characteristic(_fraction(args.ep), _fraction(args.e))


def _taus(args) -> list[complex]:
    if not args.tau:
        return list(DEFAULT_TAUS)
    try:
        return [TauPoint.parse(t).value for t in args.tau]
    except EngineError as exc:
        raise BadInput(str(exc)) from exc


def _positive_int(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise BadInput(f"not an integer: {text!r}") from exc
    if p < 1:
        raise BadInput("p must be positive")
    return p


def _emit_reports(reports: Sequence[ResidualReport], fmt: str) -> int:
    reports = sort_reports(reports)
    for r in reports:
        print(r.to_json() if fmt == "json" else r.line())
    passed, failed = summarize(reports)
    if fmt != "json":
        print(f"{passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _print_orbits(orbits, fmt: str, title: str) -> None:
    if fmt == "json":
        print(json.dumps({"input": title, "orbits": [o.to_dict() for o in orbits]}))
        return
    for o in orbits:
        print(", ".join(str(x) for x in o.elements) + f"  [{o.kind.value}, size {len(o)}]")


# -- commands ------------------------------------------------------------------------


def cmd_orbit(args) -> int:
    if "/" in args.value:
        x = frac_part(_fraction(args.value))
        _print_orbits([orbit_of(x)], args.format, args.value)
        return EXIT_OK
    p = _positive_int(args.value)
    if p == 1:
        orbits = [orbit_of(Fraction(0))]
    elif p % 3:
        orbits = partition(p)
    else:
        orbits = [orbit_of(Fraction(m, p)) for m in range(1, p)]
    _print_orbits(orbits, args.format, args.value)
    return EXIT_OK


def cmd_partition(args) -> int:
    p = _positive_int(args.p)
    try:
        orbits = partition(p)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    _print_orbits(orbits, args.format, args.p)
    return EXIT_OK


def cmd_chain(args) -> int:
    ch = char_chain(_char(args))
    if args.format == "json":
        print(json.dumps(ch.to_dict()))
    else:
        print(" -> ".join(c.bracket() for c in ch.chain) + f" -> {ch.core[0].bracket()}")
        print(f"preperiod {ch.preperiod}, period {ch.period}, {ch.endpoint_kind.value}")
    return EXIT_OK


def _render(e: ThetaExpression, fmt: str) -> str:
    if fmt == "json":
        return dumps(e)
    if fmt == "latex":
        return render_latex(e)
    return render_text(e)


def cmd_derive(args) -> int:
    c = _char(args)
    expr = solve_chain(c, jacobi=args.jacobi, max_period=args.max_period)
    tol = args.tol if args.tol is not None else TOL_EXPRESSION
    reports = [check_expression(expr, t, tol) for t in _taus(args)]
    worst = max(r.residual for r in reports)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        out = json.loads(dumps(expr))
        out["certification"] = {"max_residual": worst, "tolerance": tol, "passed": ok}
        print(json.dumps(out))
    else:
        print(_render(expr, args.format))
        print(f"% max residual {worst:.2e} over {len(reports)} tau points (tol {tol:g})"
              if args.format == "latex" else
              f"# max residual {worst:.2e} over {len(reports)} tau points (tol {tol:g})")
    if args.verbose:
        for r in reports:
            print(r.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    c = _char(args)
    tol = args.tol if args.tol is not None else TOL_FUNDAMENTAL
    reports = [check_fundamental(c, t, tol) for t in _taus(args)]
    if is_singular(c):
        reports.append(ResidualReport("expression", c.bracket(), 0j, 0j, 0j, 0.0, True, 0.0,
                                      "theta'[1/2;1/2] is the Jacobi base case"))
    else:
        try:
            expr = solve_chain(c, jacobi=args.jacobi, max_period=args.max_period)
        except DegenerateIdentity as exc:
            reports.append(ResidualReport("expression", c.bracket(), 0j, 0j, 0j, 0.0, True, 0.0,
                                          f"not derivable: {exc}"))
        else:
            reports.extend(check_expression(expr, t) for t in _taus(args))
    return _emit_reports(reports, args.format)


def cmd_suite(args) -> int:
    taus = _taus(args)
    t0 = time.perf_counter()
    reports: list[ResidualReport] = [check_jacobi(t) for t in taus]
    reports += golden_suite(max_period=args.max_period)
    for t in taus:
        reports += cross_check_quoted_identities(t)
    reports += fundamental_suite(200, args.seed)
    reports += linear_suite(50, args.seed)
    reports += relation_suite(args.samples, args.seed)
    code = _emit_reports(reports, args.format)
    if args.verbose:
        print(f"# backend={BACKEND} seed={args.seed} elapsed={time.perf_counter() - t0:.2f}s",
              file=sys.stderr)
    return code


COMMANDS = {
    "orbit": cmd_orbit,
    "partition": cmd_partition,
    "chain": cmd_chain,
    "derive": cmd_derive,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        eff = {k: v for k, v in vars(args).items() if k not in ("ep", "e", "value", "p")}
        print(f"# config {eff} backend={BACKEND}", file=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateIdentity as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except PeriodTooLarge as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
