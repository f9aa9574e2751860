"""Numerical certification of identities and derived expressions.

Oracles here are kept apart from the code they certify: the finite
difference derivative only calls :func:`theta`, and the residual of the
tripling identity is computed from the engine alone, never from the solver.
"""

from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .characteristics import (
    HALF,
    Characteristic,
    is_singular,
    reduce,
    reduce_mirror,
)
from .engine import (
    DEFAULT_PARAMS,
    CharLike,
    SeriesParams,
    TauLike,
    TauPoint,
    jacobi_rhs,
    series_half_width,
    series_scale,
    theta,
    theta_d1,
    theta_d2,
    theta_zero_location,
)
from .expression import ThetaExpression, terms_equal

DEFAULT_TAUS: tuple[complex, ...] = (1j, 2j, 0.3 + 1.7j, -0.4 + 0.9j, 0.1 + 0.6j)
FLOOR = 1e-30
TRIVIAL_ABS = 1e-12

TOL_JACOBI = 1e-12
TOL_FUNDAMENTAL = 1e-10
TOL_EXPRESSION = 1e-9
TOL_GOLDEN_FD = 1e-8
TOL_QUOTED = 1e-9
TOL_QUASI = 1e-11
TOL_PARITY = 1e-12
TOL_ROUNDTRIP = 1e-12
TOL_SHIFT = 1e-10
TOL_ZERO = 1e-10
TOL_LINEAR = 1e-12


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    characteristic: str
    tau: complex
    lhs: complex
    rhs: complex
    residual: float
    passed: bool
    tolerance: float
    note: str = ""

    def to_json(self) -> str:
        d = asdict(self)
        for key in ("tau", "lhs", "rhs"):
            v = complex(d[key])
            d[key] = [v.real, v.imag]
        return json.dumps(d, sort_keys=True)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        note = f"  ({self.note})" if self.note else ""
        return (
            f"{flag}  {self.identity:<22} {self.characteristic:<16} "
            f"tau={_fmt_tau(self.tau):<14} residual={self.residual:.2e} tol={self.tolerance:.0e}{note}"
        )


def _fmt_tau(t: complex) -> str:
    return f"{t.real:+.3g}{t.imag:+.3g}i"


def _char_str(c: CharLike) -> str:
    if isinstance(c, Characteristic):
        return c.bracket()
    return "[" + ";".join(str(x) for x in c) + "]"


def _tau_value(tau: TauLike) -> complex:
    return tau.value if isinstance(tau, TauPoint) else complex(tau)


def relative_report(identity: str, c: CharLike, tau: TauLike, lhs: complex, rhs: complex,
                    tol: float, note: str = "") -> ResidualReport:
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), FLOOR)
    return ResidualReport(identity, _char_str(c), _tau_value(tau), lhs, rhs,
                          residual, residual <= tol, tol, note)


def trivial_report(identity: str, c: CharLike, tau: TauLike, lhs: complex, rhs: complex,
                   tol: float = TRIVIAL_ABS, note: str = "degenerate-trivial") -> ResidualReport:
    """Both sides should vanish: judged absolutely."""
    residual = max(abs(lhs), abs(rhs))
    return ResidualReport(identity, _char_str(c), _tau_value(tau), lhs, rhs,
                          residual, residual <= tol, tol, note)


# -- oracles -------------------------------------------------------------------


def fd_derivative(c: CharLike, tau: TauLike, h: float = 1e-3,
                  params: SeriesParams = DEFAULT_PARAMS) -> complex:
    """Central difference with one Richardson step; uses ``theta`` only."""
    if not 1e-6 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-6, 1e-2]")

    def central(step: float) -> complex:
        return (theta(c, step, tau, params) - theta(c, -step, tau, params)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


def _half_integral(c: CharLike) -> bool:
    ep, e = (c.ep, c.e) if isinstance(c, Characteristic) else c
    return float(2 * ep).is_integer() and float(2 * e).is_integer()


def fundamental_sides(c: CharLike, tau: TauLike,
                      params: SeriesParams = DEFAULT_PARAMS) -> tuple[complex, complex]:
    ep, e = (c.ep, c.e) if isinstance(c, Characteristic) else c
    c3 = (3 * ep, 3 * e)
    shifted = (HALF - 2 * ep, HALF - 2 * e)
    t = theta(c, 0, tau, params)
    lhs = t * t * (3 * theta(c3, 0, tau, params) * theta_d1(c, 0, tau, params)
                   - theta_d1(c3, 0, tau, params) * t)
    rhs = (cmath.exp(6j * math.pi * float(ep)) * theta_d1((HALF, HALF), 0, tau, params)
           * theta(shifted, 0, tau, params) ** 3)
    return lhs, rhs


def check_fundamental(c: CharLike, tau: TauLike, tol: float = TOL_FUNDAMENTAL,
                      params: SeriesParams = DEFAULT_PARAMS) -> ResidualReport:
    lhs, rhs = fundamental_sides(c, tau, params)
    if _half_integral(c):
        return trivial_report("fundamental", c, tau, lhs, rhs)
    return relative_report("fundamental", c, tau, lhs, rhs, tol)


def check_jacobi(tau: TauLike, tol: float = TOL_JACOBI,
                 params: SeriesParams = DEFAULT_PARAMS) -> ResidualReport:
    lhs = theta_d1((HALF, HALF), 0, tau, params)
    return relative_report("jacobi", (HALF, HALF), tau, lhs, jacobi_rhs(tau, params), tol)


def check_expression(e: ThetaExpression, tau: TauLike, tol: float = TOL_EXPRESSION,
                     params: SeriesParams = DEFAULT_PARAMS) -> ResidualReport:
    lhs = theta_d1(e.target, 0, tau, params)
    rhs = e.evaluate(tau, params)
    if e.is_zero:
        return trivial_report("expression", e.target, tau, lhs, rhs, note="zero expression")
    return relative_report("expression", e.target, tau, lhs, rhs, tol)


def check_expression_fd(e: ThetaExpression, tau: TauLike, tol: float = TOL_GOLDEN_FD,
                        params: SeriesParams = DEFAULT_PARAMS) -> ResidualReport:
    lhs = fd_derivative(e.target, tau, params=params)
    return relative_report("expression-vs-fd", e.target, tau, lhs, e.evaluate(tau, params), tol)


def cross_check_quoted_identities(tau: TauLike, tol: float = TOL_QUOTED,
                                  params: SeriesParams = DEFAULT_PARAMS) -> list[ResidualReport]:
    from .reference import QUOTED_HALF_SIXTH

    def th(ep, e):
        return theta((Fraction(ep), Fraction(e)), 0, tau, params)

    s = Fraction(1, 6)
    lhs = 6 * theta_d1((HALF, s), 0, tau, params) * th(s, s) * th(s, HALF) * th(s, 5 * s)
    rhs = theta_d1((HALF, HALF), 0, tau, params) * (
        th(s, HALF) ** 3
        + cmath.exp(-1j * math.pi / 3) * th(s, 5 * s) ** 3
        + cmath.exp(1j * math.pi / 3) * th(s, s) ** 3
    )
    reports = [relative_report("quoted:six-product", (HALF, s), tau, lhs, rhs, tol)]
    fd = fd_derivative((HALF, s), tau, params=params)
    for name, expr in QUOTED_HALF_SIXTH.items():
        reports.append(relative_report(f"quoted:{name}", (HALF, s), tau, fd, expr.evaluate(tau, params), tol))
    return reports


# -- randomized relation suite ---------------------------------------------------


def _rand_rational(rng: random.Random, max_den: int = 12, span: int = 2) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * q, span * q), q)


def _rand_char(rng: random.Random, max_den: int = 12) -> Characteristic:
    return Characteristic(_rand_rational(rng, max_den), _rand_rational(rng, max_den))


def _rand_tau(rng: random.Random) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0))


def _rand_z(rng: random.Random) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))


def _e(x: complex) -> complex:
    return cmath.exp(x)


def _quasi_period(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    m, n = rng.randint(-2, 2), rng.randint(-2, 2)
    lhs = theta(c, z + tau * m + n, tau, params)
    ep, e = float(c.ep), float(c.e)
    rhs = _e(-1j * math.pi * m * m * tau - 2j * math.pi * (m * (z + e) - n * ep)) * theta(c, z, tau, params)
    return relative_report("quasi-period", c, tau, lhs, rhs, TOL_QUASI, f"m={m} n={n}")


def _parity(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    return relative_report("parity", c, tau, theta(-c, -z, tau, params),
                           theta(c, z, tau, params), TOL_PARITY)


def _integer_shift(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    n2, n = rng.randint(-3, 3), rng.randint(-3, 3)
    lhs = theta((c.ep + n2, c.e + n), z, tau, params)
    rhs = _e(2j * math.pi * n * float(c.ep)) * theta(c, z, tau, params)
    return relative_report("integer-shift", c, tau, lhs, rhs, TOL_ROUNDTRIP, f"n'={n2} n={n}")


def _nonsingular_char(rng) -> Characteristic:
    while True:
        c = _rand_char(rng)
        if not is_singular(c):
            return c


def _reduction(rng, params):
    c, tau = _nonsingular_char(rng), _rand_tau(rng)
    red = reduce(c)
    return relative_report("reduction", c, tau, theta(c, 0, tau, params),
                           red.phase.to_complex() * theta(red.canonical, 0, tau, params), TOL_ROUNDTRIP)


def _mirror_reduction(rng, params):
    c, tau = _nonsingular_char(rng), _rand_tau(rng)
    red = reduce_mirror(c)
    return relative_report("mirror-reduction", c, tau, theta(c, 0, tau, params),
                           red.phase.to_complex() * theta(red.canonical, 0, tau, params), TOL_ROUNDTRIP)


def _derivative_reduction(rng, params):
    c, tau = _rand_char(rng), _rand_tau(rng)
    red = reduce(c) if rng.random() < 0.5 else reduce_mirror(c)
    lhs = theta_d1(c, 0, tau, params)
    rhs = red.derivative_factor * theta_d1(red.canonical, 0, tau, params)
    if c.is_half_integral and not is_singular(c):
        return trivial_report("derivative-reduction", c, tau, lhs, rhs, note="even: derivative vanishes")
    return relative_report("derivative-reduction", c, tau, lhs, rhs, TOL_ROUNDTRIP, f"sign={red.sign}")


def _negated_shift(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    n, n2 = rng.randint(-2, 2), rng.randint(-2, 2)
    lhs = theta((-c.ep + n2, -c.e + n), z, tau, params)
    rhs = _e(-2j * math.pi * n * float(c.ep)) * theta(c, -z, tau, params)
    return relative_report("negated-shift", c, tau, lhs, rhs, TOL_ROUNDTRIP)


def _shift(rng):
    return Fraction(rng.randint(-12, 12), rng.randint(1, 12)), Fraction(rng.randint(-12, 12), rng.randint(1, 12))


def _shift_law(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    s2, s = _shift(rng)
    shifted = (c.ep + s2, c.e + s)
    pref = _e(-1j * math.pi * tau * float(s2) ** 2 - 2j * math.pi * float(s2) * (z + float(s) + float(c.e)))
    lhs = theta(c, z + tau * float(s2) + float(s), tau, params)
    rhs = pref * theta(shifted, z, tau, params)
    return relative_report("shift", c, tau, lhs, rhs, TOL_SHIFT, f"s'={s2} s={s}")


def _shift_derivative(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    s2, s = _shift(rng)
    w = z + tau * float(s2) + float(s)
    sh = (c.ep + s2, c.e + s)
    pref = _e(-1j * math.pi * tau * float(s2) ** 2 - 2j * math.pi * float(s2) * (z + float(s) + float(c.e)))
    a = 2j * math.pi * float(s2)
    if rng.random() < 0.5:
        lhs = theta_d1(c, w, tau, params)
        rhs = pref * (theta_d1(sh, z, tau, params) - a * theta(sh, z, tau, params))
        name = "shift-derivative:first"
    else:
        lhs = theta_d2(c, w, tau, params)
        rhs = pref * (theta_d2(sh, z, tau, params) - 2 * a * theta_d1(sh, z, tau, params)
                      + a * a * theta(sh, z, tau, params))
        name = "shift-derivative:second"
    return relative_report(name, c, tau, lhs, rhs, TOL_SHIFT, f"s'={s2} s={s}")


def _zero(rng, params):
    c, tau = _rand_char(rng), _rand_tau(rng)
    z0 = theta_zero_location(c, tau)
    value = theta(c, z0, tau, params)
    scale = series_scale(c, z0, tau, params)
    residual = abs(value) / scale
    return ResidualReport("zero-location", _char_str(c), tau, value, 0j, residual,
                          residual <= TOL_ZERO, TOL_ZERO, "relative to largest series term")


def _doubling(rng, params):
    c, tau, z = _rand_char(rng), _rand_tau(rng), _rand_z(rng)
    order = rng.randint(0, 2)
    fn = (theta, theta_d1, theta_d2)[order]
    ep0 = float(c.ep - math.floor(c.ep))
    n = series_half_width(ep0, z, tau, order, params)
    v1 = fn(c, z, tau, params, half_width=n)
    v2 = fn(c, z, tau, params, half_width=2 * n)
    # the truncation bound, plus the last-bit rounding of a correctly summed result
    tol = params.abs_tol + 4 * math.ulp(max(abs(v1.real), abs(v1.imag), 1e-300))
    diff = abs(v1 - v2)
    return ResidualReport("truncation-doubling", _char_str(c), tau, v1, v2, diff, diff <= tol, tol,
                          f"order={order} N={n}")


RELATIONS = {
    "quasi-period": _quasi_period,
    "parity": _parity,
    "integer-shift": _integer_shift,
    "reduction": _reduction,
    "mirror-reduction": _mirror_reduction,
    "derivative-reduction": _derivative_reduction,
    "shift": _shift_law,
    "negated-shift": _negated_shift,
    "shift-derivative": _shift_derivative,
    "zero": _zero,
    "doubling": _doubling,
}


def relation_suite(samples: int = 100, seed: int = 42, params: SeriesParams = DEFAULT_PARAMS,
                   families: Iterable[str] | None = None) -> list[ResidualReport]:
    """``samples`` randomized cases of each relation family, fixed by ``seed``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    names = list(families) if families is not None else list(RELATIONS)
    out = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        out.extend(RELATIONS[name](rng, params) for _ in range(samples))
    return out


def fundamental_suite(count: int = 200, seed: int = 42, taus_per_char: int = 3,
                      max_den: int = 30, params: SeriesParams = DEFAULT_PARAMS) -> list[ResidualReport]:
    """The tripling identity at ``count`` distinct random non-singular rational
    characteristics, each at ``taus_per_char`` random points."""
    rng = random.Random(f"{seed}:fundamental")
    out = []
    seen: set[Characteristic] = set()
    for _ in range(count):
        c = _rand_char(rng, max_den)
        while is_singular(c) or c in seen:
            c = _rand_char(rng, max_den)
        seen.add(c)
        for _ in range(taus_per_char):
            out.append(check_fundamental(c, _rand_tau(rng), params=params))
    return out


# -- the cyclic linear system ---------------------------------------------------------


def random_cores(count: int = 50, seed: int = 42, max_period: int = 12,
                 max_den: int = 40) -> list:
    """Distinct periodic cores (denominators prime to 3), periods up to ``max_period``."""
    from .orbits import char_chain
    from .solver import build_system

    rng = random.Random(f"{seed}:cores")
    dens = [d for d in range(1, max_den + 1) if d % 3]
    seen: set = set()
    out = []
    while len(out) < count:
        c = Characteristic(Fraction(rng.randrange(max_den), rng.choice(dens)),
                           Fraction(rng.randrange(max_den), rng.choice(dens))).mod1()
        chain = char_chain(c)
        core = frozenset(chain.core)
        if chain.period > max_period or core in seen or any(is_singular(x) for x in core):
            continue
        seen.add(core)
        out.append(build_system(chain, max_period))
    return out


def check_determinant(system, tau: TauLike, tol: float = TOL_LINEAR,
                      params: SeriesParams = DEFAULT_PARAMS) -> ResidualReport:
    """``det A`` from LU factorisation against ``(3^t - 1) prod a_k``."""
    lhs = complex(np.linalg.det(system.matrix(tau, params)))
    rhs = system.det_factor * complex(np.prod(system.constants(tau, params)))
    return relative_report("determinant", system.chars[0], tau, lhs, rhs, tol, f"period {system.period}")


def check_closed_form(system, tau: TauLike, tol: float = TOL_LINEAR,
                      params: SeriesParams = DEFAULT_PARAMS, solution=None) -> ResidualReport:
    """Closed-form solution against Gaussian elimination, max-norm relative.

    ``solution`` may carry a precomputed ``solve_closed_form(system)``.
    """
    from .solver import solve_closed_form

    if solution is None:
        solution = solve_closed_form(system)
    direct = np.linalg.solve(system.matrix(tau, params), system.rhs(tau, params))
    closed = np.array([e.evaluate(tau, params) for e in solution])
    k = int(np.argmax(np.abs(closed - direct)))
    scale = max(float(np.max(np.abs(direct))), float(np.max(np.abs(closed))), FLOOR)
    residual = float(np.max(np.abs(closed - direct))) / scale
    return ResidualReport("closed-form", _char_str(system.chars[0]), _tau_value(tau),
                          complex(closed[k]), complex(direct[k]), residual, residual <= tol, tol,
                          f"period {system.period}")


def linear_suite(count: int = 50, seed: int = 42, taus: Sequence[complex] = DEFAULT_TAUS[:1],
                 params: SeriesParams = DEFAULT_PARAMS) -> list[ResidualReport]:
    out = []
    from .solver import solve_closed_form

    for system in random_cores(count, seed):
        solution = solve_closed_form(system)
        for tau in taus:
            out.append(check_determinant(system, tau, params=params))
            out.append(check_closed_form(system, tau, params=params, solution=solution))
    return out


# -- golden regression ------------------------------------------------------------------


def golden_suite(taus: Sequence[complex] = DEFAULT_TAUS[:3], params: SeriesParams = DEFAULT_PARAMS,
                 max_period: int = 64) -> list[ResidualReport]:
    from .reference import DEGENERATE, GOLDEN
    from .solver import DegenerateIdentity, solve_chain

    reports = []
    for case in GOLDEN:
        target = case.expression.target
        derived = solve_chain(target, jacobi=True, max_period=max_period)
        same = terms_equal(derived, case.expression)
        reports.append(ResidualReport(
            f"golden-terms:{case.group}", target.bracket(), 0j, 0j, 0j,
            0.0 if same else 1.0, same, 0.0, "term-for-term after normalization",
        ))
        for tau in taus:
            r = check_expression_fd(derived, tau, params=params)
            reports.append(ResidualReport(f"golden-fd:{case.group}", r.characteristic, r.tau, r.lhs,
                                          r.rhs, r.residual, r.passed, r.tolerance))
    for c in DEGENERATE:
        try:
            solve_chain(c, max_period=max_period)
            ok, note = False, "unexpectedly solved"
        except DegenerateIdentity:
            ok, note = True, "raises DegenerateIdentity"
        reports.append(ResidualReport("golden-degenerate", c.bracket(), 0j, 0j, 0j,
                                      0.0 if ok else 1.0, ok, 0.0, note))
    return reports


def summarize(reports: Sequence[ResidualReport]) -> tuple[int, int]:
    failed = sum(not r.passed for r in reports)
    return len(reports) - failed, failed


def sort_reports(reports: Iterable[ResidualReport]) -> list[ResidualReport]:
    return sorted(reports, key=lambda r: (r.identity, r.characteristic, r.tau.real, r.tau.imag, r.note))
