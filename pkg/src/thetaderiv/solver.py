"""Theta derivatives through theta constants via the tripling identity.

For any characteristic ``c`` (with ``3c`` its tripled image)

    theta[c]^2 (3 theta[3c] theta'[c] - theta'[3c] theta[c])
        = exp(6 pi i ep) theta'[1/2;1/2] theta[1/2 - 2c]^3.

Writing ``3c = phi * T c`` with ``T c`` canonical, consecutive members of the
tripling chain ``c_k`` are linked by

    3 a_{k+1} x_k - a_k x_{k+1} = b_k,     a_k = theta[c_k], x_k = theta'[c_k],

with ``b_k`` a single monomial.  On a periodic core the cyclic system has the
explicit solution

    x_k = a_k / (3^t - 1) * sum_{j=k}^{k+t-1} 3^{t-1+k-j} b_j / (a_j a_{j+1}),

and the pre-periodic tail is solved backwards from the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characteristics import (
    HALF,
    SINGULAR,
    Characteristic,
    Phase,
    is_singular,
    known_zero_derivative,
    reduce,
)
from .engine import DEFAULT_PARAMS, SeriesParams, TauLike, theta
from .expression import ThetaExpression, ThetaMonomial, apply_jacobi, normalize
from .orbits import CharacteristicChain, char_chain

DEFAULT_MAX_PERIOD = 64


class DegenerateIdentity(ValueError):
    """The coefficient ``3 theta[T c]`` of the wanted derivative vanishes."""


class PeriodTooLarge(ValueError):
    pass


def _const(c: Characteristic, k: int = 1) -> ThetaMonomial:
    return ThetaMonomial(factors=((c, k),))


@dataclass(frozen=True)
class FundamentalIdentity:
    """``coef_self * theta'[c] + coef_image * theta'[image] = rhs``.

    ``image`` is the canonical form of ``3c``; all factors are reduced.
    A ``None`` rhs means the right side vanishes identically.
    """

    c: Characteristic
    image: Characteristic
    coef_self: ThetaMonomial
    coef_image: ThetaMonomial
    rhs: ThetaMonomial | None


def _canon(m: ThetaMonomial) -> ThetaMonomial | None:
    return m.canonicalized()


def fundamental_identity(c: Characteristic) -> FundamentalIdentity:
    red3 = reduce(c.scale(3))
    phi = red3.phase
    image = red3.canonical
    coef_self = _canon(ThetaMonomial(3, phi, factors=((c, 2), (image, 1))))
    coef_image = _canon(ThetaMonomial(-1, phi, factors=((c, 3),)))
    shifted = Characteristic(HALF - 2 * c.ep, HALF - 2 * c.e)
    rhs = _canon(ThetaMonomial(1, Phase(3 * c.ep), dtheta_half_power=1, factors=((shifted, 3),)))
    if coef_self is None:
        # c itself singular: both sides are multiples of theta[c] = 0
        coef_self = ThetaMonomial(0)
    if coef_image is None:
        coef_image = ThetaMonomial(0)
    return FundamentalIdentity(c, image, coef_self, coef_image, rhs)


@dataclass(frozen=True)
class DerivSystem:
    """Cyclic bidiagonal system ``A x = B`` over a periodic core.

    Row ``k`` reads ``3 a_{k+1} x_k - a_k x_{k+1} = b_k`` (indices mod t).
    """

    chars: tuple[Characteristic, ...]
    b: tuple[ThetaMonomial | None, ...]

    @property
    def period(self) -> int:
        return len(self.chars)

    @property
    def det_factor(self) -> int:
        return 3 ** self.period - 1

    def constants(self, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS) -> np.ndarray:
        return np.array([theta(c, 0, tau, params) for c in self.chars])

    def matrix(self, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS) -> np.ndarray:
        t = self.period
        a = self.constants(tau, params)
        A = np.zeros((t, t), dtype=complex)
        for k in range(t):
            A[k, k] += 3 * a[(k + 1) % t]
            A[k, (k + 1) % t] += -a[k]
        return A

    def rhs(self, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS) -> np.ndarray:
        out = []
        for k, bk in enumerate(self.b):
            if bk is None:
                out.append(0j)
            else:
                out.append(ThetaExpression(self.chars[k], (bk,)).evaluate(tau, params))
        return np.array(out)


def _check_period(t: int, max_period: int) -> None:
    if t > max_period:
        raise PeriodTooLarge(f"period {t} exceeds the cap {max_period}")


def _row(c: Characteristic) -> tuple[Characteristic, ThetaMonomial | None]:
    """Equation of ``c`` divided by ``phi``: returns ``(T c, b)``."""
    fi = fundamental_identity(c)
    red3 = reduce(c.scale(3))
    b = None
    if fi.rhs is not None:
        b = fi.rhs.scaled(1, red3.phase.inverse()) * _const(c, -2)
    return fi.image, b


def build_system(chain: CharacteristicChain, max_period: int = DEFAULT_MAX_PERIOD) -> DerivSystem:
    core = chain.core
    _check_period(len(core), max_period)
    if any(is_singular(c) for c in core):
        raise DegenerateIdentity("periodic core contains [1/2;1/2]; the system coefficients vanish")
    bs = []
    for k, c in enumerate(core):
        image, b = _row(c)
        assert image == core[(k + 1) % len(core)]
        bs.append(None if b is None else b.canonicalized())
    return DerivSystem(core, tuple(bs))


def solve_closed_form(system: DerivSystem) -> list[ThetaExpression]:
    t = system.period
    a = system.chars
    out = []
    for k in range(t):
        monomials = []
        for j in range(k, k + t):
            bj = system.b[j % t]
            if bj is None:
                continue
            m = ThetaMonomial(
                Fraction(3 ** (t - 1 + k - j), system.det_factor),
                factors=((a[k], 1), (a[j % t], -1), (a[(j + 1) % t], -1)),
            )
            monomials.append(bj * m)
        out.append(normalize(ThetaExpression(a[k], tuple(monomials))))
    return out


def _isolate(c: Characteristic, next_expr: ThetaExpression) -> ThetaExpression:
    """``theta'[c] = (b + theta[c] theta'[T c]) / (3 theta[T c])``."""
    image, b = _row(c)
    if is_singular(image):
        raise DegenerateIdentity(
            f"tripled characteristic of {c.bracket()} is [1/2;1/2]; its theta constant "
            "vanishes and is the coefficient of the wanted derivative"
        )
    inv = ThetaMonomial(Fraction(1, 3), factors=((image, -1),))
    parts = [] if b is None else [b * inv]
    parts.extend(m * _const(c) * inv for m in next_expr.monomials)
    return normalize(ThetaExpression(c, tuple(parts)))


def _core_solutions(chain: CharacteristicChain, max_period: int) -> dict[Characteristic, ThetaExpression]:
    core = chain.core
    if len(core) == 1 and known_zero_derivative(core[0]):
        return {core[0]: ThetaExpression(core[0])}
    if len(core) == 1 and core[0] == SINGULAR:
        return {SINGULAR: ThetaExpression(SINGULAR, (ThetaMonomial(dtheta_half_power=1),))}
    system = build_system(chain, max_period)
    return {e.target: e for e in solve_closed_form(system)}


def solve_chain(c: Characteristic, jacobi: bool = False,
                max_period: int = DEFAULT_MAX_PERIOD) -> ThetaExpression:
    """Expression for ``theta'[c](0, tau)`` through theta constants."""
    red = reduce(c)
    chain = char_chain(c)
    solved = _core_solutions(chain, max_period)
    if chain.preperiod:
        expr = solved[chain.core[0]]
        for k in range(chain.preperiod - 1, -1, -1):
            expr = _isolate(chain.chain[k], expr)
    else:
        expr = solved[chain.chain[0]]
    # theta'[c] = phase * theta'[canonical] on the plus branch
    expr = ThetaExpression(c, tuple(m.scaled(1, red.phase) for m in expr.monomials))
    if jacobi:
        expr = apply_jacobi(expr)
    # theta constants are even in the characteristic, so c and -c share a factor
    return normalize(expr, mirror=True)
