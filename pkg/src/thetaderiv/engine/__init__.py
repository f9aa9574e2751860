"""Numerical evaluation of theta functions with characteristics.

The series is truncated to ``|n| <= N`` with ``N`` the smallest half-width for
which a geometric majorant of the omitted tail falls below ``abs_tol``.  The
summation itself runs in :mod:`._backend` (compiled when available).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ..characteristics import Characteristic
from ._backend import BACKEND, max_term, theta_sum

__all__ = [
    "BACKEND",
    "EngineError",
    "SeriesParams",
    "TauPoint",
    "jacobi_rhs",
    "series_half_width",
    "series_scale",
    "theta",
    "theta_d1",
    "theta_d2",
    "theta_zero_location",
]

Real = Union[Fraction, float, int]
CharLike = Union[Characteristic, Sequence[Real]]
TauLike = Union["TauPoint", complex, float]


class EngineError(ValueError):
    """Bad evaluation point or a series that would need too many terms."""


@dataclass(frozen=True)
class TauPoint:
    value: complex

    def __post_init__(self) -> None:
        v = complex(self.value)
        if not v.imag > 0:
            raise EngineError(f"tau must lie in the upper half-plane, got {v}")
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text: str) -> TauPoint:
        """Parse ``"a+bi"`` / ``"bi"`` / ``"a-bj"`` forms."""
        s = text.strip().replace(" ", "").replace("i", "j")
        try:
            return cls(complex(s))
        except ValueError as exc:
            raise EngineError(f"cannot parse tau {text!r}") from exc


@dataclass(frozen=True)
class SeriesParams:
    abs_tol: float = 1e-18
    max_half_width: int = 10_000
    min_imag_tau: float = 0.05


DEFAULT_PARAMS = SeriesParams()


def _tau(tau: TauLike, params: SeriesParams) -> complex:
    t = tau.value if isinstance(tau, TauPoint) else TauPoint(tau).value
    if t.imag < params.min_imag_tau:
        raise EngineError(
            f"Im tau = {t.imag} below {params.min_imag_tau}; series would need too many terms"
        )
    return t


def _entries(c: CharLike) -> tuple[float, float]:
    """Fractional part of the top entry (the series is invariant under
    integer shifts of it) and the bottom entry as given."""
    if isinstance(c, Characteristic):
        ep, e = c.ep, c.e
    else:
        ep, e = c
    ep0 = ep - math.floor(ep)
    return float(ep0), float(e)


def series_half_width(ep0: float, z: complex, tau: complex, order: int,
                      params: SeriesParams = DEFAULT_PARAMS) -> int:
    """Smallest ``N`` whose tail majorant is below ``params.abs_tol``.

    Omitted terms have ``|u| >= N`` with ``u = n + ep0``; each side is bounded
    by ``f(N) / (1 - q)`` where ``f(u) = exp(-pi y u^2 + 2 pi |s| u) (2 pi u)^k``
    and ``q`` is the largest ratio ``f(u+1)/f(u)`` for ``u >= N``.
    """
    y, s = tau.imag, abs(z.imag)
    log_tol = math.log(params.abs_tol)
    n = max(1, math.ceil(s / y) + 1)
    while n <= params.max_half_width:
        log_q = -math.pi * y * (2 * n + 1) + 2 * math.pi * s + order * math.log1p(1 / n)
        if log_q < 0:
            log_f = -math.pi * y * n * n + 2 * math.pi * s * n + order * math.log(2 * math.pi * n)
            if math.log(2) + log_f - math.log1p(-math.exp(log_q)) < log_tol:
                return n
        n += 1
    raise EngineError(f"truncation needs more than {params.max_half_width} terms")


def _evaluate(c: CharLike, z: complex, tau: TauLike, order: int,
              params: SeriesParams, half_width: int | None = None) -> complex:
    t = _tau(tau, params)
    z = complex(z)
    ep0, e = _entries(c)
    n = half_width if half_width is not None else series_half_width(ep0, z, t, order, params)
    return theta_sum(ep0, e, z, t, n, order)


def theta(c: CharLike, z: complex, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS,
          half_width: int | None = None) -> complex:
    """``theta[c](z, tau)``; ``half_width`` overrides the automatic ``N``."""
    return _evaluate(c, z, tau, 0, params, half_width)


def theta_d1(c: CharLike, z: complex, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS,
             half_width: int | None = None) -> complex:
    return _evaluate(c, z, tau, 1, params, half_width)


def theta_d2(c: CharLike, z: complex, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS,
             half_width: int | None = None) -> complex:
    return _evaluate(c, z, tau, 2, params, half_width)


def series_scale(c: CharLike, z: complex, tau: TauLike,
                 params: SeriesParams = DEFAULT_PARAMS) -> float:
    """Largest modulus of a single series term; the natural scale for
    judging whether a computed value is zero."""
    t = _tau(tau, params)
    z = complex(z)
    ep0, e = _entries(c)
    return max_term(ep0, e, z, t, series_half_width(ep0, z, t, 0, params))


def theta_zero_location(c: Characteristic, tau: TauLike) -> complex:
    """The zero of ``theta[c](., tau)`` in the fundamental parallelogram."""
    t = tau.value if isinstance(tau, TauPoint) else complex(tau)
    return t * float(Fraction(1, 2) - c.ep) + float(Fraction(1, 2) - c.e)


_HALF = Fraction(1, 2)


def jacobi_rhs(tau: TauLike, params: SeriesParams = DEFAULT_PARAMS) -> complex:
    """``-pi theta[0;0] theta[1/2;0] theta[0;1/2]`` at ``z = 0``."""
    return (
        -math.pi
        * theta((0, 0), 0, tau, params)
        * theta((_HALF, 0), 0, tau, params)
        * theta((0, _HALF), 0, tau, params)
    )
