"""Pure-Python series kernel; used when the compiled extension is absent."""

from __future__ import annotations

import cmath
import math

TWO_PI = 2.0 * math.pi


def theta_sum(ep0: float, e: float, z: complex, tau: complex, n_max: int, order: int) -> complex:
    """Sum ``(2 pi i u)^order exp(pi i u^2 tau + 2 pi i u (z + e))`` over
    ``u = n + ep0`` for ``|n| <= n_max``, in ascending ``|n|`` order."""
    w = z + e
    re_parts = []
    im_parts = []
    for k in range(n_max + 1):
        for n in ((k,) if k == 0 else (k, -k)):
            u = n + ep0
            term = cmath.exp(1j * math.pi * u * u * tau + 1j * TWO_PI * u * w)
            if order:
                term *= (1j * TWO_PI * u) ** order
            re_parts.append(term.real)
            im_parts.append(term.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def max_term(ep0: float, e: float, z: complex, tau: complex, n_max: int) -> float:
    y, s = tau.imag, z.imag
    best = 0.0
    for n in range(-n_max, n_max + 1):
        u = n + ep0
        best = max(best, math.exp(-math.pi * y * u * u - TWO_PI * u * s))
    return best
