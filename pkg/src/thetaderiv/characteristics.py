"""Exact rational characteristics, root-of-unity phases and canonical reduction.

A characteristic ``[ep; e]`` indexes the theta function

    theta[ep; e](z, tau) = sum_n exp(pi i (n+ep)^2 tau + 2 pi i (n+ep)(z+e)).

Shifting either entry by an integer only multiplies the theta constant by a
root of unity, so every rational characteristic has a representative in
``[0, 1)^2``.  The helpers here track that root of unity exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, ``"a/b"`` strings and Fractions to a Fraction.

    Floats are refused so that no rounding sneaks into exact code paths.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True, order=True)
class Phase:
    """The root of unity ``exp(2 pi i r)`` stored as ``r`` mod 1."""

    r: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", frac_part(as_fraction(self.r)))

    def __mul__(self, other: Phase) -> Phase:
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.r + other.r)

    def __pow__(self, k: int) -> Phase:
        return Phase(self.r * k)

    def inverse(self) -> Phase:
        return Phase(-self.r)

    @property
    def is_one(self) -> bool:
        return self.r == 0

    def to_complex(self) -> complex:
        # exact values for the common quarter turns avoid 1e-17 noise
        quarter = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j,
                   Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
        if self.r in quarter:
            return quarter[self.r]
        return cmath.exp(2j * math.pi * float(self.r))

    def __str__(self) -> str:
        if self.r == 0:
            return "1"
        return f"e^(2pi i*{self.r})"


@dataclass(frozen=True, order=True)
class Characteristic:
    """A pair ``[ep; e]``: ``ep`` is the top entry, ``e`` the bottom one."""

    ep: Fraction
    e: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ep", as_fraction(self.ep))
        object.__setattr__(self, "e", as_fraction(self.e))
        # hashing two Fractions is slow and these are dict keys everywhere
        object.__setattr__(self, "_hash", hash((self.ep, self.e)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def parse(cls, text: str) -> Characteristic:
        """Parse ``"a/b,c/d"`` (top entry first)."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'ep,e', got {text!r}")
        return cls(as_fraction(parts[0]), as_fraction(parts[1]))

    def __str__(self) -> str:
        return f"{self.ep},{self.e}"

    def bracket(self) -> str:
        return f"[{self.ep};{self.e}]"

    def __neg__(self) -> Characteristic:
        return Characteristic(-self.ep, -self.e)

    def scale(self, k: int | Fraction) -> Characteristic:
        return Characteristic(self.ep * k, self.e * k)

    def mod1(self) -> Characteristic:
        return Characteristic(frac_part(self.ep), frac_part(self.e))

    @property
    def is_canonical(self) -> bool:
        return 0 <= self.ep < 1 and 0 <= self.e < 1

    @property
    def is_half_integral(self) -> bool:
        """Both entries in ``{0, 1/2}`` mod 1, i.e. fixed by tripling."""
        return (2 * self.ep).denominator == 1 and (2 * self.e).denominator == 1


@dataclass(frozen=True)
class ReducedCharacteristic:
    """``theta[orig] = phase * theta[canonical]`` and
    ``theta'[orig] = sign * phase * theta'[canonical]``."""

    canonical: Characteristic
    phase: Phase
    sign: int = 1

    @property
    def derivative_factor(self) -> complex:
        return self.sign * self.phase.to_complex()


SINGULAR = Characteristic(HALF, HALF)


def reduce(c: Characteristic) -> ReducedCharacteristic:
    """Subtract integer parts: ``[ep0 + n'; e0 + n] -> [ep0; e0]`` with phase
    ``exp(2 pi i n ep0)``."""
    ep0, e0 = frac_part(c.ep), frac_part(c.e)
    n = math.floor(c.e)
    return ReducedCharacteristic(Characteristic(ep0, e0), Phase(n * ep0), 1)


def reduce_mirror(c: Characteristic) -> ReducedCharacteristic:
    """Write ``c = [-d' + n'; -d + n]`` with ``d`` in ``[0,1)^2``.

    Then ``theta[c] = exp(-2 pi i n d') theta[d]`` and the derivative picks up
    an extra sign -1 (the z-parity flip).
    """
    d = (-c).mod1()
    n = c.e + d.e
    assert n.denominator == 1
    return ReducedCharacteristic(d, Phase(-int(n) * d.ep), -1)


def _within_half(c: Characteristic) -> bool:
    return c.ep <= HALF and c.e <= HALF


def half_range(c: Characteristic) -> ReducedCharacteristic:
    plus = reduce(c)
    if _within_half(plus.canonical):
        return plus
    mirror = reduce_mirror(c)
    if _within_half(mirror.canonical):
        return mirror
    return plus


def representative(c: Characteristic) -> ReducedCharacteristic:
    """Reduction to a fixed representative of the class ``{c, -c}`` mod 1.

    Unlike :func:`half_range` the chosen canonical characteristic depends only
    on the class, so two expressions written with different conventions
    normalize to the same factors.  Only valid for theta *constants*.
    """
    plus = reduce(c)
    mirror = reduce_mirror(c)
    pc, mc = plus.canonical, mirror.canonical
    if pc == mc or _within_half(pc):
        return plus
    if _within_half(mc):
        return mirror
    return plus if pc < mc else mirror


def is_singular(c: Characteristic) -> bool:
    return c.mod1() == SINGULAR


def known_zero_derivative(c: Characteristic) -> bool:
    """``theta'[c](0) = 0``: the even half-integral characteristics."""
    return c.is_half_integral and not is_singular(c)
