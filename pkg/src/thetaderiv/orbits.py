"""The tripling map ``x -> 3x mod 1`` on proper rationals and on characteristics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .characteristics import Characteristic, frac_part, reduce

MAX_CHAIN = 10_000


class OrbitKind(str, Enum):
    PERIODIC = "periodic"
    STATIONARY = "stationary-terminated"
    MERGING = "merges-into-periodic"


class EndpointKind(str, Enum):
    PERIODIC_CORE = "periodic-core"
    STATIONARY = "stationary"


STATIONARY_VALUES = (Fraction(0), Fraction(1, 2))


def t_step(x: Fraction) -> Fraction:
    return frac_part(3 * x)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class Orbit:
    """Seed-first forward orbit, stopped just before the first repeat.

    ``tail_length`` counts the elements preceding the eventual cycle, so a
    periodic orbit has ``tail_length == 0``.
    """

    elements: tuple[Fraction, ...]
    kind: OrbitKind
    tail_length: int

    @property
    def cycle(self) -> tuple[Fraction, ...]:
        return self.elements[self.tail_length:]

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(x) for x in self.elements) + "}"

    def to_dict(self) -> dict:
        return {
            "elements": [str(x) for x in self.elements],
            "kind": self.kind.value,
            "tail_length": self.tail_length,
        }


def orbit_of(x: Fraction) -> Orbit:
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"orbit_of expects 0 <= x < 1, got {x}")
    seen: dict[Fraction, int] = {}
    elements: list[Fraction] = []
    while x not in seen:
        if len(elements) >= MAX_CHAIN:
            raise RuntimeError("orbit did not close within the iteration cap")
        seen[x] = len(elements)
        elements.append(x)
        x = t_step(x)
    start = seen[x]
    if start == 0:
        kind = OrbitKind.PERIODIC
    elif elements[-1] in STATIONARY_VALUES:
        kind = OrbitKind.STATIONARY
    else:
        kind = OrbitKind.MERGING
    return Orbit(tuple(elements), kind, start)


def partition(p: int) -> list[Orbit]:
    """Split ``{m/p : 1 <= m < p}`` into tripling orbits (``3 ∤ p``)."""
    if p < 2:
        raise ValueError("partition needs p >= 2")
    if p % 3 == 0:
        raise ValueError(f"{p} is divisible by 3; orbits are not disjoint cycles, use orbit_of")
    covered: set[Fraction] = set()
    out = []
    for m in range(1, p):
        x = Fraction(m, p)
        if x in covered:
            continue
        orb = orbit_of(x)
        covered.update(orb.elements)
        out.append(orb)
    return out


@dataclass(frozen=True)
class CharacteristicChain:
    """``chain[k+1] = T chain[k]``; the last ``period`` entries form the cycle."""

    chain: tuple[Characteristic, ...]
    preperiod: int
    period: int

    @property
    def endpoint_kind(self) -> EndpointKind:
        return EndpointKind.STATIONARY if self.period == 1 else EndpointKind.PERIODIC_CORE

    @property
    def core(self) -> tuple[Characteristic, ...]:
        return self.chain[self.preperiod:]

    @property
    def tail(self) -> tuple[Characteristic, ...]:
        return self.chain[: self.preperiod]

    def to_dict(self) -> dict:
        return {
            "chain": [str(c) for c in self.chain],
            "preperiod": self.preperiod,
            "period": self.period,
            "endpoint_kind": self.endpoint_kind.value,
        }


def t_char(c: Characteristic) -> Characteristic:
    return Characteristic(t_step(frac_part(c.ep)), t_step(frac_part(c.e)))


def char_chain(c: Characteristic) -> CharacteristicChain:
    x = reduce(c).canonical
    seen: dict[Characteristic, int] = {}
    chain: list[Characteristic] = []
    while x not in seen:
        if len(chain) >= MAX_CHAIN:
            raise RuntimeError("characteristic chain did not close within the iteration cap")
        seen[x] = len(chain)
        chain.append(x)
        x = t_char(x)
    start = seen[x]
    return CharacteristicChain(tuple(chain), start, len(chain) - start)


def lcm_period(c: Characteristic) -> int:
    """``lcm`` of the component orbit sizes (both denominators prime to 3)."""
    a, b = reduce(c).canonical.ep, reduce(c).canonical.e
    return math.lcm(len(orbit_of(a).cycle), len(orbit_of(b).cycle))
