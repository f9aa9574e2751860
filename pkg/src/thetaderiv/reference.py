"""Closed forms used as golden regression data.

Each entry is a theta derivative written through theta constants after the
Jacobi substitution, transcribed term by term.  Phases are given as the
multiple ``x`` of ``pi i`` in ``exp(x pi i)``.  Factor strings list
``[ep;e]^k`` items; a missing exponent means 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .characteristics import Characteristic, Phase, as_fraction
from .expression import ThetaExpression, ThetaMonomial

_FACTOR = re.compile(r"\[([^;\]]+);([^\]]+)\](?:\^(-?\d+))?")

JACOBI = "[0;0] [0;1/2] [1/2;0]"


def parse_factors(text: str) -> tuple[tuple[Characteristic, int], ...]:
    out = []
    for ep, e, k in _FACTOR.findall(text):
        out.append((Characteristic(as_fraction(ep), as_fraction(e)), int(k) if k else 1))
    if not out and text.strip():
        raise ValueError(f"no factors in {text!r}")
    return tuple(out)


def term(coef: str, factors: str, pi_i: str = "0", pi_power: int = 1,
         dtheta_half_power: int = 0) -> ThetaMonomial:
    return ThetaMonomial(
        scalar=Fraction(coef),
        phase=Phase(Fraction(pi_i) / 2),
        pi_power=pi_power,
        dtheta_half_power=dtheta_half_power,
        factors=parse_factors(factors),
    )


def expr(target: str, *terms: ThetaMonomial, jacobi: bool = True) -> ThetaExpression:
    return ThetaExpression(Characteristic.parse(target), tuple(terms), jacobi_applied=jacobi)


def _j(coef: str, factors: str, pi_i: str = "0") -> ThetaMonomial:
    """Term carrying the Jacobi triple ``theta[0;0] theta[0;1/2] theta[1/2;0]``."""
    return term(coef, f"{JACOBI} {factors}", pi_i)


@dataclass(frozen=True)
class GoldenCase:
    name: str
    group: str
    expression: ThetaExpression


# -- denominator 3 ---------------------------------------------------------

_P3 = [
    expr("0,1/3", term("-1/3", "[1/2;0] [0;1/2] [1/2;1/6]^3 [0;1/3]^-2")),
    expr("1/3,0", term("1/3", "[1/2;0] [0;1/2] [1/6;1/2]^3 [1/3;0]^-2")),
    expr("1/3,1/3", term("-1/3", "[1/2;0] [0;1/2] [1/6;1/6]^3 [1/3;1/3]^-2")),
    expr("1/3,2/3", term("-1/3", "[1/2;0] [0;1/2] [1/6;5/6]^3 [1/3;2/3]^-2")),
    expr("1/2,1/3", term("-1/3", "[0;0] [0;1/2] [1/2;1/6]^3 [1/2;1/3]^-2")),
    expr("1/3,1/2", term("-1/3", "[0;0] [1/2;0] [1/6;1/2]^3 [1/3;1/2]^-2")),
]

# -- denominator 4 ---------------------------------------------------------

_P4 = [
    expr("0,1/4", term("-1/4", "[1/2;0]^4 [0;0] [0;1/2] [0;1/4]^-3")),
    expr("1/4,0", term("1/4", "[0;1/2]^4 [0;0] [1/2;0] [1/4;0]^-3", pi_i="1/2")),
    expr("1/4,1/4", term("-1/4", "[0;0]^4 [0;1/2] [1/2;0] [1/4;1/4]^-3")),
    expr("1/4,3/4", term("1/4", "[0;0]^4 [0;1/2] [1/2;0] [1/4;3/4]^-3")),
    expr("1/4,1/2", term("-1/4", "[0;1/2]^4 [0;0] [1/2;0] [1/4;1/2]^-3", pi_i="1/2")),
    expr("1/2,1/4", term("-1/4", "[1/2;0]^4 [0;0] [0;1/2] [1/2;1/4]^-3")),
]

# -- denominator 5 ---------------------------------------------------------

_P5 = [
    expr(
        "1/5,2/5",
        _j("-3/10", "[1/10;7/10]^3 [1/5;2/5]^-2 [3/5;1/5]^-1", pi_i="-3/5"),
        _j("-1/10", "[3/10;1/10]^3 [3/5;1/5]^-3"),
    ),
    expr(
        "3/5,1/5",
        _j("-1/10", "[1/10;7/10]^3 [1/5;2/5]^-3", pi_i="2/5"),
        _j("-3/10", "[3/10;1/10]^3 [3/5;1/5]^-2 [1/5;2/5]^-1"),
    ),
]

# -- denominator 6 and 6 combined with 4 -----------------------------------

_P6 = [
    expr("0,1/6", term("-1/3", "[0;0] [1/2;0] [1/2;1/6]^3 [0;1/6]^-2")),
    expr("1/6,0", term("1/3", "[0;0] [0;1/2] [1/6;1/2]^3 [1/6;0]^-2")),
    expr("1/3,1/6", term("-1/3", "[0;0] [1/2;0] [5/6;1/6]^3 [1/3;1/6]^-2")),
    expr("2/3,1/6", term("-1/3", "[0;0] [1/2;0] [1/6;1/6]^3 [2/3;1/6]^-2")),
    expr("1/6,1/3", term("1/3", "[0;0] [0;1/2] [1/6;5/6]^3 [1/6;1/3]^-2")),
    expr("1/6,2/3", term("-1/3", "[0;0] [0;1/2] [1/6;1/6]^3 [1/6;2/3]^-2")),
    expr(
        "1/4,1/6",
        _j("-1/3", "[0;1/6]^3 [1/4;1/6]^-2 [1/4;1/2]^-1"),
        _j("1/12", "[0;1/2]^3 [1/4;1/6] [1/4;1/2]^-4", pi_i="1/2"),
    ),
    expr(
        "3/4,1/6",
        _j("-1/3", "[0;1/6]^3 [3/4;1/6]^-2 [1/4;1/2]^-1", pi_i="1/2"),
        _j("-1/12", "[0;1/2]^3 [3/4;1/6] [1/4;1/2]^-4", pi_i="1/2"),
    ),
    expr(
        "1/6,1/4",
        _j("-1/3", "[1/6;0]^3 [1/6;1/4]^-2 [1/2;1/4]^-1"),
        _j("1/12", "[1/2;0]^3 [1/6;1/4] [1/2;1/4]^-4"),
    ),
    expr(
        "1/6,3/4",
        _j("-1/3", "[1/6;0]^3 [1/6;3/4]^-2 [1/2;1/4]^-1"),
        _j("-1/12", "[1/2;0]^3 [1/6;3/4] [1/2;1/4]^-4"),
    ),
]

# -- denominators 6 and 5 combined -----------------------------------------

_P65 = [
    expr(
        "1/5,1/2",
        _j("3/10", "[1/10;1/2]^3 [1/5;1/2]^-2 [2/5;1/2]^-1", pi_i="6/5"),
        _j("1/10", "[3/10;1/2]^3 [2/5;1/2]^-3"),
    ),
    expr(
        "2/5,1/2",
        _j("1/10", "[1/10;1/2]^3 [1/5;1/2]^-3", pi_i="6/5"),
        _j("-3/10", "[3/10;1/2]^3 [2/5;1/2]^-2 [1/5;1/2]^-1"),
    ),
    expr(
        "1/5,1/6",
        _j("-1/3", "[1/10;1/6]^3 [1/5;1/6]^-2 [2/5;1/2]^-1"),
        _j("-1/30", "[1/10;1/2]^3 [1/5;1/6] [1/5;1/2]^-3 [2/5;1/2]^-1", pi_i="6/5"),
        _j("1/10", "[3/10;1/2]^3 [1/5;1/6] [2/5;1/2]^-3 [1/5;1/2]^-1"),
    ),
    expr(
        "1/2,1/5",
        _j("-3/10", "[1/2;1/10]^3 [1/2;1/5]^-2 [1/2;2/5]^-1"),
        _j("1/10", "[1/2;3/10]^3 [1/2;2/5]^-3"),
    ),
    expr(
        "1/2,2/5",
        _j("-1/10", "[1/2;1/10]^3 [1/2;1/5]^-3"),
        _j("-3/10", "[1/2;3/10]^3 [1/2;2/5]^-2 [1/2;1/5]^-1"),
    ),
    expr(
        "1/6,1/5",
        _j("-1/3", "[1/6;1/10]^3 [1/6;1/5]^-2 [1/2;2/5]^-1"),
        _j("1/30", "[1/2;1/10]^3 [1/6;1/5] [1/2;1/5]^-3 [1/2;2/5]^-1"),
        _j("1/10", "[1/2;3/10]^3 [1/6;1/5] [1/2;2/5]^-3 [1/2;1/5]^-1"),
    ),
]

# -- denominator 13 ---------------------------------------------------------

_P13 = [
    expr(
        "1/13,12/13",
        _j("-9/26", "[9/26;17/26]^3 [3/13;10/13]^-1 [1/13;12/13]^-2", pi_i="-8/13"),
        _j("-3/26", "[1/26;25/26]^3 [1/13;12/13] [9/13;4/13]^-1 [3/13;10/13]^-3", pi_i="2/13"),
        _j("-1/26", "[3/26;23/26]^3 [9/13;4/13]^-3", pi_i="-7/13"),
    ),
]

GOLDEN: tuple[GoldenCase, ...] = tuple(
    GoldenCase(f"{group}:{e.target.bracket()}", group, e)
    for group, exprs in (
        ("p3", _P3), ("p4", _P4), ("p5", _P5), ("p6", _P6), ("p65", _P65), ("p13", _P13),
    )
    for e in exprs
)

# Characteristics whose tripled image is [1/2;1/2]: no expression follows.
DEGENERATE = tuple(Characteristic.parse(s) for s in ("1/6,1/6", "1/6,5/6", "1/2,1/6", "1/6,1/2"))

# Two further closed forms for theta'[1/2;1/6] (not derivable by tripling).
QUOTED_HALF_SIXTH = {
    "two-term": expr(
        "1/2,1/6",
        term("1/3", "[0;0] [0;1/2] [1/2;1/6]^4 [1/2;1/3]^-3"),
        term("-1", "[1/2;0]^2 [0;1/6] [0;1/3] [1/2;1/3]^-1"),
    ),
    "factored": expr(
        "1/2,1/6",
        term("-1/6", "[0;0] [0;1/2] [1/2;1/6]^4 [1/2;1/3]^-3"),
        term("1/2", "[0;0] [0;1/2] [1/2;1/3]"),
    ),
}
