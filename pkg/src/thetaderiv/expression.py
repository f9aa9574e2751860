"""Symbolic theta-constant expressions.

A :class:`ThetaMonomial` is

    scalar * exp(2 pi i r) * pi^a * theta'[1/2;1/2]^d * prod theta[c_k]^(n_k)

with exact ``scalar`` and ``r``.  A :class:`ThetaExpression` is a sum of such
monomials equal to ``theta'[target](0, tau)``.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .characteristics import (
    HALF,
    Characteristic,
    Phase,
    ReducedCharacteristic,
    is_singular,
    reduce,
    representative,
)
from .engine import DEFAULT_PARAMS, SeriesParams, TauLike, theta, theta_d1

SCHEMA_VERSION = "v1"

Factors = tuple[tuple[Characteristic, int], ...]

JACOBI_TRIPLE: Factors = (
    (Characteristic(0, 0), 1),
    (Characteristic(0, HALF), 1),
    (Characteristic(HALF, 0), 1),
)


class InhomogeneousExpression(ValueError):
    pass


def _merge_factors(items: Iterable[tuple[Characteristic, int]]) -> Factors:
    acc: dict[Characteristic, int] = defaultdict(int)
    for c, k in items:
        acc[c] += k
    return tuple(sorted((c, k) for c, k in acc.items() if k != 0))


@dataclass(frozen=True)
class ThetaMonomial:
    scalar: Fraction = Fraction(1)
    phase: Phase = field(default_factory=Phase)
    pi_power: int = 0
    dtheta_half_power: int = 0
    factors: Factors = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "factors", _merge_factors(self.factors))

    @property
    def weight(self) -> int:
        return sum(k for _, k in self.factors) + 3 * self.dtheta_half_power

    @property
    def is_zero(self) -> bool:
        return self.scalar == 0

    def key(self) -> tuple:
        return (self.factors, self.dtheta_half_power, self.pi_power, self.phase.r)

    def __mul__(self, other: ThetaMonomial) -> ThetaMonomial:
        return ThetaMonomial(
            self.scalar * other.scalar,
            self.phase * other.phase,
            self.pi_power + other.pi_power,
            self.dtheta_half_power + other.dtheta_half_power,
            self.factors + other.factors,
        )

    def __neg__(self) -> ThetaMonomial:
        return replace(self, scalar=-self.scalar)

    def inverse(self) -> ThetaMonomial:
        if self.scalar == 0 or self.dtheta_half_power:
            raise ZeroDivisionError("cannot invert this monomial")
        return ThetaMonomial(
            1 / self.scalar,
            self.phase.inverse(),
            -self.pi_power,
            0,
            tuple((c, -k) for c, k in self.factors),
        )

    def scaled(self, scalar: Fraction | int = 1, phase: Phase | None = None) -> ThetaMonomial:
        return replace(
            self,
            scalar=self.scalar * scalar,
            phase=self.phase * phase if phase is not None else self.phase,
        )

    def canonicalized(self, mirror: bool = False) -> ThetaMonomial | None:
        """Reduce every factor to its canonical representative.

        Returns ``None`` when a factor is the vanishing constant
        ``theta[1/2;1/2]`` raised to a positive power.  Negative powers of
        it are a division by zero.
        """
        reducer: Callable[[Characteristic], ReducedCharacteristic] = (
            representative if mirror else reduce
        )
        phase = self.phase
        items = []
        for c, k in self.factors:
            red = reducer(c)
            if is_singular(red.canonical):
                if k > 0:
                    return None
                raise ZeroDivisionError(f"division by theta{c.bracket()} = 0")
            phase = phase * red.phase ** k
            items.append((red.canonical, k))
        scalar = self.scalar
        # phase in [0, 1/2) with the sign moved to the scalar, so that terms
        # differing by -1 merge
        if phase.r >= HALF:
            phase = Phase(phase.r - HALF)
            scalar = -scalar
        return ThetaMonomial(scalar, phase, self.pi_power, self.dtheta_half_power, tuple(items))

    def evaluate(self, values: Mapping[Characteristic, complex], dtheta_half: complex) -> complex:
        out = complex(self.scalar) * self.phase.to_complex() * math.pi ** self.pi_power
        if self.dtheta_half_power:
            out *= dtheta_half ** self.dtheta_half_power
        for c, k in self.factors:
            out *= values[c] ** k
        return out


@dataclass(frozen=True)
class ThetaExpression:
    """``theta'[target](0, tau) = sum(monomials)``."""

    target: Characteristic
    monomials: tuple[ThetaMonomial, ...] = ()
    jacobi_applied: bool = False

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: ThetaExpression) -> ThetaExpression:
        return replace(self, monomials=self.monomials + other.monomials,
                       jacobi_applied=self.jacobi_applied and other.jacobi_applied)

    def times(self, m: ThetaMonomial) -> ThetaExpression:
        return replace(self, monomials=tuple(x * m for x in self.monomials))

    def with_target(self, target: Characteristic) -> ThetaExpression:
        return replace(self, target=target)

    def characteristics(self) -> set[Characteristic]:
        return {c for m in self.monomials for c, _ in m.factors}

    def evaluate(self, tau: TauLike, params: SeriesParams = DEFAULT_PARAMS) -> complex:
        values = {c: theta(c, 0, tau, params) for c in self.characteristics()}
        needs_dh = any(m.dtheta_half_power for m in self.monomials)
        dh = theta_d1((HALF, HALF), 0, tau, params) if needs_dh else 0j
        return sum((m.evaluate(values, dh) for m in self.monomials), 0j)

    def __str__(self) -> str:
        return render_text(self)


def normalize(e: ThetaExpression, mirror: bool = False) -> ThetaExpression:
    """Canonical form: reduced factors, merged like terms, sorted terms.

    With ``mirror=True`` each factor is mapped to a fixed representative of
    ``{c, -c}`` mod 1, which identifies expressions written with either
    reduction convention.
    """
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    proto: dict[tuple, ThetaMonomial] = {}
    for m in e.monomials:
        if m.is_zero:
            continue
        cm = m.canonicalized(mirror)
        if cm is None:
            continue
        k = cm.key()
        acc[k] += cm.scalar
        proto.setdefault(k, cm)
    monomials = tuple(
        replace(proto[k], scalar=acc[k]) for k in sorted(acc) if acc[k] != 0
    )
    return replace(e, monomials=monomials)


def apply_jacobi(e: ThetaExpression) -> ThetaExpression:
    """Replace ``theta'[1/2;1/2]`` by ``-pi theta[0;0] theta[0;1/2] theta[1/2;0]``."""
    out = []
    for m in e.monomials:
        f = m.dtheta_half_power
        if f == 0:
            out.append(m)
            continue
        out.append(
            ThetaMonomial(
                m.scalar * (-1) ** f,
                m.phase,
                m.pi_power + f,
                0,
                m.factors + tuple((c, k * f) for c, k in JACOBI_TRIPLE),
            )
        )
    return replace(e, monomials=tuple(out), jacobi_applied=True)


def homogeneity_degree(e: ThetaExpression) -> int:
    weights = {m.weight for m in e.monomials}
    if not weights:
        return 3
    if len(weights) > 1:
        raise InhomogeneousExpression(f"monomial weights differ: {sorted(weights)}")
    return weights.pop()


def terms_equal(a: ThetaExpression, b: ThetaExpression) -> bool:
    """Same target and identical normalized monomials (mirror convention)."""
    na, nb = normalize(a, mirror=True), normalize(b, mirror=True)
    return na.target == nb.target and na.monomials == nb.monomials


# -- rendering ---------------------------------------------------------------


def _coef_text(m: ThetaMonomial) -> str:
    parts = [str(m.scalar)]
    if not m.phase.is_one:
        parts.append(f"e^(2pi i*{m.phase.r})")
    if m.pi_power:
        parts.append("pi" if m.pi_power == 1 else f"pi^{m.pi_power}")
    return "*".join(parts)


def render_text(e: ThetaExpression) -> str:
    lhs = f"theta'{e.target.bracket()}"
    if e.is_zero:
        return f"{lhs} = 0"
    terms = []
    for m in e.monomials:
        items = [_coef_text(m)]
        if m.dtheta_half_power:
            p = m.dtheta_half_power
            items.append("theta'[1/2;1/2]" + (f"^{p}" if p != 1 else ""))
        for c, k in m.factors:
            items.append(f"theta{c.bracket()}" + (f"^{k}" if k != 1 else ""))
        terms.append(" ".join(items))
    return f"{lhs} = " + "\n    + ".join(terms)


def _latex_frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}{abs(x.numerator)}/{x.denominator}"


def _latex_char(c: Characteristic) -> str:
    return r"\big[{}^{%s}_{%s}\big]" % (_latex_frac(c.ep), _latex_frac(c.e))


def render_latex(e: ThetaExpression) -> str:
    lhs = r"\theta'" + _latex_char(e.target)
    if e.is_zero:
        return lhs + " = 0"
    chunks = []
    for i, m in enumerate(e.monomials):
        s = m.scalar
        sign = "-" if s < 0 else ("+" if i else "")
        a = abs(s)
        coef = "" if a == 1 else (str(a) if a.denominator == 1 else r"\frac{%d}{%d}" % (a.numerator, a.denominator))
        if m.pi_power:
            coef += r"\pi" if m.pi_power == 1 else r"\pi^{%d}" % m.pi_power
        if not m.phase.is_one:
            coef += r"\mathrm{e}^{%s\pi \imath}" % _latex_frac(2 * m.phase.r)
        body = []
        if m.dtheta_half_power:
            p = m.dtheta_half_power
            body.append(r"\theta'" + ("" if p == 1 else "^{%d}" % p) + _latex_char(Characteristic(HALF, HALF)))
        for c, k in m.factors:
            body.append(r"\theta" + ("" if k == 1 else "^{%d}" % k) + _latex_char(c))
        chunks.append(f"{sign} {coef} " + " ".join(body))
    return lhs + " = " + " ".join(x.strip() for x in chunks)


# -- JSON --------------------------------------------------------------------


def _char_json(c: Characteristic) -> dict:
    return {"ep": str(c.ep), "e": str(c.e)}


def to_dict(e: ThetaExpression) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "target": _char_json(e.target),
        "jacobi_applied": e.jacobi_applied,
        "terms": [
            {
                "scalar": str(m.scalar),
                "phase_r": str(m.phase.r),
                "pi_power": m.pi_power,
                "dtheta_half_power": m.dtheta_half_power,
                "factors": [dict(_char_json(c), exp=k) for c, k in m.factors],
            }
            for m in e.monomials
        ],
    }


def from_dict(d: Mapping) -> ThetaExpression:
    version = d.get("schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported expression schema {version!r}")
    target = Characteristic(d["target"]["ep"], d["target"]["e"])
    monomials = tuple(
        ThetaMonomial(
            Fraction(t["scalar"]),
            Phase(Fraction(t["phase_r"])),
            int(t["pi_power"]),
            int(t["dtheta_half_power"]),
            tuple((Characteristic(f["ep"], f["e"]), int(f["exp"])) for f in t["factors"]),
        )
        for t in d["terms"]
    )
    return ThetaExpression(target, monomials, bool(d["jacobi_applied"]))


def dumps(e: ThetaExpression, **kw) -> str:
    return json.dumps(to_dict(e), **kw)


def loads(text: str) -> ThetaExpression:
    return from_dict(json.loads(text))
