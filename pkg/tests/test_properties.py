"""Invariants checked over generated inputs."""

import cmath
import math
from fractions import Fraction as F

from hypothesis import assume, given
from hypothesis import strategies as st

from thetaderiv.characteristics import (
    Characteristic,
    Phase,
    is_singular,
    reduce,
    reduce_mirror,
    representative,
)
from thetaderiv.engine import series_scale, theta, theta_d1
from thetaderiv.expression import (
    ThetaExpression,
    ThetaMonomial,
    homogeneity_degree,
    loads,
    dumps,
    normalize,
)
from thetaderiv.orbits import char_chain, euler_phi, orbit_of, t_char, t_step
from thetaderiv.solver import DegenerateIdentity, solve_chain
from thetaderiv.verification import fundamental_sides

rationals = st.builds(F, st.integers(-40, 40), st.integers(1, 12))
proper = st.builds(lambda m, p: F(m % p, p), st.integers(0, 200), st.integers(1, 60))
chars = st.builds(Characteristic, rationals, rationals)
small_chars = st.builds(Characteristic, st.builds(F, st.integers(-12, 12), st.integers(1, 8)),
                        st.builds(F, st.integers(-12, 12), st.integers(1, 8)))
taus = st.sampled_from([1j, 2j, 0.3 + 1.7j, -0.4 + 0.9j, 0.1 + 0.6j])
zs = st.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False)


def near(a, b, atol):
    return abs(a - b) <= atol


def close(a, b, tol):
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


@given(chars, taus)
def test_reduce_preserves_theta(c, tau):
    r = reduce(c)
    assert r.canonical.is_canonical
    atol = 1e-12 * series_scale(c, 0, tau)
    assert near(theta(c, 0, tau), r.phase.to_complex() * theta(r.canonical, 0, tau), atol)


@given(chars, taus)
def test_mirror_flips_derivative(c, tau):
    r = reduce_mirror(c)
    atol = 1e-12 * series_scale(c, 0, tau)
    assert near(theta(c, 0, tau), -r.derivative_factor * theta(r.canonical, 0, tau), atol)
    d, dr = theta_d1(c, 0, tau), theta_d1(r.canonical, 0, tau)
    assert abs(d - r.derivative_factor * dr) <= 1e-11 * max(abs(d), abs(dr), 1.0)


@given(chars)
def test_representative_depends_only_on_class(c):
    assert representative(c).canonical == representative(-c).canonical
    shifted = Characteristic(c.ep + 3, c.e - 2)
    assert representative(c).canonical == representative(shifted).canonical


@given(chars, taus, zs)
def test_quasi_periodicity(c, tau, z):
    ep, e = float(c.ep), float(c.e)
    base = theta(c, z, tau)
    # near a zero a relative residual is meaningless: compare to the largest term
    assert near(theta(c, z + 1, tau), cmath.exp(2j * math.pi * ep) * base, 1e-12 * series_scale(c, z, tau))
    factor = cmath.exp(-1j * math.pi * tau - 2j * math.pi * (z + e))
    assert near(theta(c, z + tau, tau), factor * base, 1e-12 * series_scale(c, z + tau, tau))


@given(proper)
def test_orbit_closes_under_tripling(x):
    o = orbit_of(x)
    assert t_step(o.elements[-1]) in o.cycle
    assert all(t_step(a) == b for a, b in zip(o.elements, o.elements[1:]))
    assert len(set(o.elements)) == len(o)
    if x.denominator % 3:
        assert o.tail_length == 0
        assert euler_phi(x.denominator) % len(o) == 0


@given(chars)
def test_chain_structure(c):
    ch = char_chain(c)
    assert all(t_char(a) == b for a, b in zip(ch.chain, ch.chain[1:]))
    assert t_char(ch.chain[-1]) == ch.core[0]
    canon = reduce(c).canonical
    coprime = canon.ep.denominator % 3 and canon.e.denominator % 3
    assert (ch.preperiod == 0) == bool(coprime)


monomials = st.builds(
    lambda s, r, pw, dh, fs: ThetaMonomial(s, Phase(r), pw, dh, tuple(fs)),
    st.builds(F, st.integers(-9, 9), st.integers(1, 9)),
    st.builds(F, st.integers(0, 11), st.just(12)),
    st.integers(0, 2),
    st.integers(0, 1),
    st.lists(st.tuples(small_chars, st.integers(-3, 3)), max_size=4),
)


@given(st.lists(monomials, max_size=5), small_chars)
def test_json_round_trip(ms, target):
    e = ThetaExpression(target, tuple(ms))
    assert loads(dumps(e)) == e


@given(st.lists(monomials, min_size=1, max_size=4), taus)
def test_normalize_preserves_value_and_is_idempotent(ms, tau):
    assume(not any(is_singular(c) and k < 0 for m in ms for c, k in m.factors))
    e = ThetaExpression(Characteristic(0, 0), tuple(ms))
    n = normalize(e)
    assert normalize(n) == n
    a, b = e.evaluate(tau), n.evaluate(tau)
    scale = sum(abs(ThetaExpression(e.target, (m,)).evaluate(tau)) for m in ms)
    assert abs(a - b) <= 1e-11 * max(scale, 1e-300)


@given(small_chars, taus)
def test_fundamental_identity(c, tau):
    assume(not is_singular(c))
    lhs, rhs = fundamental_sides(c, tau)
    if c.is_half_integral:
        assert abs(lhs) < 1e-12 and abs(rhs) < 1e-12
    else:
        assert close(lhs, rhs, 1e-10)


@given(small_chars)
def test_derived_expressions_are_homogeneous_and_correct(c):
    try:
        e = solve_chain(c, jacobi=True)
    except DegenerateIdentity:
        assert is_singular(t_char(reduce(c).canonical)) or any(
            is_singular(t_char(x)) for x in char_chain(c).tail)
        return
    assert homogeneity_degree(e) == 3
    want = theta_d1(c, 0, 0.3 + 1.7j)
    assert abs(e.evaluate(0.3 + 1.7j) - want) <= 1e-9 * max(abs(want), 1.0)
