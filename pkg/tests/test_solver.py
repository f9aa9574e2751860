import numpy as np
import pytest

from thetaderiv.characteristics import Characteristic
from thetaderiv.engine import theta_d1
from thetaderiv.expression import homogeneity_degree, normalize
from thetaderiv.orbits import char_chain
from thetaderiv.reference import DEGENERATE, GOLDEN
from thetaderiv.solver import (
    DegenerateIdentity,
    PeriodTooLarge,
    build_system,
    fundamental_identity,
    solve_chain,
    solve_closed_form,
)
from thetaderiv.verification import fundamental_sides, random_cores

C = Characteristic.parse


@pytest.mark.parametrize("case", GOLDEN, ids=lambda g: g.name)
def test_golden_numeric(case):
    e = solve_chain(case.expression.target, jacobi=True)
    for tau in (1j, 0.3 + 1.7j):
        want = theta_d1(case.expression.target, 0, tau)
        assert abs(e.evaluate(tau) - want) <= 1e-12 * max(abs(want), 1e-300)


@pytest.mark.parametrize("c", DEGENERATE, ids=str)
def test_degenerate(c):
    with pytest.raises(DegenerateIdentity):
        solve_chain(c)


@pytest.mark.parametrize("s", ["0,0", "1/2,0", "0,1/2", "1,3/2"])
def test_even_half_integral_gives_zero(s):
    assert solve_chain(C(s)).is_zero


def test_singular_is_its_own_expression():
    e = solve_chain(C("1/2,1/2"))
    assert len(e.monomials) == 1 and e.monomials[0].dtheta_half_power == 1


def test_period_one_cores_are_half_integral():
    # 3x = x mod 1 forces 2x in Z, so t = 1 only at half-integral characteristics
    for s in ("0,0", "1/2,0", "0,1/2"):
        sys = build_system(char_chain(C(s)))
        assert sys.period == 1 and sys.b == (None,)
        a = sys.constants(1j)[0]
        assert sys.matrix(1j)[0, 0] == pytest.approx(2 * a, rel=1e-15)
        (x,) = solve_closed_form(sys)
        assert x.is_zero


def test_fundamental_identity_shape():
    fi = fundamental_identity(C("1/5,2/5"))
    assert fi.image == C("3/5,1/5")
    assert fi.rhs.dtheta_half_power == 1
    lhs, rhs = fundamental_sides(C("1/5,2/5"), 1j)
    assert abs(lhs - rhs) < 1e-12 * abs(lhs)


def test_period_cap():
    with pytest.raises(PeriodTooLarge):
        solve_chain(C("1/61,0"), max_period=8)
    assert solve_chain(C("1/61,0"), max_period=10).target == C("1/61,0")


def test_phase_of_non_canonical_input():
    c = C("-4/5,7/5")
    e = solve_chain(c)
    want = theta_d1(c, 0, 2j)
    assert abs(e.evaluate(2j) - want) < 1e-12 * abs(want)


@pytest.mark.parametrize("system", random_cores(12, seed=7), ids=lambda s: str(s.chars[0]))
def test_closed_form_against_numpy(system):
    tau = -0.4 + 0.9j
    direct = np.linalg.solve(system.matrix(tau), system.rhs(tau))
    closed = [e.evaluate(tau) for e in solve_closed_form(system)]
    assert np.allclose(closed, direct, rtol=1e-12, atol=0)
    det = np.linalg.det(system.matrix(tau))
    assert abs(det - (3 ** system.period - 1) * np.prod(system.constants(tau))) <= 1e-12 * abs(det)


def test_tail_back_substitution_uses_theta_constants():
    e = solve_chain(C("1/6,1/3"), jacobi=True)
    assert homogeneity_degree(e) == 3
    assert e == normalize(e)
    assert abs(e.evaluate(1j) - theta_d1(C("1/6,1/3"), 0, 1j)) < 1e-12
    assert all(m.dtheta_half_power == 0 for m in e.monomials)
