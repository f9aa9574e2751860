from fractions import Fraction as F

import pytest

from thetaderiv.characteristics import Characteristic, Phase
from thetaderiv.expression import (
    InhomogeneousExpression,
    ThetaExpression,
    ThetaMonomial,
    apply_jacobi,
    dumps,
    from_dict,
    homogeneity_degree,
    loads,
    normalize,
    render_latex,
    render_text,
    terms_equal,
)
from thetaderiv.engine import theta_d1

C = Characteristic.parse
T = C("1/5,2/5")


def mono(scalar, factors, r=0, dh=0, pi=0):
    return ThetaMonomial(F(scalar), Phase(F(r)), pi, dh, tuple((C(s), k) for s, k in factors))


def test_factors_merge_on_construction():
    m = mono(1, [("1/5,2/5", 2), ("1/5,2/5", -2), ("0,0", 1)])
    assert m.factors == ((C("0,0"), 1),)


def test_normalize_merges_terms_differing_by_a_sign():
    # e^(2 pi i 1/2) = -1, so these cancel
    e = ThetaExpression(T, (mono(1, [("1/4,0", 3)]), mono(1, [("1/4,0", 3)], r="1/2")))
    assert normalize(e).is_zero


def test_normalize_reduces_factors_with_phase():
    e = normalize(ThetaExpression(T, (mono(1, [("1/4,1", 1)], dh=1),)))
    (m,) = e.monomials
    assert m.factors == ((C("1/4,0"), 1),)
    assert m.phase == Phase(F(1, 4))


def test_normalize_drops_singular_factor_terms():
    e = ThetaExpression(T, (mono(1, [("1/2,1/2", 1), ("0,0", 2)]), mono(2, [("1/4,0", 3)])))
    assert len(normalize(e).monomials) == 1


def test_negative_power_of_vanishing_constant():
    with pytest.raises(ZeroDivisionError):
        normalize(ThetaExpression(T, (mono(1, [("1/2,-1/2", -1), ("0,0", 4)]),)))


def test_normalize_is_idempotent():
    e = ThetaExpression(T, (mono("3/4", [("6/5,7/5", 2), ("-1/3,0", 1)], r="1/3", dh=0),
                            mono("-1/2", [("0,0", 3)], r="5/6")))
    once = normalize(e)
    assert normalize(once) == once


def test_apply_jacobi():
    e = apply_jacobi(ThetaExpression(T, (mono(2, [("1/4,0", -0)], dh=1),)))
    (m,) = e.monomials
    assert m.scalar == -2 and m.pi_power == 1 and m.dtheta_half_power == 0
    assert {c for c, _ in m.factors} == {C("0,0"), C("0,1/2"), C("1/2,0")}
    assert e.jacobi_applied


def test_jacobi_preserves_value():
    e = ThetaExpression(T, (mono(1, [("1/5,2/5", -2), ("1/10,7/10", 3)], dh=1),))
    a, b = e.evaluate(1j), apply_jacobi(e).evaluate(1j)
    assert abs(a - b) < 1e-13 * abs(a)


class TestHomogeneity:
    def test_weight(self):
        assert mono(1, [("0,0", 1)], dh=1).weight == 4
        assert homogeneity_degree(ThetaExpression(T, (mono(1, [("0,0", 3)]),))) == 3

    def test_empty_expression(self):
        assert homogeneity_degree(ThetaExpression(T)) == 3

    def test_mixed_weights_raise(self):
        e = ThetaExpression(T, (mono(1, [("0,0", 3)]), mono(1, [("0,0", 2)])))
        with pytest.raises(InhomogeneousExpression):
            homogeneity_degree(e)


def test_terms_equal_across_conventions():
    # theta[4/5;3/5] = e^(2 pi i 4/5) theta[1/5;2/5] (mirror), so these coincide
    a = ThetaExpression(T, (mono(1, [("4/5,3/5", 3)], dh=1),))
    b = ThetaExpression(T, (mono(1, [("1/5,2/5", 3)], r="12/5", dh=1),))
    assert terms_equal(a, b)
    assert not terms_equal(a, ThetaExpression(T, (mono(1, [("1/5,2/5", 3)], dh=1),)))


def test_evaluate_matches_engine_for_trivial_identity():
    e = ThetaExpression(C("1/2,1/2"), (mono(1, [], dh=1),))
    assert e.evaluate(2j) == theta_d1((F(1, 2), F(1, 2)), 0, 2j)


def test_json_round_trip():
    e = ThetaExpression(T, (mono("-27/80", [("1/10,7/10", 3), ("1/5,2/5", -2)], r="1/5", dh=1, pi=2),),
                        jacobi_applied=True)
    assert loads(dumps(e)) == e


def test_json_schema_version_is_checked():
    d = {"schema": "v9", "target": {"ep": "0", "e": "0"}, "jacobi_applied": False, "terms": []}
    with pytest.raises(ValueError):
        from_dict(d)


def test_render():
    e = ThetaExpression(T, (mono("1/3", [("1/4,0", -2)], r="1/4", pi=1, dh=1),))
    assert render_text(e) == "theta'[1/5;2/5] = 1/3*e^(2pi i*1/4)*pi theta'[1/2;1/2] theta[1/4;0]^-2"
    assert render_latex(e).startswith(r"\theta'\big[{}^{1/5}_{2/5}\big] = \frac{1}{3}\pi")
    assert render_text(ThetaExpression(T)) == "theta'[1/5;2/5] = 0"
