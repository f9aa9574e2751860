from fractions import Fraction as F

import pytest

from thetaderiv.characteristics import (
    SINGULAR,
    Characteristic,
    Phase,
    as_fraction,
    half_range,
    is_singular,
    known_zero_derivative,
    reduce,
    reduce_mirror,
    representative,
)


def C(ep, e):
    return Characteristic(F(ep), F(e))


class TestAsFraction:
    @pytest.mark.parametrize("x, want", [("1/3", F(1, 3)), (" -7/10 ", F(-7, 10)), (4, F(4)), (F(2, 6), F(1, 3))])
    def test_accepts_exact(self, x, want):
        assert as_fraction(x) == want

    @pytest.mark.parametrize("x", [0.5, True, None, 1 + 0j])
    def test_refuses_inexact_types(self, x):
        with pytest.raises(TypeError):
            as_fraction(x)

    @pytest.mark.parametrize("x", ["0.5", "1e-3", "", "abc"])
    def test_refuses_bad_strings(self, x):
        with pytest.raises(ValueError):
            as_fraction(x)


def test_phase_is_taken_mod_one():
    assert Phase(F(5, 4)) == Phase(F(1, 4)) == Phase(F(-3, 4))
    assert (Phase(F(1, 3)) * Phase(F(2, 3))).is_one
    assert Phase(F(1, 6)) ** 6 == Phase()
    assert Phase(F(1, 4)).to_complex() == 1j
    assert Phase(F(1, 2)).inverse() == Phase(F(1, 2))


def test_parse_and_bracket():
    c = Characteristic.parse("1/5, -2/3")
    assert c == C("1/5", "-2/3")
    assert c.bracket() == "[1/5;-2/3]"
    with pytest.raises(ValueError):
        Characteristic.parse("1/5")


class TestReduce:
    def test_plus_branch(self):
        r = reduce(C("-7/10", "-19/10"))
        assert r.canonical == C("3/10", "1/10")
        assert r.phase == Phase(F(2, 5))
        assert r.sign == 1

    def test_plus_branch_integer_top_shift_has_no_phase(self):
        r = reduce(C("11/5", "2/5"))
        assert r.canonical == C("1/5", "2/5")
        assert r.phase.is_one

    def test_mirror_of_singular(self):
        r = reduce_mirror(C("1/2", "1/2"))
        assert r.canonical == SINGULAR
        assert r.phase == Phase(F(1, 2))
        assert r.sign == -1

    def test_mirror_of_a_fifth(self):
        # [2/5;4/5] is the mirror of [3/5;1/5] shifted by n = 1 in the bottom entry
        r = reduce_mirror(C("2/5", "4/5"))
        assert r.canonical == C("3/5", "1/5")
        assert r.phase == Phase(F(-3, 5))
        assert r.sign == -1

    def test_half_range_prefers_plus_then_mirror(self):
        assert half_range(C("5/4", "1/3")).sign == 1
        assert half_range(C("3/4", "2/3")).canonical == C("1/4", "1/3")
        assert half_range(C("3/4", "2/3")).sign == -1
        # neither branch lands in [0,1/2]^2: falls back to plus
        assert half_range(C("2/5", "4/5")) == reduce(C("2/5", "4/5"))

    def test_representative_is_a_class_function(self):
        a, b = C("1/5", "4/5"), C("4/5", "1/5")
        assert representative(a).canonical == representative(b).canonical


def test_singular_and_zero_derivative():
    assert is_singular(C("3/2", "-1/2"))
    assert not is_singular(C("1/2", "0"))
    assert known_zero_derivative(C("0", "1/2"))
    assert known_zero_derivative(C("1", "1"))
    assert not known_zero_derivative(SINGULAR)
    assert not known_zero_derivative(C("1/4", "0"))
