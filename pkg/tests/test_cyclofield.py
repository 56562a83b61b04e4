from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from loopsum.cyclofield import (
    Cyclo,
    CycloZeroDivisionError,
    OMEGA,
    ONE,
    ZERO,
    cyc_arith,
    omega_pow,
    parse_rational,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
elements = st.builds(Cyclo, rationals, rationals)
nonzero = elements.filter(bool)


def test_omega_relations():
    assert OMEGA * OMEGA == OMEGA - 1
    assert OMEGA ** 3 == -1
    assert OMEGA ** 6 == 1
    assert OMEGA + OMEGA.inv() == 1
    # (w - 1/w)**2 = -3
    d = OMEGA - OMEGA.inv()
    assert d == 2 * OMEGA - 1
    assert d * d == -3


def test_omega_pow_period():
    for k in range(-12, 13):
        assert omega_pow(k) == OMEGA ** k
        assert omega_pow(k) == omega_pow(k + 6)


def test_integral_components_stay_int():
    x = Cyclo(Fraction(4, 2), Fraction(-6, 3))
    assert type(x.a) is int and type(x.b) is int
    y = Cyclo(1, 1) / 2
    assert y.a == Fraction(1, 2)


def test_norm_and_conjugate():
    x = Cyclo(2, 3)
    assert x.norm() == 4 + 6 + 9
    assert x * x.conj() == x.norm()


def test_division_by_zero():
    with pytest.raises(CycloZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_json_and_text():
    x = Cyclo(Fraction(-3, 4), 5)
    assert x.to_json() == {"a": "-3/4", "b": "5/1"}
    assert Cyclo.from_json(x.to_json()) == x
    assert str(Cyclo(1, -1)) == "1 - w"
    assert str(Cyclo(0, 2)) == "2w"
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational("-8/4") == -2


def test_cyc_arith_dispatch():
    assert cyc_arith(OMEGA, 2, "mul") == Cyclo(0, 2)
    assert cyc_arith(1, OMEGA, "sub") == Cyclo(1, -1)
    with pytest.raises(ValueError):
        cyc_arith(1, 1, "pow")


def test_complex_rendering():
    assert abs(OMEGA.to_complex() - complex(0.5, 3 ** 0.5 / 2)) < 1e-12


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero)
def test_inverse(x):
    assert x * x.inv() == 1
    assert (x ** -2) * x * x == 1


@given(elements, nonzero)
def test_division_roundtrip(x, y):
    assert (x / y) * y == x
