from fractions import Fraction

import pytest
from hypothesis import given

from conftest import scalars
from gradedleibniz.scalar import I, ONE, ZERO, Scalar, as_scalar, format_scalar, parse_scalar


def test_basic_arithmetic():
    a = Scalar(Fraction(1, 2), 3)
    b = Scalar(-2, Fraction(1, 3))
    assert a + b == Scalar(Fraction(-3, 2), Fraction(10, 3))
    assert a * b == Scalar(-1 - 1, Fraction(1, 6) - 6)
    assert I * I == -ONE
    assert (a * b) / b == a


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_mixed_with_ints_and_fractions():
    assert Scalar(3) == 3
    assert 1 - Scalar(2) == Scalar(-1)
    assert Fraction(1, 2) * Scalar(4) == 2
    assert Scalar(1, 1) ** 2 == Scalar(0, 2)
    assert Scalar(2) ** -1 == Scalar(Fraction(1, 2))


def test_conjugate_and_norm():
    z = Scalar(3, -4)
    assert z.conjugate() == Scalar(3, 4)
    assert z.norm() == 25
    assert not z.is_real() and Scalar(5).is_real()


def test_hash_consistent_with_equality():
    assert hash(Scalar(2)) == hash(as_scalar("4/2"))
    assert len({Scalar(1, 1), parse_scalar("1+i"), parse_scalar("1+1*i")}) == 1


@pytest.mark.parametrize("text,value", [
    ("0", ZERO), ("-3/4", Scalar(Fraction(-3, 4))), ("i", I), ("-i", -I),
    ("1/2+3*i", Scalar(Fraction(1, 2), 3)), ("2-i", Scalar(2, -1)),
    ("3*i", Scalar(0, 3)), (" 1 + i ", Scalar(1, 1)), ("2/3i", Scalar(0, Fraction(2, 3))),
])
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "abc", "1+", "*i", "1/0", "1/0x", "++1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_as_scalar_rejects_floats():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@given(scalars())
def test_format_parse_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(scalars(), scalars())
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == ONE


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(scalars())
def test_complex_view(z):
    assert abs(complex(z) - complex(float(z.re), float(z.im))) < 1e-12
