"""Exact rational-complex scalar arithmetic."""

from fractions import Fraction

import pytest

from abmod import ONE, Scalar, ZERO


def test_construction_and_predicates():
    assert ZERO.is_zero() and not ZERO.is_one()
    assert ONE.is_one() and not ONE.is_zero()
    assert Scalar(3).is_integer() and Scalar(3).is_real()
    assert Scalar(Fraction(1, 2)).is_real() and not Scalar(Fraction(1, 2)).is_integer()
    assert not Scalar(0, 1).is_real()
    assert bool(Scalar(0, 1)) and not bool(ZERO)


def test_of_coercion():
    assert Scalar.of(3) == Scalar(3)
    assert Scalar.of(Fraction(2, 4)) == Scalar(Fraction(1, 2))
    s = Scalar(1, 2)
    assert Scalar.of(s) is s


def test_field_arithmetic():
    a = Scalar(1, 2)          # 1 + 2i
    b = Scalar(3, -1)         # 3 - i
    assert a + b == Scalar(4, 1)
    assert a - b == Scalar(-2, 3)
    assert a * b == Scalar(5, 5)          # (1+2i)(3-i) = 3 - i + 6i + 2 = 5 + 5i
    assert a * b / b == a
    assert -a == Scalar(-1, -2)
    assert 1 - a == Scalar(0, -2)
    assert 1 / Scalar(0, 1) == Scalar(0, -1)     # 1/i = -i


def test_inverse_exact():
    a = Scalar(Fraction(2, 3), Fraction(-1, 5))
    assert a * a.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_conjugate():
    a = Scalar(2, 7)
    assert a.conjugate() == Scalar(2, -7)
    assert (a * a.conjugate()).is_real()


def test_sort_key_orders_by_real_then_imaginary():
    values = [Scalar(1), Scalar(0, 1), Scalar(0, -1), Scalar(Fraction(1, 2)), ZERO]
    ordered = sorted(values, key=Scalar.sort_key)
    assert ordered == [Scalar(0, -1), ZERO, Scalar(0, 1), Scalar(Fraction(1, 2)), Scalar(1)]


def test_equality_and_hash():
    assert Scalar(Fraction(2, 4)) == Scalar(Fraction(1, 2))
    assert hash(Scalar(1, 1)) == hash(Scalar(1, 1))
    assert Scalar(1) != Scalar(1, 1)
