"""Structure matrices, elements, and the defining commutation relation."""

from fractions import Fraction

import pytest

from abmod import AbModule, Element, Scalar, Series, apply_a, apply_b, from_expression
from abmod.module import apply_b_inverse


def _mk(rows, precision):
    return AbModule(
        [[Series([Scalar.of(c) for c in e], precision) for e in row] for row in rows]
    )


def test_construction_validates_shape():
    with pytest.raises(ValueError):
        AbModule([[Series.zero(4)], [Series.zero(4)]])  # not square


def test_rank_precision_residue():
    m = _mk([[[0, Fraction(1, 2)], [1]], [[0], [0, 2]]], 6)
    assert m.rank == 2 and m.precision == 6
    res = m.residue_matrix()
    assert res[0][0] == Scalar(Fraction(1, 2)) and res[1][1] == Scalar(2)
    const = m.constant_matrix()
    assert const[0][1] == Scalar(1) and const[0][0].is_zero()


def test_simple_pole_detection():
    assert _mk([[[0, 1]]], 4).is_simple_pole()          # a e = b e
    assert not _mk([[[1]]], 4).is_simple_pole()          # a e = e
    assert from_expression("E(1/2;1)", 6).is_simple_pole()
    assert not from_expression("E(0,1)", 6).is_simple_pole()


def test_at_precision():
    m = from_expression("J(2;0)", 10)
    t = m.at_precision(4)
    assert t.precision == 4
    assert t.matrix[0][0] == m.matrix[0][0].at_precision(4)


def test_commutation_relation_on_elements():
    # a(b x) - b(a x) = b^2 x for every element of every test module
    mods = [
        from_expression("J(3;1)", 10),
        from_expression("E(1/2,1/3)", 10),
        from_expression("rand(3;21)", 10),
    ]
    for m in mods:
        for idx in range(m.rank):
            x = m.basis_element(idx)
            lhs = apply_a(m, apply_b(m, x)) - apply_b(m, apply_a(m, x))
            rhs = apply_b(m, apply_b(m, x))
            assert (lhs - rhs).is_zero()


def test_apply_b_inverse_round_trip():
    m = from_expression("J(2;0)", 8)
    x = m.basis_element(1)
    assert (apply_b_inverse(apply_b(m, x)) - x).is_zero()


def test_element_arithmetic_frames():
    m = from_expression("E(1,2)", 8)
    x = m.basis_element(0)
    y = apply_b(m, m.basis_element(1))
    z = x + y
    assert not z.is_zero()
    assert (z - y - x).is_zero()
