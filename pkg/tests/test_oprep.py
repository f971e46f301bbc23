from fractions import Fraction

import pytest

from hopfcenter.errors import InputError
from hopfcenter.exactnum import UniPoly
from hopfcenter.oprep import (
    D,
    I_op_value,
    L,
    apply_word_operator,
    basis,
    commutator_check,
    equ69_check,
    operator_polynomial_check,
    prop61_check,
)
from hopfcenter.paths import CoeffPath, PiecewisePolyFn
from hopfcenter.suites import fixed_paths
from hopfcenter.words import enumerate_words, p_factor


def ones_path():
    return CoeffPath(1, {1: PiecewisePolyFn.constant(1, 1)})


def test_basic_operators():
    z3 = basis(3, 4)
    assert D(z3) == [0, 0, 3, 0, 0]
    assert L(z3) == [0, 0, 1, 0, 0]
    assert D(basis(0, 2)) == [0, 0, 0]
    with pytest.raises(InputError):
        basis(5, 4)


def test_apply_word_examples():
    assert apply_word_operator((1,), 5) == (5, 4)
    assert apply_word_operator((1, 2), 3) == (3, 0)
    assert apply_word_operator((2,), 1) == (0, -1)


@pytest.mark.parametrize("n", range(1, 7))
def test_word_action_is_p_factor(n):
    for c in enumerate_words(n):
        for m in range(11):
            scalar, e = apply_word_operator(c, m)
            assert e == m - n
            assert scalar == (p_factor(c, m) if m >= n else 0)


def test_commutator_examples():
    assert commutator_check(0, 0)
    assert commutator_check(1, 0, 6)
    assert commutator_check(2, 1, 8)


@pytest.mark.parametrize("i", range(5))
def test_commutators(i):
    for j in range(5):
        assert commutator_check(i, j, i + j + 4)


def test_operator_polynomial_examples():
    for x in (1, Fraction(1, 2), -2, 7):
        assert operator_polynomial_check(1, x, 4)
    assert operator_polynomial_check(2, 1, 6)
    assert operator_polynomial_check(3, Fraction(1, 2), 8)


@pytest.mark.parametrize("i", range(1, 6))
@pytest.mark.parametrize("x", [Fraction(1), Fraction(1, 2), Fraction(-2)])
def test_operator_polynomial(i, x):
    assert operator_polynomial_check(i, x)


@pytest.mark.parametrize("i", range(1, 7))
def test_prop61(i):
    for m in range(11):
        assert prop61_check(i, m)


def test_I_op_examples():
    a = ones_path()
    assert I_op_value(a, 1, 1) == 1
    assert I_op_value(a, 2, 2) == 1
    assert I_op_value(a, 3, 2) == 0


@pytest.mark.parametrize("a", fixed_paths()[:2], ids=["a", "b"])
def test_I_op_routes_and_equ69(a):
    for i in range(1, 6):
        for m in range(9):
            v = I_op_value(a, i, m)
            if m < i:
                assert v == 0
    assert equ69_check(a, 6, 4)


def test_equ69_detects_wrong_series():
    # a path with p_1 != 0 must not look like the identity series
    a = CoeffPath(1, {1: PiecewisePolyFn([0, 1], [UniPoly([0, 1])])})
    assert I_op_value(a, 1, 1) == Fraction(1, 2)
    assert equ69_check(a, 3, 2)
