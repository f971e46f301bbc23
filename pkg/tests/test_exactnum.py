import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfcenter.errors import InputError
from hopfcenter.exactnum import (
    MultiPoly,
    UniPoly,
    format_rational,
    moebius,
    parse_rational,
    stirling_first,
)

from conftest import small_fracs

polys = st.lists(small_fracs, max_size=21).map(UniPoly)


def test_stirling_examples():
    assert stirling_first(0, 0) == 1
    assert stirling_first(3, 2) == -3
    assert stirling_first(3, 1) == 2
    assert stirling_first(4, 5) == 0


def test_stirling_table():
    # rows n = 0..6 from an independent computer-algebra expansion
    table = [
        [1],
        [0, 1],
        [0, -1, 1],
        [0, 2, -3, 1],
        [0, -6, 11, -6, 1],
        [0, 24, -50, 35, -10, 1],
        [0, -120, 274, -225, 85, -15, 1],
    ]
    for n, row in enumerate(table):
        assert [stirling_first(n, k) for k in range(n + 1)] == row


@pytest.mark.parametrize("n", range(0, 13))
def test_falling_factorial_at_n_is_factorial(n):
    assert sum(stirling_first(n, k) * n ** k for k in range(n + 1)) == math.factorial(n)


def test_moebius():
    assert moebius(1) == 1
    assert moebius(6) == 1
    assert moebius(4) == 0
    assert moebius(30) == -1
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    with pytest.raises(InputError):
        moebius(0)


def test_rational_text_round_trip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-7") == -7
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(4) == "4"
    for bad in ["1.5", "1/0", "", "a/b", "1//2"]:
        with pytest.raises(InputError):
            parse_rational(bad)


@given(small_fracs)
def test_format_parse_inverse(q):
    assert parse_rational(format_rational(q)) == q


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_rational_sum_against_unreduced(a, b, c, d):
    num, den = a * d + c * b, b * d
    g = math.gcd(num, den)
    assert Fraction(a, b) + Fraction(c, d) == Fraction(num // g, den // g)


@given(polys, polys, polys)
def test_unipoly_ring_laws(p, q, s):
    assert p * q == q * p
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s


@given(polys, small_fracs)
def test_unipoly_evaluation_is_homomorphism(p, x):
    q = p * p + p
    assert q(x) == p(x) * p(x) + p(x)


def test_unipoly_canonical_form():
    assert UniPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UniPoly([0]) == UniPoly()
    assert not UniPoly([0, 0])
    p = UniPoly([1, -1]) * UniPoly([1, 1])
    assert p == UniPoly([1, 0, -1])
    assert p.to_str("t") == "-t^2 + 1"


def test_unipoly_calculus():
    p = UniPoly([1, 2, 3])
    assert p.derivative() == UniPoly([2, 6])
    assert p.antiderivative() == UniPoly([0, 1, 1, 1])
    assert p.shift(1) == UniPoly([6, 8, 3])  # p(t + 1)
    assert p.compose_linear(2, 0)(Fraction(1, 2)) == p(1)


def test_multipoly_basic():
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert p.subs({"x": 1, "y": 2}) == 9
    assert p.subs({"y": x}) == 4 * x * x
    assert (p / 2).subs({"x": 1, "y": 1}) == 2
    assert MultiPoly.var("t10") * MultiPoly.var("t2") == MultiPoly.var("t2") * MultiPoly.var("t10")
    with pytest.raises(InputError):
        x ** -1


@given(st.lists(small_fracs, min_size=3, max_size=3))
def test_multipoly_subs_is_homomorphism(vals):
    x, y, z = (MultiPoly.var(n) for n in "xyz")
    env = dict(zip("xyz", vals))
    p, q = x * y + 3 * z, x - z * z
    assert (p * q).subs(env) == p.subs(env) * q.subs(env)
