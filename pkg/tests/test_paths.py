import json
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st
import sympy as sp

from hopfcenter.dual_algebra import convolution, identity_functional, inverse_character, is_group_like
from hopfcenter.errors import InputError
from hopfcenter.exactnum import UniPoly
from hopfcenter.paths import (
    CoeffPath,
    PiecewisePolyFn,
    chen_map,
    dump_path,
    iterated_integral,
    load_path,
    path_concat,
    path_from_json,
    path_inverse,
    path_to_json,
)
from hopfcenter.shuffle_hopf import _shuffle_words
from hopfcenter.suites import fixed_paths, random_path
from hopfcenter.words import enumerate_words

from conftest import compositions

P = PiecewisePolyFn


def test_piecewise_basics():
    f = P([0, Fraction(1, 2), 1], [UniPoly([1]), UniPoly([0, 2])])
    assert f(Fraction(1, 4)) == 1
    assert f(Fraction(1, 2)) == 1  # right-hand piece at a breakpoint
    assert f(1) == 2
    g = f.refine([Fraction(1, 4), Fraction(3, 4)])
    assert g.breakpoints == (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)
    assert g.simplify() == f
    assert f.sup_bound() >= 2
    with pytest.raises(InputError):
        P([0, 0], [UniPoly([1])])
    with pytest.raises(InputError):
        P([0, 1, 2], [UniPoly([1])])


def test_path_validation():
    with pytest.raises(InputError):
        CoeffPath(0)
    with pytest.raises(InputError):
        CoeffPath(1, {1: P([0, 2], [UniPoly([1])])})
    with pytest.raises(InputError):
        CoeffPath(1, {0: P([0, 1], [UniPoly([1])])})
    assert CoeffPath(1, {2: P.zero(1)}).coeffs == {}


def test_concat_examples():
    z = CoeffPath.zero(1)
    assert path_concat(z, z) == z
    one = CoeffPath.constant({1: 1})
    assert path_concat(one, one) == CoeffPath.constant({1: 2})


def test_concat_layout():
    a = CoeffPath.constant({1: 1})
    b = CoeffPath.constant({1: 3})
    ab = path_concat(a, b)
    # b runs first on [0, T/2]
    assert ab.a(1)(Fraction(1, 4)) == 6
    assert ab.a(1)(Fraction(3, 4)) == 2


def test_inverse_examples():
    assert path_inverse(CoeffPath.zero(1)) == CoeffPath.zero(1)
    a = CoeffPath(1, {1: P([0, 1], [UniPoly([0, 1])])})
    assert path_inverse(a) == CoeffPath(1, {1: P([0, 1], [UniPoly([-1, 1])])})
    for p in fixed_paths():
        assert path_inverse(path_inverse(p)) == p


def test_iterated_integral_examples():
    one = CoeffPath.constant({1: 1})
    assert iterated_integral(one, (1, 1)) == Fraction(1, 2)
    assert iterated_integral(one, ()) == 1
    assert iterated_integral(one, (2,)) == 0


@given(compositions(6), st.integers(1, 3))
def test_constant_paths_give_simplex_volumes(c, T):
    vals = {1: Fraction(2, 3), 2: -1, 3: Fraction(1, 2), 4: 3}
    a = CoeffPath.constant(vals, T)
    k = len(c)
    assert iterated_integral(a, c) == prod(vals[i] for i in c) * Fraction(T) ** k / factorial(k)


def _sympy_piecewise(fn, x):
    args = []
    for lo, hi, p in zip(fn.breakpoints, fn.breakpoints[1:], fn.pieces):
        expr = sum(sp.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(p.coeffs))
        args.append((expr, x < sp.Rational(hi.numerator, hi.denominator)))
    args[-1] = (args[-1][0], True)
    return sp.Piecewise(*args)


@pytest.mark.parametrize("c", [(1, 2), (2, 1), (1, 1), (3, 1), (1, 2, 3)])
def test_iterated_integral_against_computer_algebra(c):
    a = fixed_paths()[0]
    x, s = sp.symbols("x s")
    # innermost integral runs over the earliest letter i_1
    inner = sp.Integer(1)
    for i in c:
        f = _sympy_piecewise(a.a(i), s) * inner.subs(x, s)
        inner = sp.integrate(f, (s, 0, x))
    value = sp.nsimplify(inner.subs(x, sp.Rational(a.T.numerator, a.T.denominator)))
    assert iterated_integral(a, c) == Fraction(int(value.p), int(value.q))


def test_refinement_invariance():
    a = random_path(17, 3, 2)
    grid = [Fraction(k, 13) for k in range(1, 13)]
    fine = CoeffPath(a.T, {i: fn.refine(grid) for i, fn in a.coeffs.items()})
    for n in range(1, 5):
        for c in enumerate_words(n):
            assert iterated_integral(a, c) == iterated_integral(fine, c)


def test_chen_map_examples():
    assert chen_map(CoeffPath.zero(1), 3) == identity_functional(3)
    one = CoeffPath.constant({1: 1})
    assert chen_map(one, 3)((1, 1, 1)) == Fraction(1, 6)
    assert is_group_like(chen_map(random_path(1, 3, 2), 4))


@pytest.mark.parametrize("seed", range(3))
def test_ree_shuffle_relation(seed):
    a = random_path(100 + seed, 3, 2)
    for n in range(2, 7):
        for d in range(1, n):
            for u in enumerate_words(d):
                for v in enumerate_words(n - d):
                    lhs = iterated_integral(a, u) * iterated_integral(a, v)
                    rhs = sum(m * iterated_integral(a, w) for w, m in _shuffle_words(u, v))
                    assert lhs == rhs


def test_chen_multiplicativity_order():
    # degree-1 values just add, so the factor order is pinned at degree 2
    a, b = CoeffPath.constant({1: 1}), CoeffPath.constant({2: 3})
    assert chen_map(path_concat(a, b), 1)((1,)) == 1
    E = chen_map(path_concat(a, b), 3)
    Ea, Eb = chen_map(a, 3), chen_map(b, 3)
    assert E == convolution(Ea, Eb)
    assert E != convolution(Eb, Ea)
    # b runs first: I_(2,1) = 3 * 1 and I_(1,2) = 0
    assert E((2, 1)) == 3 and E((1, 2)) == 0


@pytest.mark.parametrize("seed", range(3))
def test_chen_multiplicativity(seed):
    a, b = random_path(seed, 3, 2), random_path(seed + 50, 2, 3)
    for N in range(1, 6):
        assert chen_map(path_concat(a, b), N) == convolution(chen_map(a, N), chen_map(b, N))


@pytest.mark.parametrize("seed", range(3))
def test_universal_center(seed):
    a = random_path(seed + 7, 3, 2)
    assert chen_map(path_concat(a, path_inverse(a)), 5) == identity_functional(5)
    assert chen_map(path_concat(path_inverse(a), a), 5) == identity_functional(5)


def test_chen_inverse():
    a = fixed_paths()[1]
    assert inverse_character(chen_map(a, 4)) == chen_map(path_inverse(a), 4)


def test_json_round_trip(tmp_path):
    for a in fixed_paths():
        assert path_from_json(json.loads(json.dumps(path_to_json(a)))) == a
        f = tmp_path / "p.json"
        dump_path(a, f)
        assert load_path(f) == a


def test_json_validation(tmp_path):
    good = {"T": "1", "coefficients": [{"index": 1, "pieces": [
        {"from": "0", "to": "1/2", "poly": ["1"]}, {"from": "1/2", "to": "1", "poly": ["0", "1"]}]}]}
    assert path_from_json(good).a(1)(1) == 1
    bad_cases = [
        {},
        {"T": "0"},
        {"T": "1", "coefficients": [{"index": 0, "pieces": []}]},
        {"T": "1", "coefficients": [{"index": 1, "pieces": [{"from": "0", "to": "1/2", "poly": ["1"]}]}]},
        {"T": "1", "coefficients": [{"index": 1, "pieces": [
            {"from": "0", "to": "1/2", "poly": ["1"]}, {"from": "1/3", "to": "1", "poly": ["1"]}]}]},
        {"T": "1", "coefficients": [{"index": 1, "pieces": [{"from": "0", "to": "1", "poly": ["0.5"]}]}]},
        {"T": "1", "coefficients": [{"index": 1}]},
    ]
    for data in bad_cases:
        with pytest.raises(InputError):
            path_from_json(data)
    f = tmp_path / "broken.json"
    f.write_text("{not json")
    with pytest.raises(InputError):
        load_path(f)
    with pytest.raises(InputError):
        load_path(tmp_path / "missing.json")
