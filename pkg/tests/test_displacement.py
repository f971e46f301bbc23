from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hopfcenter import displacement as disp
from hopfcenter.dual_algebra import TensorPoly
from hopfcenter.errors import InputError
from hopfcenter.exactnum import MultiPoly, UniPoly, stirling_first
from hopfcenter.shuffle_hopf import WordPoly
from hopfcenter.words import enumerate_words, p_factor

from conftest import small_fracs

t = UniPoly.var()


def test_p_factor_symbolic():
    assert p_factor((1,), t) == t
    assert p_factor((2,), t) == t - 1
    assert p_factor((1, 1), t) == t * (t - 1)
    assert p_factor((1, 1), 2) == 2
    assert p_factor((1, 2), 3) == 3


def test_displacement_examples():
    assert disp.displacement(1) == TensorPoly({(1,): 1})
    assert disp.displacement(2) == TensorPoly({(2,): 1, (1, 1): 2})
    assert str(disp.displacement(3)) == "X3 + 3*X2*X1 + 2*X1*X2 + 6*X1*X1*X1"
    assert sum(c for _, c in disp.displacement(3).items()) == 12


def test_displacement_frozen_degree_4():
    # hand expansion of the falling products p_c(4)
    assert disp.displacement(4) == TensorPoly({
        (4,): 1, (1, 3): 4, (2, 2): 3, (3, 1): 2,
        (1, 1, 2): 12, (1, 2, 1): 8, (2, 1, 1): 6, (1, 1, 1, 1): 24,
    })


@pytest.mark.parametrize("i", range(1, 11))
def test_direct_equals_recurrence(i):
    assert disp.displacement(i, "direct") == disp.displacement(i, "recurrence")


@pytest.mark.parametrize("i", range(1, 8))
def test_coefficients_are_p_factors(i):
    P = disp.displacement(i)
    for c in enumerate_words(i):
        assert P.coeff(c) == p_factor(c, i)


def test_gen_displacement_examples():
    assert disp.gen_displacement(0) == TensorPoly({(): 1})
    assert disp.gen_displacement(1) == TensorPoly({(1,): t})
    assert disp.gen_displacement(2) == TensorPoly({(2,): t - 1, (1, 1): t * (t - 1)})
    assert disp.gen_displacement_at(2, 2) == disp.displacement(2)


@pytest.mark.parametrize("i", range(1, 9))
def test_gen_displacement_at_i(i):
    assert disp.gen_displacement_at(i, i) == disp.displacement(i)


@given(st.integers(1, 6), small_fracs)
def test_gen_displacement_evaluation(i, t0):
    G = disp.gen_displacement(i)
    assert G.map_coeffs(lambda p: p(t0)) == disp.gen_displacement_at(i, t0)


def test_truncated_examples():
    assert disp.truncated_displacement(3, 1) == TensorPoly({(1, 1, 1): 6})
    assert disp.truncated_displacement(2, 2) == disp.displacement(2)
    assert disp.truncated_displacement(4, 2, "recurrence") == disp.truncated_displacement(4, 2, "truncate")


@pytest.mark.parametrize("i", range(1, 9))
def test_truncated_methods_agree(i):
    for N in range(1, i + 1):
        assert disp.truncated_displacement(i, N, "recurrence") == disp.truncated_displacement(i, N)


def test_antipode_image_examples():
    assert disp.antipode_image(1) == WordPoly({(1,): -1})
    assert disp.antipode_image(2) == WordPoly({(2,): -1, (1, 1): 2})
    assert disp.antipode_image(3) == WordPoly({(3,): -1, (2, 1): 3, (1, 2): 2, (1, 1, 1): -6})


@pytest.mark.parametrize("n", range(1, 7))
def test_generating_function(n):
    assert disp.displacement_from_generating_function(n) == disp.displacement(n)


def test_augmentation_examples():
    assert disp.augmentation(2, 1, t) == t * t - 1
    x, s = MultiPoly.var("x"), MultiPoly.var("t")
    assert disp.augmentation(1, x, s) == x * s


@pytest.mark.parametrize("i", range(1, 11))
def test_augmentation_half_factorial(i):
    assert disp.augmentation(i, 1, i) == Fraction(factorial(i + 1), 2)


@pytest.mark.parametrize("i", range(1, 8))
def test_augmentation_closed_form(i):
    x, s = MultiPoly.var("x"), MultiPoly.var("t")
    assert disp.augmentation(i, x, s) == disp.augmentation_closed(i, x, s)


def test_S_ik_examples():
    assert disp.S_ik(2, 1) == t - 1
    assert disp.S_ik(2, 2) == t * (t - 1)
    assert disp.S_ik(3, 2) == 2 * t * t - 5 * t + 2


@pytest.mark.parametrize("i", range(1, 11))
def test_S_ik_stirling(i):
    for k in range(1, i + 1):
        assert disp.S_ik(i, k, "direct") == disp.S_ik(i, k, "stirling")


@pytest.mark.parametrize("i", range(2, 9))
def test_S_ik_at_i_minus_2(i):
    for k in range(1, i + 1):
        assert disp.S_ik(i, k)(i - 2) == -abs(stirling_first(i - 1, i - k))


@pytest.mark.parametrize("i", range(1, 7))
def test_S_ik_sum_is_augmentation(i):
    x = MultiPoly.var("x")
    s = MultiPoly.var("t")
    total = sum((disp.S_ik(i, k)(s) * x ** k for k in range(1, i + 1)), MultiPoly())
    assert total == disp.augmentation(i, x, s)


def test_separable_poly_example():
    x, s = MultiPoly.var("x"), MultiPoly.var("t")
    assert disp.separable_poly(1) == x * s
    assert disp.separable_poly(2) == (s - 1) * x + s * (s - 1) * x * x / 2


REQUIRED_DEGREES = {
    "eq5.2a": 5, "eq5.2b": 5, "gpshuffle": 6, "rec63": 8, "rec64": 8,
    "te67a": 5, "te67b": 5, "eq625": 6, "devlin": 10,
}


@pytest.mark.parametrize("name,n", sorted(REQUIRED_DEGREES.items()))
def test_identities_pass(name, n):
    report = disp.verify_identity(name, n)
    assert report.ok, report.text()
    assert report.lines == [f"degree={k} status=ok" for k in range(1, n + 1)]


def test_identity_examples_at_degree_2():
    for name in ("gpshuffle", "rec63"):
        assert disp.run_degree_checks(name, disp._IDENTITIES[name], 2, min_degree=2).ok
    assert disp.verify_identity("eq5.2b", 1).ok


def test_printed_recurrence_fails_at_2():
    report = disp.run_degree_checks("rec63-printed", disp._IDENTITIES["rec63-printed"], 2, min_degree=2)
    assert not report.ok
    assert report.failed_degree == 2
    assert report.lines[0] == "degree=2 status=FAIL"
    # the full run already fails at degree 1
    assert disp.verify_identity("rec63-printed", 3).failed_degree == 1


def test_identity_errors():
    with pytest.raises(InputError):
        disp.verify_identity("no-such-identity", 2)
    with pytest.raises(InputError):
        disp.displacement(3, "nope")
    assert "gpshuffle" in disp.identity_names()
