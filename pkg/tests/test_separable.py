import math
import random
from fractions import Fraction

import pytest
from scipy.special import lambertw

from hopfcenter.errors import DomainError, InputError
from hopfcenter.exactnum import MultiPoly
from hopfcenter.faadibruno import genbell_eval
from hopfcenter.paths import CoeffPath
from hopfcenter.returnmap import ode_solve, OdeConfig, return_map
from hopfcenter.separable import (
    lambert_w,
    separable_closed_form,
    separable_poly,
    separable_series,
    separable_window,
    solve_w_log,
)


def test_series_examples():
    assert separable_series(1, Fraction(1, 2)) == Fraction(1, 2)
    assert separable_series(2, 1) == 2
    with pytest.raises(InputError):
        separable_series(0, 1)


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(1), Fraction(7, 3)])
def test_series_is_return_map_of_all_ones_path(x):
    a = CoeffPath.constant({i: 1 for i in range(1, 8)}, x)
    assert list(return_map(a, 7).coeffs) == [separable_series(i, x) for i in range(1, 8)]


@pytest.mark.parametrize("i", range(1, 7))
def test_separable_poly_bell_form(i):
    t = MultiPoly.var("t")
    args = [separable_poly(j).subs({"t": j}) for j in range(1, i + 1)]
    assert separable_poly(i) == genbell_eval(i, args, t - i + 1)


def test_lambert_examples():
    assert lambert_w(0, 0.0) == 0.0
    assert lambert_w(0, math.e) == pytest.approx(1.0, abs=1e-15)
    assert lambert_w(-1, -math.exp(-1)) == -1.0
    assert lambert_w(0, -math.exp(-1)) == -1.0
    # frozen, 20 digits from an arbitrary-precision evaluation
    assert lambert_w(0, 1.0) == pytest.approx(0.56714329040978387300, abs=1e-15)
    assert lambert_w(-1, -0.1) == pytest.approx(-3.5771520639572972184, abs=1e-14)


def test_lambert_domain():
    for branch, x in [(0, -0.5), (-1, 0.1), (-1, 0.0), (0, float("nan")), (2, 1.0)]:
        with pytest.raises((DomainError, InputError)):
            lambert_w(branch, x)


@pytest.mark.parametrize("branch", [0, -1])
def test_lambert_residual_and_scipy(branch):
    rng = random.Random(branch)
    e1 = math.exp(-1)
    for _ in range(300):
        if branch == 0:
            x = -e1 + (e1 + 50) * rng.random() ** 3
        else:
            x = -e1 * rng.random()
            if x == 0:
                continue
        w = lambert_w(branch, x)
        assert abs(w * math.exp(w) - x) <= 1e-14 * max(1.0, abs(x))
        assert w == pytest.approx(lambertw(x, branch).real, rel=1e-13, abs=1e-13)
        assert (w >= -1) if branch == 0 else (w <= -1)


def test_solve_w_log():
    for L in (-40.0, -3.0, 0.5, 3.0, 80.0):
        w = solve_w_log(L, 0)
        assert w + math.log(w) == pytest.approx(L, abs=1e-12)
    for L in (-700.0, -5.0, -1.5):
        w = solve_w_log(L, -1)
        assert w <= -1
        assert w + math.log(-w) == pytest.approx(L, abs=1e-12)
    with pytest.raises(DomainError):
        solve_w_log(0.0, -1)


def test_closed_form_initial_condition():
    for r in (1e-3, -1e-3, 0.2, -0.7):
        assert separable_closed_form(0.0, r) == pytest.approx(r, rel=1e-14)


@pytest.mark.parametrize("r", [1e-3, -1e-3])
def test_series_vs_closed_form(r):
    T = Fraction(1, 2)
    series = r + sum(float(separable_series(i, T)) * r ** (i + 1) for i in range(1, 9))
    assert abs(series - separable_closed_form(float(T), r)) <= 1e-12


def test_closed_form_vs_ode():
    T, r = 0.5, 0.05
    a = CoeffPath.constant({i: 1 for i in range(1, 41)}, Fraction(1, 2))
    v = ode_solve(a, OdeConfig(M=40, r0=r))
    assert abs(v - separable_closed_form(T, r)) < 1e-12


def test_window():
    T = 0.5
    rmax = separable_window(T)
    assert 0 < rmax < 1
    # at the window edge the upper branch argument reaches -1/e
    s = -1.0 / rmax
    assert math.exp(T) * s * math.exp(s) == pytest.approx(-math.exp(-1), rel=1e-9)
    with pytest.raises(DomainError):
        separable_closed_form(T, rmax * 1.01)
    with pytest.raises(DomainError):
        separable_closed_form(-1.0, 0.1)
