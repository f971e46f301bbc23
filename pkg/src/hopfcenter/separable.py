"""The separable example dv/dx = sum_{i>=1} v^{i+1} = v^2/(1-v).

Its return map has coefficients S_i(x, i) = sum_k S_{i,k}(i) x^k / k!, and the
exact solution is expressed through the real branches of Lambert W.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import factorial

from .displacement import S_ik, separable_poly
from .errors import DomainError, InputError, NumericError

__all__ = [
    "lambert_w",
    "separable_closed_form",
    "separable_poly",
    "separable_series",
    "separable_window",
    "solve_w_log",
]

_INV_E = math.exp(-1.0)
_MAX_ITER = 60
_EPS = 2.220446049250313e-16


def separable_series(i: int, x) -> Fraction:
    """Coefficient of r^{i+1} in v(x; r)."""
    if i < 1:
        raise InputError("i must be >= 1")
    x = Fraction(x)
    return sum((S_ik(i, k)(i) * x ** k / factorial(k) for k in range(1, i + 1)), Fraction(0))


def _seed(branch: int, x: float) -> float:
    p2 = 2.0 * (math.e * x + 1.0)
    if p2 < 0.5:
        # branch-point expansion in p = sqrt(2(ex+1))
        p = math.sqrt(max(p2, 0.0))
        if branch == -1:
            p = -p
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if branch == 0:
        if x < 3.0:
            return math.log1p(x) if x > -0.3 else x
        l1 = math.log(x)
        l2 = math.log(l1)
        return l1 - l2 + l2 / l1
    l1 = math.log(-x)
    return l1 - math.log(-l1)


def lambert_w(branch: int, x: float) -> float:
    """Real Lambert W on branch 0 (x >= -1/e) or -1 (-1/e <= x < 0), by Halley iteration."""
    if branch not in (0, -1):
        raise InputError("branch must be 0 or -1")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"lambert_w needs a finite argument, got {x}")
    # allow one rounding step below -1/e at the branch point
    if x < -_INV_E * (1 + 4e-16):
        raise DomainError(f"lambert_w undefined for x < -1/e, got {x}")
    if branch == -1 and x >= 0:
        raise DomainError(f"branch -1 needs -1/e <= x < 0, got {x}")
    if x <= -_INV_E:
        return -1.0
    if x == 0.0:
        return 0.0
    w = _seed(branch, x)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        # near the branch point w is ill-conditioned; stop once f is at rounding level
        if abs(f) <= 4 * _EPS * abs(x):
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            return w
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            return w
        step = f / denom
        w_new = w - step
        if branch == 0 and w_new < -1.0:
            w_new = 0.5 * (w - 1.0)
        if branch == -1 and w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        if f == 0.0 or abs(w_new - w) <= 1e-15 * (1.0 + abs(w_new)):
            return w_new
        w = w_new
    raise NumericError(f"lambert_w did not converge at x={x} on branch {branch}")


def solve_w_log(L: float, branch: int) -> float:
    """Solve W(z) for z known only through log|z| = L.

    Branch 0 (z > 0): w + ln w = L.  Branch -1 (z < 0): w + ln(-w) = L with w <= -1.
    Used where z = s e^s overflows or underflows a double.
    """
    if branch == 0:
        w = L - math.log(L) if L > 1.5 else lambert_w(0, math.exp(L))
        sign = 1.0
    elif branch == -1:
        if L > -1.0:
            raise DomainError("branch -1 needs log|z| <= -1")
        w = L - math.log(-L) if L < -2.0 else lambert_w(-1, -math.exp(L))
        sign = -1.0
    else:
        raise InputError("branch must be 0 or -1")
    for _ in range(_MAX_ITER):
        g = w + math.log(sign * w) - L
        if abs(g) <= 4 * _EPS * (1.0 + abs(L)):
            return w
        step = g / (1.0 + 1.0 / w)
        w_new = w - step
        if abs(w_new - w) <= 1e-15 * abs(w_new):
            return w_new
        w = w_new
    raise NumericError(f"log-space Lambert solve did not converge at L={L}")


def separable_window(T: float) -> float:
    """Largest admissible positive r: -1/W_{-1}(-e^{-T-1})."""
    return -1.0 / lambert_w(-1, -math.exp(-float(T) - 1.0))


def separable_closed_form(x: float, r: float, T: float | None = None) -> float:
    """v(x; r) = -1/W(e^x W^{-1}(-1/r)) with W_0 for r < 0 and W_{-1} for small r > 0.

    W^{-1}(s) = s e^s; the composition is evaluated in log space.
    """
    x, r = float(x), float(r)
    if r == 0.0:
        return 0.0
    if x < 0:
        raise DomainError("x must be nonnegative")
    horizon = x if T is None else float(T)
    if r > 0 and r > separable_window(horizon):
        raise DomainError(f"r = {r} outside the window (0, {separable_window(horizon)}]")
    s = -1.0 / r
    if r < 0:
        # z = e^x s e^s > 0
        w = solve_w_log(x + math.log(s) + s, 0)
    else:
        # z = e^x s e^s < 0, on the lower branch
        w = solve_w_log(x + math.log(-s) + s, -1)
    return -1.0 / w
