"""First return map of dv/dx = sum a_i(x) v^{i+1} on [0, T].

Three exact routes give the coefficients p_i(a) of r^{i+1}:

* ``integrals``: sum over compositions c of i of p_c(i) I_c(a);
* ``hopf``: the Chen series pushed to the Faa di Bruno dual, pairing
  I_c(a) with (t'_{i_k} * ... * t'_{i_1})(t_i);
* ``picard``: successive approximation of the power series solution in r,
  computed with piecewise-polynomial arithmetic.

The numerical solver is a cross-check only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.integrate import solve_ivp

from .errors import InputError, InternalError, NumericError
from .exactnum import UniPoly
from .faadibruno import PowerSeriesMap, bell, genbell_eval, primitive_word_value
from .paths import CoeffPath, PiecewisePolyFn, _antiderivative, iterated_integral
from .words import enumerate_words, p_factor

__all__ = [
    "OdeConfig",
    "displacement_value",
    "inverse_construction",
    "is_center_to_order",
    "ode_solve",
    "return_map",
    "series_tail_bound",
]


def _coeff_integrals(a: CoeffPath, i: int) -> Fraction:
    return sum((p_factor(c, i) * iterated_integral(a, c) for c in enumerate_words(i)), Fraction(0))


def _coeff_hopf(a: CoeffPath, i: int) -> Fraction:
    total = Fraction(0)
    for c in enumerate_words(i):
        I = iterated_integral(a, c)
        if I:
            total += I * primitive_word_value(c, i)
    return total


def _picard(a: CoeffPath, N: int) -> list:
    """p_1..p_N from the power series solution v = sum_k v_k(x) r^k, v_1 = 1.

    Coefficient functions are lists of pieces on the common grid.  The r^k
    coefficient of v^m (m >= 2) only involves v_1..v_{k-1}, so each v_k is one
    exact antiderivative away from the previous ones.
    """
    grid = a.grid()
    n = len(grid) - 1
    zero = [UniPoly()] * n
    coeff_pieces = {i: list(fn.refine(grid).pieces) for i, fn in a.coeffs.items()}

    def mul(f, g):
        return [x * y for x, y in zip(f, g)]

    def add(f, g):
        return [x + y for x, y in zip(f, g)]

    v = [zero, [UniPoly.const(1)] * n]
    for k in range(2, N + 2):
        rhs = zero
        power = v[:k] + [zero]  # series of v^1 up to r^k, unknown v_k left as zero
        for m in range(2, k + 1):
            power = [
                _sum_pieces([mul(power[j], v[q - j]) for j in range(1, q) if q - j < k], zero, add)
                for q in range(k + 1)
            ]
            i = m - 1
            if i in coeff_pieces and any(power[k]):
                rhs = add(rhs, mul(coeff_pieces[i], power[k]))
        v.append(_antiderivative(grid, rhs))
    return [v[i + 1][-1](a.T) for i in range(1, N + 1)]


def _sum_pieces(items, zero, add):
    acc = zero
    for it in items:
        acc = add(acc, it)
    return acc


def return_map(a: CoeffPath, N: int, method: str = "integrals") -> PowerSeriesMap:
    if N < 1:
        raise InputError("order N must be >= 1")
    if method == "integrals":
        return PowerSeriesMap([_coeff_integrals(a, i) for i in range(1, N + 1)])
    if method == "hopf":
        return PowerSeriesMap([_coeff_hopf(a, i) for i in range(1, N + 1)])
    if method == "picard":
        return PowerSeriesMap(_picard(a, N))
    raise InputError(f"unknown method {method!r}")


def is_center_to_order(a: CoeffPath, N: int) -> bool:
    return return_map(a, N).is_identity()


def displacement_value(a: CoeffPath, i: int, t) -> Fraction:
    """P~_i(int a_1, ..., int a_i; t), by the composition sum and by the B_i route."""
    if i < 1:
        raise InputError("i must be >= 1")
    t = Fraction(t)
    direct = sum((p_factor(c, t) * iterated_integral(a, c) for c in enumerate_words(i)), Fraction(0))
    ps = return_map(a, i).coeffs
    via_bell = genbell_eval(i, list(ps), t - i + 1)
    if direct != via_bell:
        raise InternalError(f"displacement_value routes disagree: {direct} vs {via_bell}")
    return direct


# ---------------------------------------------------------------------------
# numerical cross-check


@dataclass(frozen=True)
class OdeConfig:
    M: int = 8
    r0: float = 1e-3
    tol: float = 1e-13
    max_steps: int = 100_000

    def __post_init__(self):
        if self.M < 1:
            raise InputError("M must be >= 1")
        if not self.tol > 0:
            raise InputError("tol must be positive")
        if self.max_steps < 1:
            raise InputError("max_steps must be >= 1")


class _Budget(Exception):
    pass


def ode_solve(a: CoeffPath, cfg: OdeConfig = OdeConfig()) -> float:
    """v(T) for v(0) = r0 under dv/dx = sum_{i<=M} a_i(x) v^{i+1} (DOP853 per piece)."""
    grid = [float(g) for g in a.grid()]
    exact_grid = a.grid()
    coeff_pieces = {
        i: [np.array([float(c) for c in p.coeffs] or [0.0]) for p in fn.refine(exact_grid).pieces]
        for i, fn in a.coeffs.items()
        if i <= cfg.M
    }
    v = float(cfg.r0)
    evals = [0]
    limit = 12 * cfg.max_steps
    for k, (lo, hi) in enumerate(zip(grid, grid[1:])):
        polys = [(i, pcs[k]) for i, pcs in coeff_pieces.items()]

        def rhs(x, y, polys=polys):
            evals[0] += 1
            if evals[0] > limit:
                raise _Budget
            s = 0.0
            for i, pc in polys:
                s += np.polynomial.polynomial.polyval(x, pc) * y[0] ** (i + 1)
            return [s]

        try:
            sol = solve_ivp(rhs, (lo, hi), [v], method="DOP853", rtol=cfg.tol, atol=cfg.tol * 1e-6)
        except _Budget:
            raise NumericError(f"step budget of {cfg.max_steps} exhausted on [{lo}, {hi}]") from None
        if sol.status != 0:
            raise NumericError(f"integration failed on [{lo}, {hi}]: {sol.message}")
        v = float(sol.y[0, -1])
        if not math.isfinite(v) or abs(v) > 1e6:
            raise NumericError(f"solution diverged on [{lo}, {hi}] (v = {v})")
    return v


def _majorant_endpoint(A: float, T: float, rho: float) -> float | None:
    """w(T) for w' = A w^2/(1-w), w(0) = rho, or None if w reaches 1."""
    # conserved: -1/w - ln w - A x
    target = -1.0 / rho - math.log(rho) + A * T
    if target >= -1.0:
        return None
    lo, hi = rho, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if -1.0 / mid - math.log(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def series_tail_bound(a: CoeffPath, N: int, r0: float) -> float:
    """Bound on |P(a)(r0) - (r0 + sum_{i<=N} p_i(a) r0^{i+1})|.

    Every coefficient of the return map is dominated by the one for
    w' = A w^2/(1-w) with A = max_i sup|a_i|, whose time-T map is analytic on
    |r| < rho; a Cauchy estimate on that disc bounds the tail.
    """
    r0 = abs(r0)
    A = float(max((fn.sup_bound() for fn in a.coeffs.values()), default=0))
    if A == 0 or r0 == 0:
        return 0.0
    T = float(a.T)
    best = math.inf
    for k in range(1, 400):
        rho = 0.5 * k / 400
        if rho <= r0:
            continue
        B = _majorant_endpoint(A, T, rho)
        if B is None:
            break
        q = r0 / rho
        best = min(best, B * q ** (N + 2) / (1 - q))
    return best


# ---------------------------------------------------------------------------
# prescribed return maps


def inverse_construction(targets, T) -> CoeffPath:
    """Polynomial a_1..a_N whose return map has p_i = t_i/(i+1)! for i <= N.

    a_i(x) = (1/(i+1)!) sum_k (t_k/T) C(i+1, i-k) sum_l l! B_{i-k,l}(t_1, ...) ((x-T)/T)^l.
    """
    ts = [Fraction(t) for t in targets]
    T = Fraction(T)
    if not ts:
        raise InputError("need at least one target")
    if T <= 0:
        raise InputError("T must be positive")
    y = UniPoly([-1, 1 / T])  # (x - T)/T
    coeffs = {}
    for i in range(1, len(ts) + 1):
        poly = UniPoly()
        for k in range(1, i + 1):
            inner = UniPoly()
            for l in range(i - k + 1):
                inner = inner + factorial(l) * bell(i - k, l, ts) * y ** l
            poly = poly + inner * (ts[k - 1] / T * comb(i + 1, i - k))
        poly = poly * Fraction(1, factorial(i + 1))
        coeffs[i] = PiecewisePolyFn((0, T), (poly,))
    return CoeffPath(T, coeffs)

