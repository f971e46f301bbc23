"""Displacement polynomials and their identities.

``P_i = sum_c p_c(i) X_c`` over compositions c of i, and the generalized
``P~_i(t) = sum_c p_c(t) X_c`` with :class:`UniPoly` coefficients.  The same
sparse data is read as a :class:`TensorPoly` (concatenation) or as a
:class:`WordPoly` (shuffle) through ``as_shuffle`` / ``as_tensor``.

:func:`verify_identity` checks the recurrences and the Bell-polynomial
identities degree by degree with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .dual_algebra import TensorPoly, truncate_alphabet
from .errors import InputError
from .exactnum import MultiPoly, UniPoly, binomial, stirling_first
from .faadibruno import _right_factor, bell, genbell_eval, primitive_word_value
from .shuffle_hopf import TensorWordPoly, WordPoly, antipode_poly, coproduct_poly
from .words import enumerate_words, p_factor

__all__ = [
    "IdentityReport",
    "S_ik",
    "antipode_image",
    "augmentation",
    "augmentation_closed",
    "displacement",
    "displacement_from_generating_function",
    "gen_displacement",
    "gen_displacement_at",
    "identity_names",
    "p_factor",
    "separable_poly",
    "truncated_displacement",
    "verify_identity",
]

_T = UniPoly.var()


def _check_degree(i: int):
    if not isinstance(i, int) or i < 1:
        raise InputError(f"degree must be a positive integer, got {i!r}")


def _x(j: int) -> TensorPoly:
    return TensorPoly({(j,): 1})


@lru_cache(maxsize=None)
def _displacement_direct(i: int) -> TensorPoly:
    return TensorPoly({c: p_factor(c, i) for c in enumerate_words(i)})


@lru_cache(maxsize=None)
def _displacement_recurrence(n: int) -> TensorPoly:
    # P_n = sum_{i=1}^n (n-i+1) P_{n-i} X_i
    if n == 0:
        return TensorPoly.one()
    total = TensorPoly()
    for i in range(1, n + 1):
        total = total + (n - i + 1) * (_displacement_recurrence(n - i) * _x(i))
    return total


def displacement(i: int, method: str = "direct") -> TensorPoly:
    """The displacement polynomial P_i in X_1, ..., X_i."""
    if i == 0:
        return TensorPoly.one()
    _check_degree(i)
    if method == "direct":
        return _displacement_direct(i)
    if method == "recurrence":
        return _displacement_recurrence(i)
    raise InputError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def gen_displacement(i: int) -> TensorPoly:
    """P~_i(X; t) with UniPoly coefficients in t; P~_0 = I."""
    if i == 0:
        return TensorPoly.one()
    _check_degree(i)
    return TensorPoly({c: p_factor(c, _T) for c in enumerate_words(i)})


def gen_displacement_at(i: int, t0) -> TensorPoly:
    t0 = Fraction(t0)
    return gen_displacement(i).map_coeffs(lambda p: p(t0))


@lru_cache(maxsize=None)
def _truncated_recurrence(n: int, N: int) -> TensorPoly:
    if n == 0:
        return TensorPoly.one()
    total = TensorPoly()
    for i in range(1, min(n, N) + 1):
        total = total + (n - i + 1) * (_truncated_recurrence(n - i, N) * _x(i))
    return total


def truncated_displacement(i: int, N: int, method: str = "truncate") -> TensorPoly:
    """P_i^N: P_i with X_j set to zero for j > N."""
    _check_degree(i)
    if N < 1:
        raise InputError("N must be >= 1")
    if method == "truncate":
        return truncate_alphabet(displacement(i), N)
    if method == "recurrence":
        return _truncated_recurrence(i, N)
    raise InputError(f"unknown method {method!r}")


def antipode_image(i: int) -> WordPoly:
    """S(P_i) in the shuffle algebra, termwise signed reversal."""
    _check_degree(i)
    return antipode_poly(displacement(i).as_shuffle())


def displacement_from_generating_function(n: int) -> TensorPoly:
    """P_n rebuilt from the values (t'_{i_k} * ... * t'_{i_1})(t_n) in the FdB dual."""
    _check_degree(n)
    return TensorPoly({c: primitive_word_value(c, n) for c in enumerate_words(n)})


# ---------------------------------------------------------------------------
# augmentation and S_{i,k}


def augmentation(i: int, x, t):
    """sum_c p_c(t) x^{|c|} over compositions of i; x, t numbers or polynomials."""
    _check_degree(i)
    total = Fraction(0)
    for c in enumerate_words(i):
        total = total + p_factor(c, t) * x ** len(c)
    return total


def augmentation_closed(i: int, x, t):
    """(x t + 1)(x(t-1) + 1)...(x(t-i+2) + 1) x (t-i+1)."""
    _check_degree(i)
    acc = x * (t - i + 1)
    for m in range(i - 1):
        acc = acc * (x * (t - m) + 1)
    return acc


@lru_cache(maxsize=None)
def S_ik(i: int, k: int, method: str = "direct") -> UniPoly:
    """S_{i,k}(t): sum of p_c(t) over compositions of i with k parts."""
    _check_degree(i)
    if k < 1 or k > i:
        raise InputError(f"S_ik needs 1 <= k <= i, got i={i}, k={k}")
    if method == "direct":
        total = UniPoly()
        for c in enumerate_words(i):
            if len(c) == k:
                total = total + p_factor(c, _T)
        return total
    if method == "stirling":
        acc = UniPoly()
        for l in range(k):
            s = stirling_first(i - 1, l + i - k)
            acc = acc + UniPoly([0] * l + [s * binomial(l + i - k, l)])
        return (_T - i + 1) * acc
    raise InputError(f"unknown method {method!r}")


def separable_poly(i: int) -> MultiPoly:
    """S_i(x, t) = sum_k S_{i,k}(t) x^k / k! as a polynomial in x and t."""
    _check_degree(i)
    x, t = MultiPoly.var("x"), MultiPoly.var("t")
    total = MultiPoly()
    for k in range(1, i + 1):
        total = total + S_ik(i, k)(t) * x ** k / factorial(k)
    return total


# ---------------------------------------------------------------------------
# identities


def _P(j: int) -> WordPoly:
    return displacement(j).as_shuffle() if j else WordPoly.one()


def _Pt(j: int) -> WordPoly:
    return gen_displacement(j).as_shuffle() if j else WordPoly.one().map_coeffs(UniPoly.const)


def _shift(p, b):
    return p.map_coeffs(lambda c: c.shift(b) if isinstance(c, UniPoly) else c)


def _to_uni(p):
    return p.map_coeffs(lambda c: c if isinstance(c, UniPoly) else UniPoly.const(c))


def _eq52a(i):
    lhs = antipode_image(i)
    args = [WordPoly()] + [factorial(k) * _P(k - 1) for k in range(2, i + 2)]
    rhs = WordPoly()
    for j in range(1, i + 1):
        rhs = rhs + (-1) ** j * bell(i + j, j, args)
    return lhs, rhs.scale(Fraction(1, factorial(i + 1)))


def _eq52b(i):
    lhs = coproduct_poly(_P(i))
    ps = [_P(k) for k in range(1, i + 1)]
    pairs = []
    for j in range(i + 1):
        right = _right_factor(i, j, ps)
        if not isinstance(right, WordPoly):
            right = WordPoly({(): right})
        pairs.append((_P(j), right))
    return lhs, TensorWordPoly.from_pairs(pairs)


def _gpshuffle(i):
    lhs = _Pt(i)
    rhs = genbell_eval(i, [_P(k) for k in range(1, i + 1)], _T - i + 1)
    return lhs, _to_uni(rhs)


def _rec63(n, factor=True):
    lhs = gen_displacement(n)
    rhs = TensorPoly()
    for j in range(1, n + 1):
        term = _shift(_to_uni(gen_displacement(n - j)), -j) * _x(j)
        if factor:
            term = term.scale(_T - j + 1)
        rhs = rhs + term
    return lhs, rhs


def _rec64(n):
    lhs = gen_displacement(n)
    acc = TensorPoly()
    for j in range(1, n + 1):
        acc = acc + _x(j) * _to_uni(gen_displacement(n - j))
    return lhs, acc.scale(_T - n + 1)


def _te67a(i):
    # cleared form: (t+1) P~_i(t) = (t-i+1) sum_{j=1}^{i+1} j P_{j-1} sh P~_{i-j+1}(t-j)
    lhs = _Pt(i).scale(_T + 1)
    acc = WordPoly()
    for j in range(1, i + 2):
        acc = acc + j * (_P(j - 1) * _shift(_Pt(i - j + 1), -j))
    return lhs, acc.scale(_T - i + 1)


def _te67b(i):
    lhs = _Pt(i)
    acc = WordPoly()
    for j in range(1, i + 1):
        coef = (_T - i + 2) * Fraction(j, i) - 1
        acc = acc + coef * (_P(j) * _shift(_Pt(i - j), -j))
    return lhs, acc


def _eq625(i):
    lhs = separable_poly(i)
    args = [separable_poly(k).subs({"t": Fraction(k)}) for k in range(1, i + 1)]
    rhs = genbell_eval(i, args, MultiPoly.var("t") - i + 1)
    return lhs, rhs


def _devlin(i):
    return displacement(i, "direct"), displacement(i, "recurrence")


_IDENTITIES = {
    "eq5.2a": _eq52a,
    "eq5.2b": _eq52b,
    "gpshuffle": _gpshuffle,
    "rec63": _rec63,
    "rec63-printed": lambda n: _rec63(n, factor=False),
    "rec64": _rec64,
    "te67a": _te67a,
    "te67b": _te67b,
    "eq625": _eq625,
    "devlin": _devlin,
}


def identity_names() -> list:
    return list(_IDENTITIES)


@dataclass
class IdentityReport:
    name: str
    lines: list = field(default_factory=list)
    ok: bool = True
    failed_degree: int | None = None

    def text(self) -> str:
        return "\n".join(self.lines)


def _diff(lhs, rhs):
    try:
        return lhs - rhs
    except TypeError:
        return None


def run_degree_checks(name: str, check, max_degree: int, min_degree: int = 1) -> IdentityReport:
    """Evaluate ``check(n) -> (lhs, rhs)`` for each degree; stop at the first failure."""
    report = IdentityReport(name)
    for n in range(min_degree, max_degree + 1):
        lhs, rhs = check(n)
        if lhs == rhs:
            report.lines.append(f"degree={n} status=ok")
            continue
        report.ok = False
        report.failed_degree = n
        report.lines.append(f"degree={n} status=FAIL")
        report.lines.append(f"  lhs: {lhs}")
        report.lines.append(f"  rhs: {rhs}")
        d = _diff(lhs, rhs)
        if d is not None:
            report.lines.append(f"  lhs - rhs: {d}")
        break
    return report


def verify_identity(name: str, max_degree: int) -> IdentityReport:
    if name not in _IDENTITIES:
        raise InputError(f"unknown identity {name!r}; known: {', '.join(_IDENTITIES)}")
    if max_degree < 1:
        raise InputError("max_degree must be >= 1")
    return run_degree_checks(name, _IDENTITIES[name], max_degree)
