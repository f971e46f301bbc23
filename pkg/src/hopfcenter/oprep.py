"""Differentiation and left translation on polynomials, and the action I_i(a).

On the basis z^m, ``D z^m = m z^{m-1}`` and ``L z^m = z^{m-1}`` (both kill
constants).  Words act through the operators DL^{i-1}; the tuple
``(i_1, ..., i_k)`` acts as ``DL^{i_k - 1} ... DL^{i_1 - 1}`` (i_1 applied first).
Vectors are coefficient lists ``[c_0, ..., c_M]`` over a fixed ambient degree M.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .dual_algebra import TensorPoly
from .errors import InputError, InternalError
from .faadibruno import bell
from .paths import CoeffPath, iterated_integral
from .words import enumerate_words, p_factor

__all__ = [
    "D",
    "I_op_value",
    "L",
    "apply_word_operator",
    "basis",
    "commutator_check",
    "equ69_check",
    "operator_polynomial_check",
    "prop61_check",
]


def basis(m: int, M: int) -> list:
    if not 0 <= m <= M:
        raise InputError(f"z^{m} is outside the ambient degree {M}")
    v = [Fraction(0)] * (M + 1)
    v[m] = Fraction(1)
    return v


def D(v: list) -> list:
    return [k * v[k] for k in range(1, len(v))] + [Fraction(0)]


def L(v: list) -> list:
    return list(v[1:]) + [Fraction(0)]


def DL(j: int, v: list) -> list:
    """DL^j applied to v."""
    for _ in range(j):
        v = L(v)
    return D(v)


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _scale(s, v):
    return [s * a for a in v]


def apply_word_operator(c, m: int) -> tuple:
    """DL^{i_k-1} ... DL^{i_1-1} (z^m) as (scalar, exponent m - deg c)."""
    c = tuple(c)
    if m < 0:
        raise InputError("m must be nonnegative")
    v = basis(m, m)
    for i in c:
        v = DL(i - 1, v)
    e = m - sum(c)
    return (v[e] if e >= 0 else Fraction(0)), e


def commutator_check(i: int, j: int, M: int | None = None) -> bool:
    """[DL^i, DL^j] = (i - j) DL^{i+j+1} on z^0..z^M."""
    if i < 0 or j < 0:
        raise InputError("exponents must be nonnegative")
    if M is None:
        M = i + j + 2
    if M < i + j + 2:
        raise InputError("ambient degree too small for this commutator")
    for m in range(M + 1):
        z = basis(m, M)
        lhs = _add(DL(i, DL(j, z)), _scale(-1, DL(j, DL(i, z))))
        rhs = _scale(i - j, DL(i + j + 1, z))
        if lhs != rhs:
            return False
    return True


def _word_sum(i: int, x, z: list, reverse: bool) -> list:
    """sum_c x^{|c|} DL^{i_1-1}...DL^{i_k-1} z (reverse=True) or the other order."""
    total = [Fraction(0)] * len(z)
    for c in enumerate_words(i):
        order = c[::-1] if reverse else c
        v = z
        for letter in order:
            v = DL(letter - 1, v)
        total = _add(total, _scale(x ** len(c), v))
    return total


def operator_polynomial_check(i: int, x, M: int | None = None) -> bool:
    """sum_c x^{|c|} DL^{i_1-1}...DL^{i_k-1} = x D (L + x D)^{i-1} on z^0..z^M.

    Both products of the DL factors are summed and compared, since summing over
    all compositions makes the two orders agree.
    """
    if i < 1:
        raise InputError("i must be >= 1")
    x = Fraction(x)
    if M is None:
        M = i + 4
    if M < i:
        raise InputError("ambient degree must be >= i")
    for m in range(M + 1):
        z = basis(m, M)
        rhs = z
        for _ in range(i - 1):
            rhs = _add(L(rhs), _scale(x, D(rhs)))
        rhs = _scale(x, D(rhs))
        if _word_sum(i, x, z, reverse=True) != rhs:
            return False
        if _word_sum(i, x, z, reverse=False) != rhs:
            return False
    return True


def prop61_check(i: int, m: int) -> bool:
    """Collecting DL-word actions on z^m over compositions of i gives P~_i(X; m)."""
    from .displacement import gen_displacement_at

    collected = TensorPoly({c: apply_word_operator(c, m)[0] for c in enumerate_words(i)})
    if m < i:
        return not collected
    return collected == gen_displacement_at(i, m)


def I_op_value(a: CoeffPath, i: int, m: int) -> Fraction:
    """Scalar multiplying z^{m-i} in I_i(a)(z^m), by two independent routes."""
    from .returnmap import return_map

    if i < 1 or m < 0:
        raise InputError("need i >= 1 and m >= 0")
    if m < i:
        return Fraction(0)
    direct = sum(
        (p_factor(c, m) * iterated_integral(a, c) for c in enumerate_words(i)), Fraction(0)
    )
    ps = return_map(a, i).coeffs
    args = [Fraction(1)] + [factorial(k + 1) * ps[k - 1] for k in range(1, i + 1)]
    via_bell = Fraction(factorial(m - i + 1), factorial(m + 1)) * bell(m + 1, m - i + 1, args)
    if direct != via_bell:
        raise InternalError(f"I_{i}(a)(z^{m}) routes disagree: {direct} vs {via_bell}")
    return direct


def equ69_check(a: CoeffPath, max_m: int, max_i: int) -> bool:
    """F_a(T;t)(s(z,r)) = s(z, P(a)(rt)/t) coefficientwise in r^{m+1} t^i z^{m-i}.

    The right side is expanded directly: its r^{m+1} t^i coefficient is the
    u^i coefficient of (1 + sum_j p_j u^j)^{m-i+1}.
    """
    from .returnmap import return_map

    ps = return_map(a, max(max_i, 1)).coeffs
    for m in range(max_m + 1):
        for i in range(1, max_i + 1):
            lhs = I_op_value(a, i, m)
            if m < i:
                rhs = Fraction(0)
            else:
                series = [Fraction(1)] + list(ps[:i])
                power = [Fraction(1)] + [Fraction(0)] * i
                for _ in range(m - i + 1):
                    power = [
                        sum((power[j] * series[n - j] for j in range(n + 1)), Fraction(0))
                        for n in range(i + 1)
                    ]
                rhs = power[i]
            if lhs != rhs:
                return False
    return True
