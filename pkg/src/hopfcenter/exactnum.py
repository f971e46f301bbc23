"""Exact arithmetic: rationals, univariate and multivariate polynomials.

Rationals are :class:`fractions.Fraction`.  :class:`UniPoly` holds a dense
coefficient tuple (constant term first, no trailing zeros) and
:class:`MultiPoly` a sparse map from monomials to rationals over lazily
created named variables.  Both are immutable and hashable, so structural
equality coincides with mathematical equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InputError

__all__ = [
    "Fraction",
    "MultiPoly",
    "UniPoly",
    "binomial",
    "factorial",
    "format_rational",
    "moebius",
    "parse_rational",
    "stirling_first",
    "tvar",
]

binomial = comb

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.  Decimal notation is rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise InputError(f"not a rational string: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# combinatorial numbers


@lru_cache(maxsize=None)
def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k).

    Coefficient of x^k in the falling factorial x(x-1)...(x-n+1).
    """
    if n < 0 or k < 0:
        raise InputError("stirling_first needs nonnegative arguments")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return stirling_first(n - 1, k - 1) - (n - 1) * stirling_first(n - 1, k)


def moebius(n: int) -> int:
    if n < 1:
        raise InputError(f"moebius is defined for n >= 1, got {n}")
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


# ---------------------------------------------------------------------------
# univariate polynomials


def _fmt_coeff_term(c: Fraction, mono: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if mono:
        body = mono if a == 1 else f"{format_rational(a)}*{mono}"
    else:
        body = format_rational(a)
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


class UniPoly:
    """Polynomial with rational coefficients in a single variable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def var(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def __eq__(self, other):
        if _is_scalar(other):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_fmt_coeff_term(c, mono, not parts))
        return "".join(parts)

    __str__ = to_str

    @staticmethod
    def _coerce(other):
        if isinstance(other, UniPoly):
            return other
        if _is_scalar(other):
            return UniPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may live in any ring."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_linear(self, a, b) -> "UniPoly":
        """Return p(a*t + b)."""
        return self(UniPoly((b, a))) if self.coeffs else UniPoly()

    def shift(self, b) -> "UniPoly":
        """Return p(t + b)."""
        return self.compose_linear(1, b)

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "UniPoly":
        """Antiderivative vanishing at 0."""
        return UniPoly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)


# ---------------------------------------------------------------------------
# multivariate polynomials

_VAR_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


def _var_key(name: str):
    m = _VAR_RE.match(name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda ve: _var_key(ve[0])))


def _mono_str(mono) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def _mono_sort_key(mono):
    deg = sum(e for _, e in mono)
    return (deg, [(_var_key(v), -e) for v, e in mono])


class MultiPoly:
    """Sparse commutative polynomial over named variables, rational coefficients.

    Monomials are tuples of ``(variable, exponent)`` pairs sorted by variable
    name (with natural ordering of numeric suffixes, so ``t2 < t10``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): c})

    @staticmethod
    def _coerce(other):
        if isinstance(other, MultiPoly):
            return other
        if _is_scalar(other):
            return MultiPoly({(): other})
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if not self.terms:
            return hash(Fraction(0))
        if set(self.terms) == {()}:
            return hash(self.terms[()])
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return MultiPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        result = MultiPoly({(): 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def subs(self, mapping: dict):
        """Substitute values (from any ring) for variables.

        Variables absent from ``mapping`` stay symbolic.  When every variable
        is substituted by a scalar the result is a Fraction.
        """
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                base = mapping[v] if v in mapping else MultiPoly.var(v)
                for _ in range(e):
                    term = term * base
            total = total + term
        return total

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_sort_key, reverse=True):
            parts.append(_fmt_coeff_term(self.terms[mono], _mono_str(mono), not parts))
        return "".join(parts)


def tvar(i: int):
    """FdB generator t_i as a MultiPoly; t_0 is the constant 1."""
    if i == 0:
        return MultiPoly.const(1)
    return MultiPoly.var(f"t{i}")
