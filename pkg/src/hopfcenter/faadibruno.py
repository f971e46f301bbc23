"""Bell polynomials and the Faa di Bruno Hopf algebra K[t_1, t_2, ...].

The coproduct is the co-opposite one,

    Delta(t_i) = sum_j t_j (x) ((j+1)!/(i+1)!) B_{i+1,j+1}(1, 2! t_1, ..., (i-j+1)! t_{i-j}),

with t_0 = 1.  Characters are stored by their generator values c_1..c_N and
correspond to the series r + sum c_i r^{i+1} (the map :func:`theta`).

:func:`bell` and :func:`genbell_eval` take a generic ring: the arguments may
be numbers, :class:`MultiPoly`, or shuffle-algebra elements, as long as they
support ``+``, ``*`` and multiplication by rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InputError
from .exactnum import MultiPoly, _mono_mul, format_rational, tvar

__all__ = [
    "FdBFunctional",
    "PowerSeriesMap",
    "bell",
    "bell_partitions",
    "compose_series",
    "fdb_antipode",
    "fdb_coproduct",
    "fdb_coproduct_monomial",
    "fdb_convolve",
    "genbell",
    "genbell_eval",
    "invert_series",
    "primitive_word_value",
    "theta",
]


# ---------------------------------------------------------------------------
# Bell polynomials


@lru_cache(maxsize=None)
def bell_partitions(r: int, s: int) -> tuple:
    """Multiplicity vectors (k_1..k_m), m = r-s+1, with sum k = s and sum j k_j = r.

    Each entry is ``(ks, coeff)`` with coeff = r! / prod(k_j! (j!)^k_j).
    """
    m = r - s + 1
    out = []

    def rec(j, rem_parts, rem_weight, acc):
        if j > m:
            if rem_parts == 0 and rem_weight == 0:
                out.append(tuple(acc))
            return
        for k in range(min(rem_parts, rem_weight // j) + 1):
            acc.append(k)
            rec(j + 1, rem_parts - k, rem_weight - j * k, acc)
            acc.pop()

    rec(1, s, r, [])
    result = []
    for ks in out:
        den = 1
        for j, k in enumerate(ks, start=1):
            den *= factorial(k) * factorial(j) ** k
        result.append((ks, Fraction(factorial(r), den)))
    return tuple(result)


def bell(r: int, s: int, args, one=None):
    """Partial Bell polynomial B_{r,s}(x_1, ..., x_{r-s+1}) evaluated at ``args``.

    ``B_{0,0} = 1`` and ``B_{r,0} = 0`` for r >= 1.  ``one`` is the unit of the
    coefficient ring, used only for those degenerate cases (default 1).
    """
    if r < 0 or s < 0:
        raise InputError("bell needs nonnegative indices")
    if s > r:
        raise InputError(f"bell needs s <= r, got r={r}, s={s}")
    if s == 0:
        unit = Fraction(1) if one is None else one
        return unit if r == 0 else unit * 0
    args = list(args)
    m = r - s + 1
    if len(args) < m:
        raise InputError(f"B_{{{r},{s}}} needs {m} arguments, got {len(args)}")
    powers: dict = {}

    def power(j, k):
        key = (j, k)
        if key not in powers:
            powers[key] = args[j - 1] if k == 1 else power(j, k - 1) * args[j - 1]
        return powers[key]

    total = None
    for ks, coeff in bell_partitions(r, s):
        prod = None
        for j, k in enumerate(ks, start=1):
            if k:
                p = power(j, k)
                prod = p if prod is None else prod * p
        term = coeff * prod
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def _int_partitions(k: int) -> tuple:
    """Multiplicity vectors (l_1..l_k) with sum j l_j = k."""
    out = []

    def rec(j, rem, acc):
        if j > k:
            if rem == 0:
                out.append(tuple(acc))
            return
        for l in range(rem // j + 1):
            acc.append(l)
            rec(j + 1, rem - j * l, acc)
            acc.pop()

    rec(1, k, [])
    return tuple(out)


def _falling(t, n: int):
    """t (t-1) ... (t-n+1); 1 for n = 0.  ``t`` may be any ring element."""
    acc = None
    for l in range(n):
        acc = t - l if acc is None else acc * (t - l)
    return Fraction(1) if acc is None else acc


def genbell_eval(k: int, args, t):
    """Evaluate B_k(x_1, ..., x_k, t) = sum (t)_L prod x_j^{l_j}/l_j! over sum j l_j = k.

    (t)_L is the falling factorial with L = sum l_j.  For k = 0 this is 1.
    """
    if k < 0:
        raise InputError("genbell needs k >= 0")
    if k == 0:
        return Fraction(1)
    args = list(args)
    if len(args) < k:
        raise InputError(f"genbell_{k} needs {k} arguments")
    total = None
    for ls in _int_partitions(k):
        L = sum(ls)
        prod = None
        den = 1
        for j, l in enumerate(ls, start=1):
            den *= factorial(l)
            for _ in range(l):
                prod = args[j - 1] if prod is None else prod * args[j - 1]
        coeff = _falling(t, L)
        term = (coeff * Fraction(1, den)) * prod
        total = term if total is None else total + term
    return total


def genbell(k: int) -> MultiPoly:
    """B_k as a polynomial in t1..tk and t."""
    return genbell_eval(k, [tvar(j) for j in range(1, k + 1)], MultiPoly.var("t")) if k else MultiPoly.const(1)


# ---------------------------------------------------------------------------
# Hopf structure


def _right_factor(i: int, j: int, args) -> object:
    """((j+1)!/(i+1)!) B_{i+1,j+1}(1, 2! x_1, ..., (i-j+1)! x_{i-j})."""
    scaled = [Fraction(1)] + [factorial(k + 1) * args[k - 1] for k in range(1, i - j + 1)]
    return Fraction(factorial(j + 1), factorial(i + 1)) * bell(i + 1, j + 1, scaled)


@lru_cache(maxsize=None)
def fdb_coproduct(i: int) -> tuple:
    """Delta(t_i) as a tuple of (left, right) MultiPoly pairs, j = 0..i."""
    if i < 1:
        raise InputError("fdb_coproduct needs i >= 1")
    ts = [tvar(k) for k in range(1, i + 1)]
    out = []
    for j in range(i + 1):
        right = _right_factor(i, j, ts)
        if not isinstance(right, MultiPoly):
            right = MultiPoly.const(right)
        out.append((tvar(j), right))
    return tuple(out)


@lru_cache(maxsize=None)
def fdb_antipode(i: int) -> MultiPoly:
    """S(t_i) = (1/(i+1)!) sum_{j=1}^{i} (-1)^j B_{i+j,j}(0, 2! t_1, ..., (i+1)! t_i)."""
    if i < 1:
        raise InputError("fdb_antipode needs i >= 1")
    args = [MultiPoly.const(0)] + [factorial(k + 1) * tvar(k) for k in range(1, i + 1)]
    total = MultiPoly()
    for j in range(1, i + 1):
        total = total + (-1) ** j * bell(i + j, j, args)
    return total / factorial(i + 1)


def _tensor_from_pairs(pairs) -> dict:
    out: dict = {}
    for left, right in pairs:
        for ml, cl in left.terms.items():
            for mr, cr in right.terms.items():
                key = (ml, mr)
                out[key] = out.get(key, 0) + cl * cr
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def fdb_coproduct_monomial(mono: tuple) -> tuple:
    """Delta of a monomial (MultiPoly key) as ((left_mono, right_mono), coeff) pairs."""
    acc = {((), ()): Fraction(1)}
    for var, e in mono:
        i = int(var[1:])
        gen = _tensor_from_pairs(fdb_coproduct(i))
        for _ in range(e):
            nxt: dict = {}
            for (a, b), c in acc.items():
                for (x, y), d in gen.items():
                    key = (_mono_mul(a, x), _mono_mul(b, y))
                    nxt[key] = nxt.get(key, 0) + c * d
            acc = {k: v for k, v in nxt.items() if v}
    return tuple(acc.items())


def mono_weight(mono) -> int:
    return sum(int(v[1:]) * e for v, e in mono)


@lru_cache(maxsize=None)
def monomials_up_to(N: int) -> tuple:
    """All monomials in t_1, t_2, ... of weight <= N (MultiPoly keys)."""
    out = [()]
    for w in range(1, N + 1):
        for ls in _int_partitions(w):
            out.append(tuple((f"t{j}", l) for j, l in enumerate(ls, start=1) if l))
    return tuple(out)


class FdBFunctional:
    """Linear form on K[t_1, t_2, ...] known on all monomials of weight <= N."""

    __slots__ = ("N", "values")

    def __init__(self, N: int, values=None):
        vals = {m: Fraction(0) for m in monomials_up_to(N)}
        if values:
            for m, v in values.items():
                if m in vals:
                    vals[m] = Fraction(v)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("FdBFunctional is immutable")

    @classmethod
    def unit(cls, N: int):
        return cls(N, {(): 1})

    @classmethod
    def primitive(cls, i: int, N: int):
        """t'_i: 1 on t_i, 0 on every other monomial."""
        return cls(N, {((f"t{i}", 1),): 1})

    @classmethod
    def character(cls, gen_values):
        """Multiplicative extension of t_i -> gen_values[i-1]."""
        gen_values = [Fraction(v) for v in gen_values]
        N = len(gen_values)
        vals = {}
        for m in monomials_up_to(N):
            v = Fraction(1)
            for var, e in m:
                v *= gen_values[int(var[1:]) - 1] ** e
            vals[m] = v
        return cls(N, vals)

    def __call__(self, p) -> Fraction:
        """Value on a monomial key or a MultiPoly."""
        if isinstance(p, MultiPoly):
            return sum((c * self.values[m] for m, c in p.terms.items()), Fraction(0))
        return self.values[p]

    def generator_values(self) -> list:
        return [self.values[((f"t{i}", 1),)] for i in range(1, self.N + 1)]

    def __eq__(self, other):
        return isinstance(other, FdBFunctional) and self.N == other.N and self.values == other.values

    def __hash__(self):
        return hash((self.N, frozenset(self.values.items())))

    def __add__(self, other):
        return FdBFunctional(self.N, {m: v + other.values[m] for m, v in self.values.items()})

    def __sub__(self, other):
        return FdBFunctional(self.N, {m: v - other.values[m] for m, v in self.values.items()})

    def scale(self, s):
        return FdBFunctional(self.N, {m: v * s for m, v in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, FdBFunctional):
            return self.convolve(other)
        return self.scale(other)

    def convolve(self, other) -> "FdBFunctional":
        if other.N != self.N:
            raise InputError("truncation orders differ")
        fv, gv = self.values, other.values
        out = {}
        for m in fv:
            s = Fraction(0)
            for (a, b), c in fdb_coproduct_monomial(m):
                x = fv[a]
                if x:
                    y = gv[b]
                    if y:
                        s += c * x * y
            out[m] = s
        return FdBFunctional(self.N, out)


@lru_cache(maxsize=None)
def _primitive_word_functional(c: tuple, N: int) -> FdBFunctional:
    # t'_{i_k} * ... * t'_{i_1} = (t'_{i_k} * ... * t'_{i_2}) * t'_{i_1}
    if len(c) == 1:
        return FdBFunctional.primitive(c[0], N)
    return _primitive_word_functional(c[1:], N).convolve(FdBFunctional.primitive(c[0], N))


def primitive_word_value(c, n: int) -> Fraction:
    """(t'_{i_k} * ... * t'_{i_1})(t_n) for the word c = (i_1, ..., i_k)."""
    c = tuple(c)
    if not c:
        return Fraction(1 if n == 0 else 0)
    if n < sum(c):
        return Fraction(0)
    return _primitive_word_functional(c, n)(((f"t{n}", 1),))


def fdb_convolve(a, b) -> list:
    """Generator values of a * b for characters given by generator values."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    if len(a) != len(b):
        raise InputError("characters must share the truncation order")
    N = len(a)
    out = []
    for i in range(1, N + 1):
        s = Fraction(0)
        for j in range(i + 1):
            aj = Fraction(1) if j == 0 else a[j - 1]
            if aj:
                s += aj * _right_factor(i, j, b)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# truncated formal diffeomorphisms


class PowerSeriesMap:
    """The series r + c_1 r^2 + ... + c_N r^{N+1}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeriesMap is immutable")

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @classmethod
    def identity(cls, N: int):
        return cls([0] * N)

    def coeff(self, i: int) -> Fraction:
        """c_i, the coefficient of r^{i+1}."""
        return self.coeffs[i - 1]

    def is_identity(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, PowerSeriesMap) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, r: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = (acc + float(c)) * r
        return r + acc * r

    def __str__(self):
        parts = ["r"]
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = f"r^{i + 1}"
            parts.append(f" {sign} {mono}" if a == 1 else f" {sign} {format_rational(a)}*{mono}")
        return "".join(parts)

    def __repr__(self):
        return f"PowerSeriesMap({self})"

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}


def theta(values) -> PowerSeriesMap:
    return PowerSeriesMap(values)


def _dense(f: PowerSeriesMap) -> list:
    # coefficients of r^0 .. r^{N+1}
    return [Fraction(0), Fraction(1)] + list(f.coeffs)


def _mul_trunc(p: list, q: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p):
        if a == 0 or i > n:
            continue
        for j, b in enumerate(q):
            if i + j > n:
                break
            out[i + j] += a * b
    return out


def compose_series(f: PowerSeriesMap, g: PowerSeriesMap) -> PowerSeriesMap:
    """Coefficients of f(g(r)) modulo r^{N+2}, by direct power expansion."""
    if f.N != g.N:
        raise InputError("series must share the truncation order")
    n = f.N + 1
    fd, gd = _dense(f), _dense(g)
    result = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        power = _mul_trunc(power, gd, n)
        if fd[k]:
            for m in range(n + 1):
                result[m] += fd[k] * power[m]
    return PowerSeriesMap(result[2:])


def invert_series(f: PowerSeriesMap) -> PowerSeriesMap:
    """Compositional inverse, solved one coefficient at a time."""
    g = [Fraction(0)] * f.N
    for k in range(f.N):
        # the r^{k+2} coefficient of f(g) is g_k + (terms in g_0..g_{k-1})
        probe = compose_series(f, PowerSeriesMap(g)).coeffs[k]
        g[k] = -probe
    return PowerSeriesMap(g)
