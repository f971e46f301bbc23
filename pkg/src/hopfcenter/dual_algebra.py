"""The graded dual K<X>: concatenation polynomials and truncated functionals.

A :class:`TensorPoly` stores the word ``(i_1, ..., i_k)`` for the monomial
``X_{i_k} ... X_{i_1}``, so the pairing with :class:`WordPoly` is the plain
coefficient match.  A :class:`TruncatedFunctional` holds the values of a
linear form on every word of degree <= N; characters (Chen series) and
infinitesimal characters both live there.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError, InputError
from .shuffle_hopf import WordLinear, _shuffle_words, format_linear
from .words import p_factor, word_key, words_up_to

__all__ = [
    "I",
    "TensorPoly",
    "TruncatedFunctional",
    "X",
    "bracket",
    "concat_product",
    "convolution",
    "exp_functional",
    "gamma",
    "identity_functional",
    "inverse_character",
    "is_center_component",
    "is_group_like",
    "is_infinitesimal",
    "lie_nest",
    "log_functional",
    "pi_projection",
    "rho_pair",
    "truncate_alphabet",
]


def _format_monomial(w) -> str:
    if not w:
        return "I"
    return "*".join(f"X{i}" for i in reversed(w))


class TensorPoly(WordLinear):
    """Noncommutative polynomial in I, X_1, X_2, ...; ``*`` is concatenation."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            return concat_product(self, other)
        if isinstance(other, WordLinear):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, n: int):
        out = TensorPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def as_shuffle(self):
        from .shuffle_hopf import WordPoly

        return WordPoly(self.terms)

    def __str__(self):
        return format_linear(self.items(), _format_monomial)


def X(i: int) -> TensorPoly:
    if i < 1:
        raise InputError("X_i needs i >= 1")
    return TensorPoly({(i,): 1})


def I() -> TensorPoly:  # noqa: E743 - the unit of K<X>
    return TensorPoly.one()


def concat_product(p: TensorPoly, q: TensorPoly) -> TensorPoly:
    """Product of X-monomials: monomial(u) * monomial(v) is the word v + u."""
    out: dict = {}
    for u, cu in p.terms.items():
        for v, cv in q.terms.items():
            w = v + u
            c = cu * cv
            out[w] = out[w] + c if w in out else c
    return TensorPoly(out)


def bracket(p: TensorPoly, q: TensorPoly) -> TensorPoly:
    return p * q - q * p


def lie_nest(c) -> TensorPoly:
    """Right-nested commutator [X_{i_k}, [..., [X_{i_2}, X_{i_1}]...]]."""
    c = tuple(c)
    if not c:
        raise InputError("lie_nest needs a nonempty word")
    acc = X(c[0])
    for i in c[1:]:
        acc = bracket(X(i), acc)
    return acc


def gamma(c) -> Fraction:
    """(i_2 - i_1)(i_3 - i_2 - i_1)...(i_k - i_{k-1} - ... - i_1)."""
    c = tuple(c)
    if not c:
        raise InputError("gamma needs a nonempty word")
    out = 1
    partial = c[0]
    for i in c[1:]:
        out *= i - partial
        partial += i
    return Fraction(out)


def _homogeneous_degree(g: WordLinear) -> int | None:
    degs = g.degrees()
    if len(degs) > 1:
        raise InputError(f"expected a homogeneous polynomial, got degrees {sorted(degs)}")
    if not degs:
        return None
    (d,) = degs
    if d < 1:
        raise InputError("expected positive degree")
    return d


def rho_pair(g: WordLinear) -> Fraction:
    """Sum over words c of g of coeff(c) * p_c(i), with i the degree of g."""
    d = _homogeneous_degree(g)
    if d is None:
        return Fraction(0)
    return sum((c * p_factor(w, d) for w, c in g.terms.items()), Fraction(0))


def pi_projection(g: TensorPoly) -> TensorPoly:
    d = _homogeneous_degree(g)
    if d is None:
        return g
    return g - TensorPoly({(d,): rho_pair(g)})


def is_center_component(g: WordLinear) -> bool:
    """Degree-wise formal-center condition: the homogeneous g lies in ker rho."""
    return rho_pair(g) == 0


def truncate_alphabet(p: WordLinear, N: int):
    """Drop every term containing a letter larger than N."""
    if N < 1:
        raise InputError("N must be >= 1")
    return type(p)({w: c for w, c in p.terms.items() if all(i <= N for i in w)})


# ---------------------------------------------------------------------------
# truncated functionals


class TruncatedFunctional:
    """Linear form on K<A> known on all words of degree <= N."""

    __slots__ = ("N", "values")

    def __init__(self, N: int, values=None):
        if N < 0:
            raise InputError("truncation order must be nonnegative")
        vals = {w: Fraction(0) for w in words_up_to(N)}
        if values:
            for w, v in values.items():
                w = tuple(w)
                if sum(w) > N:
                    continue
                if w not in vals:
                    raise InputError(f"not a word: {w!r}")
                vals[w] = Fraction(v)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedFunctional is immutable")

    @classmethod
    def from_poly(cls, p: WordLinear, N: int):
        """Functional given by pairing against ``p`` (coefficient lookup)."""
        return cls(N, {w: c for w, c in p.terms.items() if sum(w) <= N})

    def __call__(self, w) -> Fraction:
        w = tuple(w)
        if sum(w) > self.N:
            raise InputError(f"word {w} beyond truncation order {self.N}")
        return self.values[w]

    def pair(self, p: WordLinear) -> Fraction:
        return sum((c * self(w) for w, c in p.terms.items()), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, TruncatedFunctional):
            return NotImplemented
        return self.N == other.N and self.values == other.values

    def __hash__(self):
        return hash((self.N, frozenset(self.values.items())))

    def _check(self, other):
        if not isinstance(other, TruncatedFunctional):
            raise InputError("expected a TruncatedFunctional")
        if other.N != self.N:
            raise InputError(f"truncation orders differ: {self.N} vs {other.N}")

    def __add__(self, other):
        self._check(other)
        return TruncatedFunctional(self.N, {w: v + other.values[w] for w, v in self.values.items()})

    def __sub__(self, other):
        self._check(other)
        return TruncatedFunctional(self.N, {w: v - other.values[w] for w, v in self.values.items()})

    def __neg__(self):
        return TruncatedFunctional(self.N, {w: -v for w, v in self.values.items()})

    def scale(self, s):
        return TruncatedFunctional(self.N, {w: v * s for w, v in self.values.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if isinstance(other, TruncatedFunctional):
            return convolution(self, other)
        return self.scale(other)

    def items(self):
        return sorted(self.values.items(), key=lambda wv: word_key(wv[0]))

    def nonzero(self) -> dict:
        return {w: v for w, v in self.values.items() if v}

    def __repr__(self):
        shown = ", ".join(f"{w}: {v}" for w, v in self.items() if v)
        return f"TruncatedFunctional(N={self.N}, {{{shown}}})"


def identity_functional(N: int) -> TruncatedFunctional:
    """The convolution unit: 1 on the empty word, 0 elsewhere."""
    return TruncatedFunctional(N, {(): 1})


def convolution(f: TruncatedFunctional, g: TruncatedFunctional) -> TruncatedFunctional:
    """(f*g)(w) = sum of f(u) g(v) over decatenations of the letter string w = uv.

    In tuple terms the left letter block u is the tail ``w[j:]``.
    """
    f._check(g)
    fv, gv = f.values, g.values
    out = {}
    for w in fv:
        s = Fraction(0)
        for j in range(len(w) + 1):
            a = fv[w[j:]]
            if a:
                b = gv[w[:j]]
                if b:
                    s += a * b
        out[w] = s
    return TruncatedFunctional(f.N, out)


def _shuffle_pairs(N: int):
    ws = [w for w in words_up_to(N) if w]
    for a, u in enumerate(ws):
        for v in ws[a:]:
            if sum(u) + sum(v) <= N:
                yield u, v


def is_group_like(f: TruncatedFunctional) -> bool:
    if f.values[()] != 1:
        return False
    for u, v in _shuffle_pairs(f.N):
        rhs = sum((n * f.values[w] for w, n in _shuffle_words(u, v)), Fraction(0))
        if f.values[u] * f.values[v] != rhs:
            return False
    return True


def is_infinitesimal(f: TruncatedFunctional) -> bool:
    if f.values[()] != 0:
        return False
    for u, v in _shuffle_pairs(f.N):
        if sum((n * f.values[w] for w, n in _shuffle_words(u, v)), Fraction(0)) != 0:
            return False
    return True


def inverse_character(f: TruncatedFunctional) -> TruncatedFunctional:
    """f composed with the antipode; the convolution inverse of a character."""
    if not is_group_like(f):
        raise DomainError("inverse_character needs a group-like functional")
    return TruncatedFunctional(
        f.N, {w: (-1) ** len(w) * f.values[w[::-1]] for w in f.values}
    )


def exp_functional(f: TruncatedFunctional) -> TruncatedFunctional:
    if f.values[()] != 0:
        raise DomainError("exp needs f(empty word) = 0")
    result = identity_functional(f.N)
    power = identity_functional(f.N)
    # f is nilpotent of order N+1 in the truncated algebra
    for n in range(1, f.N + 1):
        power = convolution(power, f)
        result = result + power.scale(Fraction(1, factorial(n)))
    return result


def log_functional(f: TruncatedFunctional) -> TruncatedFunctional:
    if f.values[()] != 1:
        raise DomainError("log needs f(empty word) = 1")
    h = f - identity_functional(f.N)
    result = TruncatedFunctional(f.N)
    power = identity_functional(f.N)
    for n in range(1, f.N + 1):
        power = convolution(power, h)
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result
