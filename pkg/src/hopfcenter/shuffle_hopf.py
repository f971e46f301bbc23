"""The shuffle Hopf algebra K<A>: shuffle product, decatenation, antipode.

Words are tuples in the package-wide convention of :mod:`hopfcenter.words`:
``(i_1, ..., i_k)`` is the letter string ``alpha_{i_k} ... alpha_{i_1}``.
Decatenation therefore splits the letter string into a left block made of
the *last* tuple entries and a right block made of the *first* ones::

    coproduct((1, 2)) == (1, 2) (x) () + () (x) (1, 2) + (2,) (x) (1,)

The shuffle product and the antipode do not depend on reading direction.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .exactnum import UniPoly, format_rational
from .words import enumerate_words, format_word, lyndon_words, word_key

__all__ = [
    "TensorWordPoly",
    "WordPoly",
    "antipode",
    "antipode_poly",
    "coproduct",
    "coproduct_poly",
    "counit",
    "exact_rank",
    "shuffle",
    "shuffle_poly",
    "verify_radford",
]


def _coeff_str(c) -> tuple:
    """(sign, body) for a coefficient; body is None when the coefficient is +-1."""
    if isinstance(c, UniPoly):
        if c.degree == 0:
            c = c.coeffs[0]
        else:
            s = c.to_str("t")
            if len(c.coeffs) - c.coeffs.count(0) == 1 and not s.startswith("-"):
                return "+", s
            return "+", f"({s})"
    c = Fraction(c)
    sign = "-" if c < 0 else "+"
    a = abs(c)
    return sign, None if a == 1 else format_rational(a)


def format_linear(items, fmt_basis) -> str:
    parts = []
    for key, c in items:
        sign, body = _coeff_str(c)
        basis = fmt_basis(key)
        if body is None:
            text = basis if basis else "1"
        else:
            text = f"{body}*{basis}" if basis else body
        if not parts:
            parts.append(("-" if sign == "-" else "") + text)
        else:
            parts.append(f" {sign} {text}")
    return "".join(parts) if parts else "0"


class WordLinear:
    """Finite linear combination of words with coefficients in a commutative ring.

    Coefficients are Fractions or :class:`UniPoly` (polynomials in a
    deformation parameter ``t``).  Subclasses fix the product.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if isinstance(c, int):
                    c = Fraction(c)
                if c:
                    clean[tuple(w)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def monomial(cls, w, c=1):
        return cls({tuple(w): c})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def _like(self, terms):
        return type(self)(terms)

    def items(self):
        """(word, coefficient) pairs in canonical word order."""
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def coeff(self, w):
        return self.terms.get(tuple(w), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, WordLinear):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = self._like({(): other})
        if not isinstance(other, WordLinear):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        return self._like({w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, f):
        return self._like({w: f(c) for w, c in self.terms.items()})

    def degrees(self) -> set:
        return {sum(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int):
        return self._like({w: c for w, c in self.terms.items() if sum(w) == d})

    def max_letter(self) -> int:
        return max((max(w) for w in self.terms if w), default=0)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class WordPoly(WordLinear):
    """Element of the shuffle algebra; ``*`` is the shuffle product."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            return shuffle_poly(self, other)
        if isinstance(other, (int, Fraction, UniPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        result = WordPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def as_tensor(self):
        from .dual_algebra import TensorPoly

        return TensorPoly(self.terms)

    def __str__(self):
        return format_linear(self.items(), format_word)


# ---------------------------------------------------------------------------
# shuffle


@lru_cache(maxsize=200_000)
def _shuffle_words(u: tuple, v: tuple) -> tuple:
    # merge on last letters: u'a sh v'b = (u' sh v'b)a + (u'a sh v')b
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    a, b = u[-1], v[-1]
    for w, n in _shuffle_words(u[:-1], v):
        out[w + (a,)] += n
    for w, n in _shuffle_words(u, v[:-1]):
        out[w + (b,)] += n
    return tuple(out.items())


def shuffle(u, v) -> WordPoly:
    return WordPoly(dict(_shuffle_words(tuple(u), tuple(v))))


def shuffle_poly(p: WordLinear, q: WordLinear) -> WordPoly:
    out: dict = {}
    for u, cu in p.terms.items():
        for v, cv in q.terms.items():
            cuv = cu * cv
            for w, n in _shuffle_words(u, v):
                term = cuv * n
                out[w] = out[w] + term if w in out else term
    return WordPoly(out)


# ---------------------------------------------------------------------------
# coproduct and tensors


class TensorWordPoly:
    """Finite linear combination of pairs of words, representing K<A> (x) K<A>."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (u, v), c in terms.items():
                if isinstance(c, int):
                    c = Fraction(c)
                if c:
                    clean[(tuple(u), tuple(v))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorWordPoly is immutable")

    @classmethod
    def from_pairs(cls, pairs):
        """Build sum of p (x) q over pairs of WordLinear elements."""
        out: dict = {}
        for p, q in pairs:
            for u, cu in p.terms.items():
                for v, cv in q.terms.items():
                    c = cu * cv
                    key = (u, v)
                    out[key] = out[key] + c if key in out else c
        return cls(out)

    def __eq__(self, other):
        if not isinstance(other, TensorWordPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorWordPoly(out)

    def __neg__(self):
        return TensorWordPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return TensorWordPoly({k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        """Componentwise shuffle product on K<A> (x) K<A>."""
        if isinstance(other, (int, Fraction, UniPoly)):
            return self.scale(other)
        out: dict = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                c = c1 * c2
                for a, na in _shuffle_words(u1, u2):
                    for b, nb in _shuffle_words(v1, v2):
                        key = (a, b)
                        term = c * (na * nb)
                        out[key] = out[key] + term if key in out else term
        return TensorWordPoly(out)

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda kc: (word_key(kc[0][0]), word_key(kc[0][1])),
        )

    def __str__(self):
        return format_linear(
            self.items(), lambda k: f"{format_word(k[0])}(x){format_word(k[1])}"
        )

    __repr__ = __str__


def coproduct(w) -> TensorWordPoly:
    """Decatenation of the letter string ``alpha_{i_k} ... alpha_{i_1}``."""
    w = tuple(w)
    terms: dict = {}
    for j in range(len(w) + 1):
        key = (w[j:], w[:j])
        terms[key] = terms.get(key, 0) + 1
    return TensorWordPoly(terms)


def coproduct_poly(p: WordLinear) -> TensorWordPoly:
    out: dict = {}
    for w, c in p.terms.items():
        for j in range(len(w) + 1):
            key = (w[j:], w[:j])
            out[key] = out[key] + c if key in out else c
    return TensorWordPoly(out)


def antipode(w) -> WordPoly:
    w = tuple(w)
    return WordPoly({w[::-1]: (-1) ** len(w)})


def antipode_poly(p: WordLinear) -> WordPoly:
    return WordPoly({w[::-1]: c * (-1) ** len(w) for w, c in p.terms.items()})


def counit(p):
    if isinstance(p, tuple):
        return Fraction(1) if not p else Fraction(0)
    return p.coeff(())


# ---------------------------------------------------------------------------
# Radford's theorem at a fixed degree


def exact_rank(rows) -> int:
    """Rank of a list of rational row vectors by fraction-exact elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            if f:
                f /= pv
                row_r, row_p = m[r], m[rank]
                for c in range(col, ncols):
                    row_r[c] -= f * row_p[c]
        rank += 1
    return rank


def _lyndon_monomials(n: int, lyndon_by_degree: dict):
    """All multisets of Lyndon words whose degrees sum to n."""

    def rec(remaining, max_index, pool):
        if remaining == 0:
            yield ()
            return
        for idx in range(max_index, -1, -1):
            w = pool[idx]
            d = sum(w)
            if d <= remaining:
                for rest in rec(remaining - d, idx, pool):
                    yield (w,) + rest

    pool = [w for d in sorted(lyndon_by_degree) for w in lyndon_by_degree[d]]
    yield from rec(n, len(pool) - 1, pool)


def verify_radford(n: int) -> bool:
    """Shuffle monomials in Lyndon words form a basis of the degree-n component."""
    lyn = lyndon_words(n)
    by_degree: dict = {}
    for w in lyn:
        by_degree.setdefault(sum(w), []).append(w)
    basis = enumerate_words(n)
    index = {w: k for k, w in enumerate(basis)}
    rows = []
    for mono in _lyndon_monomials(n, by_degree):
        prod = WordPoly.one()
        for w in mono:
            prod = prod * WordPoly.monomial(w)
        row = [Fraction(0)] * len(basis)
        for w, c in prod.terms.items():
            row[index[w]] = c
        rows.append(row)
    dim = len(basis)
    return len(rows) == dim and exact_rank(rows) == dim


def radford_monomial_count(n: int) -> int:
    lyn = lyndon_words(n)
    by_degree: dict = {}
    for w in lyn:
        by_degree.setdefault(sum(w), []).append(w)
    return sum(1 for _ in _lyndon_monomials(n, by_degree))


__all__ += ["WordLinear", "format_linear", "radford_monomial_count"]
