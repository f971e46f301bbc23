"""Words over the graded alphabet {alpha_i : i >= 1}.

A word is a plain tuple of positive integers.  Letter ``i`` has degree ``i``,
so a word of degree ``n`` is a composition of ``n``.  Throughout the package
the tuple ``(i_1, ..., i_k)`` stands for the letter string
``alpha_{i_k} ... alpha_{i_1}`` (equivalently the monomial
``X_{i_k} ... X_{i_1}``): ``i_1`` is the earliest letter in time, matching the
iterated integral ``I_{i_1,...,i_k}``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InputError, InternalError
from .exactnum import moebius

Word = tuple

EMPTY: Word = ()


def degree(w) -> int:
    return sum(w)


def word_key(w):
    """Canonical order: by degree, then length, then lexicographically."""
    return (sum(w), len(w), tuple(w))


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return tuple(sorted(out, key=word_key))


def enumerate_words(n: int) -> list:
    """All words of degree ``n`` in canonical order (``[()]`` for n = 0)."""
    if n < 0:
        raise InputError("degree must be nonnegative")
    return list(_compositions(n))


def words_up_to(n: int) -> list:
    out = []
    for d in range(n + 1):
        out.extend(_compositions(d))
    return out


def format_word(w) -> str:
    return "[" + ".".join(str(i) for i in w) + "]"


def parse_word(text: str) -> Word:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise InputError(f"not a word: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    try:
        letters = tuple(int(part) for part in body.split("."))
    except ValueError as exc:
        raise InputError(f"not a word: {text!r}") from exc
    if any(i < 1 for i in letters):
        raise InputError(f"letters must be positive: {text!r}")
    return letters


def p_factor(c, t):
    """Falling product (t-i_1+1)(t-i_1-i_2+1)...(t-i+1) over partial sums of ``c``.

    ``t`` may be a Fraction/int or any ring element supporting ``+ int`` and
    ``*`` (e.g. :class:`~hopfcenter.exactnum.UniPoly`).
    """
    if not c:
        raise InputError("p_factor needs a nonempty composition")
    acc = None
    partial = 0
    for i in c:
        partial += i
        factor = t - partial + 1
        acc = factor if acc is None else acc * factor
    if isinstance(acc, int):
        acc = Fraction(acc)
    return acc


def is_lyndon(w) -> bool:
    w = tuple(w)
    if not w:
        raise InputError("is_lyndon is undefined on the empty word")
    k = len(w)
    rotations = [w[j:] + w[:j] for j in range(k)]
    if len(set(rotations)) != k:
        return False
    return all(w < rot for rot in rotations[1:])


def lyndon_words(max_degree: int) -> list:
    """Lyndon words of degree <= max_degree, grouped by degree, lex order within."""
    if max_degree < 1:
        raise InputError("max_degree must be >= 1")
    out = []
    for n in range(1, max_degree + 1):
        out.extend(sorted(w for w in _compositions(n) if is_lyndon(w)))
    return out


def witt_dimension(n: int) -> int:
    """Dimension of the degree-n homogeneous part of the free Lie algebra on X_1, X_2, ..."""
    if n < 1:
        raise InputError("witt_dimension needs n >= 1")
    total = sum((2 ** (n // d) - 1) * moebius(d) for d in range(1, n + 1) if n % d == 0)
    q, rem = divmod(total, n)
    if rem:
        raise InternalError(f"non-integral Witt dimension at n={n}")
    return q
