"""Piecewise-polynomial coefficient paths and their iterated integrals.

A :class:`CoeffPath` carries a horizon T and finitely many coefficient
functions a_1, a_2, ... on [0, T], each a :class:`PiecewisePolyFn` with
rational breakpoints and rational polynomial pieces.  All integrals are exact.

Path product, following the semigroup of the ODE: ``path_concat(a, b)`` runs
``b`` on [0, T/2] and then ``a`` on (T/2, T], both time-compressed.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from fractions import Fraction

from .dual_algebra import TruncatedFunctional
from .errors import InputError
from .exactnum import UniPoly, format_rational, parse_rational
from .words import words_up_to

__all__ = [
    "CoeffPath",
    "PiecewisePolyFn",
    "chen_map",
    "dump_path",
    "iterated_integral",
    "load_path",
    "path_concat",
    "path_from_json",
    "path_inverse",
    "path_to_json",
]


class PiecewisePolyFn:
    """Function on [x_0, x_p] given by one UniPoly per interval [x_k, x_{k+1}]."""

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints, pieces):
        bps = tuple(Fraction(b) for b in breakpoints)
        pcs = tuple(p if isinstance(p, UniPoly) else UniPoly(p) for p in pieces)
        if len(bps) < 2 or len(pcs) != len(bps) - 1:
            raise InputError("need p+1 breakpoints for p pieces")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise InputError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewisePolyFn is immutable")

    @classmethod
    def constant(cls, c, T):
        return cls((0, T), (UniPoly.const(c),))

    @classmethod
    def zero(cls, T):
        return cls((0, T), (UniPoly(),))

    @property
    def T(self) -> Fraction:
        return self.breakpoints[-1]

    def is_zero(self) -> bool:
        return not any(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewisePolyFn):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.breakpoints, self.pieces))

    def piece_at(self, x) -> UniPoly:
        k = bisect_right(self.breakpoints, x) - 1
        k = min(max(k, 0), len(self.pieces) - 1)
        return self.pieces[k]

    def __call__(self, x):
        """Value at x; at an interior breakpoint the right-hand piece is used."""
        return self.piece_at(x)(x)

    def refine(self, grid) -> "PiecewisePolyFn":
        """Same function on a finer grid containing all current breakpoints."""
        grid = tuple(sorted(set(Fraction(g) for g in grid) | set(self.breakpoints)))
        pieces = []
        for a, b in zip(grid, grid[1:]):
            pieces.append(self.piece_at((a + b) / 2))
        return PiecewisePolyFn(grid, pieces)

    def simplify(self) -> "PiecewisePolyFn":
        """Merge neighbouring intervals carrying the same polynomial."""
        bps = [self.breakpoints[0]]
        pcs = []
        for b, p in zip(self.breakpoints[1:], self.pieces):
            if pcs and pcs[-1] == p:
                bps[-1] = b
            else:
                pcs.append(p)
                bps.append(b)
        return PiecewisePolyFn(bps, pcs)

    def sup_bound(self) -> Fraction:
        """Upper bound for |f| on its domain: sum of |c_k| max(|x_a|,|x_b|)^k per piece."""
        best = Fraction(0)
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            m = max(abs(a), abs(b))
            best = max(best, sum(abs(c) * m ** k for k, c in enumerate(p.coeffs)))
        return best

    def __repr__(self):
        parts = ", ".join(
            f"[{format_rational(a)},{format_rational(b)}]: {p}"
            for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces)
        )
        return f"PiecewisePolyFn({parts})"


class CoeffPath:
    """Horizon T and coefficient functions a_i (absent indices are zero)."""

    __slots__ = ("T", "coeffs", "_cache")

    def __init__(self, T, coeffs=None):
        T = Fraction(T)
        if T <= 0:
            raise InputError("horizon T must be positive")
        clean = {}
        for i, fn in (coeffs or {}).items():
            if not isinstance(i, int) or i < 1:
                raise InputError(f"coefficient index must be a positive integer, got {i!r}")
            if fn.breakpoints[0] != 0 or fn.T != T:
                raise InputError(f"a_{i} is not defined on [0, {T}]")
            if not fn.is_zero():
                clean[i] = fn
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("CoeffPath is immutable")

    @classmethod
    def zero(cls, T=1):
        return cls(T)

    @classmethod
    def constant(cls, values: dict, T=1):
        """a_i constant equal to values[i] on [0, T]."""
        return cls(T, {i: PiecewisePolyFn.constant(c, T) for i, c in values.items()})

    @property
    def max_index(self) -> int:
        return max(self.coeffs, default=0)

    def a(self, i: int) -> PiecewisePolyFn:
        return self.coeffs.get(i) or PiecewisePolyFn.zero(self.T)

    def grid(self) -> tuple:
        pts = {Fraction(0), self.T}
        for fn in self.coeffs.values():
            pts.update(fn.breakpoints)
        return tuple(sorted(pts))

    def __eq__(self, other):
        if not isinstance(other, CoeffPath):
            return NotImplemented
        if self.T != other.T or set(self.coeffs) != set(other.coeffs):
            return False
        return all(
            self.coeffs[i].simplify() == other.coeffs[i].simplify() for i in self.coeffs
        )

    def __hash__(self):
        return hash((self.T, tuple((i, fn.simplify()) for i, fn in self.coeffs.items())))

    def __repr__(self):
        return f"CoeffPath(T={format_rational(self.T)}, {self.coeffs})"


# ---------------------------------------------------------------------------
# semigroup operations


def _rescale(fn: PiecewisePolyFn, scale, shift, lo, hi):
    """Pieces of x -> 2 fn(scale*x + shift) on [lo, hi], where fn lives on [0, T]."""
    bps = [(b - shift) / scale for b in fn.breakpoints]
    pieces = [p.compose_linear(scale, shift) * 2 for p in fn.pieces]
    assert bps[0] == lo and bps[-1] == hi
    return bps, pieces


def path_concat(a: CoeffPath, b: CoeffPath) -> CoeffPath:
    """(a*b)_i(x) = 2 b_i(2x) on [0, T/2] and 2 a_i(2x - T) on (T/2, T]."""
    if a.T != b.T:
        raise InputError(f"horizons differ: {a.T} vs {b.T}")
    T = a.T
    half = T / 2
    out = {}
    for i in sorted(set(a.coeffs) | set(b.coeffs)):
        bb, bp = _rescale(b.a(i), Fraction(2), Fraction(0), 0, half)
        ab, ap = _rescale(a.a(i), Fraction(2), -T, half, T)
        out[i] = PiecewisePolyFn(bb + ab[1:], bp + ap).simplify()
    return CoeffPath(T, out)


def path_inverse(a: CoeffPath) -> CoeffPath:
    """a_i^{-1}(x) = -a_i(T - x)."""
    T = a.T
    out = {}
    for i, fn in a.coeffs.items():
        bps = [T - b for b in reversed(fn.breakpoints)]
        pieces = [-p.compose_linear(-1, T) for p in reversed(fn.pieces)]
        out[i] = PiecewisePolyFn(bps, pieces)
    return CoeffPath(T, out)


# ---------------------------------------------------------------------------
# iterated integrals


def _antiderivative(grid, pieces):
    """Continuous antiderivative vanishing at grid[0], piece by piece."""
    out = []
    acc = Fraction(0)
    for (lo, hi), p in zip(zip(grid, grid[1:]), pieces):
        A = p.antiderivative()
        piece = A - A(lo) + acc
        out.append(piece)
        acc = piece(hi)
    return out


def _prefix(a: CoeffPath, c: tuple):
    """G_k for the word c: G_0 = 1, G_j(x) = int_0^x a_{i_j}(s) G_{j-1}(s) ds."""
    cache = a._cache
    key = ("G", c)
    if key in cache:
        return cache[key]
    grid = a.grid()
    if not c:
        res = tuple(UniPoly.const(1) for _ in grid[1:])
    else:
        prev = _prefix(a, c[:-1])
        i = c[-1]
        if i not in a.coeffs:
            res = tuple(UniPoly() for _ in grid[1:])
        else:
            fn = a.coeffs[i].refine(grid)
            res = tuple(_antiderivative(grid, [f * g for f, g in zip(fn.pieces, prev)]))
    cache[key] = res
    return res


def iterated_integral(a: CoeffPath, c) -> Fraction:
    """I_{i_1..i_k}(a): integral of a_{i_k}(s_k)...a_{i_1}(s_1) over 0 <= s_1 <= ... <= s_k <= T."""
    c = tuple(c)
    if not c:
        return Fraction(1)
    if any(i not in a.coeffs for i in c):
        return Fraction(0)
    return _prefix(a, c)[-1](a.T)


def chen_map(a: CoeffPath, N: int) -> TruncatedFunctional:
    """All iterated integrals of degree <= N as a truncated functional."""
    if N < 1:
        raise InputError("N must be >= 1")
    return TruncatedFunctional(N, {w: iterated_integral(a, w) for w in words_up_to(N)})


# ---------------------------------------------------------------------------
# JSON interchange


def path_to_json(a: CoeffPath) -> dict:
    coeffs = []
    for i, fn in a.coeffs.items():
        pieces = [
            {
                "from": format_rational(lo),
                "to": format_rational(hi),
                "poly": [format_rational(c) for c in p.coeffs] or ["0"],
            }
            for lo, hi, p in zip(fn.breakpoints, fn.breakpoints[1:], fn.pieces)
        ]
        coeffs.append({"index": i, "pieces": pieces})
    return {"T": format_rational(a.T), "coefficients": coeffs}


def path_from_json(data) -> CoeffPath:
    if not isinstance(data, dict) or "T" not in data:
        raise InputError("path JSON needs a top-level object with key 'T'")
    T = parse_rational(data["T"])
    if T <= 0:
        raise InputError("T must be positive")
    coeffs = {}
    for entry in data.get("coefficients", []):
        try:
            i = entry["index"]
            raw = entry["pieces"]
        except (KeyError, TypeError) as exc:
            raise InputError("each coefficient needs 'index' and 'pieces'") from exc
        if not isinstance(i, int) or isinstance(i, bool) or i < 1:
            raise InputError(f"bad coefficient index {i!r}")
        if i in coeffs:
            raise InputError(f"coefficient index {i} listed twice")
        if not raw:
            raise InputError(f"a_{i} has no pieces")
        try:
            pieces = sorted(
                (
                    (parse_rational(p["from"]), parse_rational(p["to"]),
                     UniPoly([parse_rational(c) for c in p["poly"]]))
                    for p in raw
                ),
                key=lambda t: t[0],
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed piece in a_{i}") from exc
        if pieces[0][0] != 0 or pieces[-1][1] != T:
            raise InputError(f"pieces of a_{i} must cover [0, {format_rational(T)}]")
        for (lo, hi, _), (nlo, _, _) in zip(pieces, pieces[1:]):
            if hi != nlo:
                raise InputError(f"pieces of a_{i} leave a gap or overlap at {format_rational(hi)}")
        if any(lo >= hi for lo, hi, _ in pieces):
            raise InputError(f"empty or reversed piece in a_{i}")
        coeffs[i] = PiecewisePolyFn([p[0] for p in pieces] + [T], [p[2] for p in pieces])
    return CoeffPath(T, coeffs)


def load_path(filename) -> CoeffPath:
    try:
        with open(filename, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {filename}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{filename} is not valid JSON: {exc}") from exc
    return path_from_json(data)


def dump_path(a: CoeffPath, filename) -> None:
    with open(filename, "w", encoding="utf-8") as fh:
        json.dump(path_to_json(a), fh, indent=2)
        fh.write("\n")
