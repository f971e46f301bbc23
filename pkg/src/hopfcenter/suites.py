"""Named verification suites, one exact check per degree.

Every suite maps a degree n to a pair (lhs, rhs) that must be equal; the
shared driver stops at the first failing degree.  ``run_suite(name, n)``
covers degrees 1..n.  Suites that need paths use the fixed sample paths
below so reports are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial

from . import displacement as disp
from .dual_algebra import (
    TruncatedFunctional,
    convolution,
    gamma,
    identity_functional,
    is_group_like,
    is_infinitesimal,
    lie_nest,
    rho_pair,
)
from .errors import InputError, InternalError
from .exactnum import MultiPoly, UniPoly, stirling_first, tvar
from .faadibruno import (
    FdBFunctional,
    bell,
    compose_series,
    fdb_antipode,
    fdb_convolve,
    fdb_coproduct,
    genbell,
    theta,
)
from .oprep import I_op_value, commutator_check, equ69_check, operator_polynomial_check, prop61_check
from .paths import CoeffPath, PiecewisePolyFn, chen_map, iterated_integral, path_concat, path_inverse
from .returnmap import displacement_value, inverse_construction, is_center_to_order, return_map
from .shuffle_hopf import (
    WordPoly,
    _shuffle_words,
    antipode,
    coproduct,
    coproduct_poly,
    shuffle,
    verify_radford,
)
from .words import enumerate_words, is_lyndon, witt_dimension

__all__ = ["SUITES", "fixed_paths", "random_path", "run_suite", "suite_names"]


# ---------------------------------------------------------------------------
# sample paths


def fixed_paths() -> list:
    """Three deterministic test paths with rational piecewise-polynomial data."""
    P = PiecewisePolyFn
    half, third = Fraction(1, 2), Fraction(1, 3)
    a = CoeffPath(1, {
        1: P([0, half, 1], [UniPoly([1, -2]), UniPoly([3])]),
        2: P([0, 1], [UniPoly([0, 1])]),
        3: P([0, 1], [UniPoly([half, 0, -1])]),
    })
    b = CoeffPath(2, {
        1: P([0, third, 2], [UniPoly([2]), UniPoly([-1, 1, Fraction(-1, 4)])]),
        2: P([0, 1, 2], [UniPoly([Fraction(-3, 2)]), UniPoly([1, -1])]),
        4: P([0, 2], [UniPoly([Fraction(1, 5), Fraction(1, 7)])]),
    })
    c = CoeffPath(half, {
        1: P([0, Fraction(1, 4), half], [UniPoly([0, 4]), UniPoly([2, -4])]),
        2: P([0, half], [UniPoly([1])]),
        5: P([0, Fraction(1, 8), half], [UniPoly([-1]), UniPoly([1, 0, 3])]),
        8: P([0, half], [UniPoly([Fraction(1, 3)])]),
    })
    return [a, b, c]


def random_path(seed: int, max_index: int = 3, pieces: int = 2, T=1) -> CoeffPath:
    """Piecewise-linear path with small random rational data."""
    rng = random.Random(seed)
    T = Fraction(T)
    coeffs = {}
    for i in range(1, max_index + 1):
        cuts = sorted({Fraction(rng.randint(1, 7), 8) * T for _ in range(pieces - 1)})
        bps = [Fraction(0)] + cuts + [T]
        polys = [
            UniPoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                     Fraction(rng.randint(-4, 4), rng.randint(1, 3))])
            for _ in range(len(bps) - 1)
        ]
        coeffs[i] = PiecewisePolyFn(bps, polys)
    return CoeffPath(T, coeffs)


# ---------------------------------------------------------------------------
# shuffle Hopf algebra


def _pairs_with_total(n):
    """Pairs (u, v) of words with deg u + deg v = n (either may be empty)."""
    for d in range(n + 1):
        for u in enumerate_words(d):
            for v in enumerate_words(n - d):
                yield u, v


def _hopf_axioms(n):
    bad = []
    for u, v in _pairs_with_total(n):
        if shuffle(u, v) != shuffle(v, u):
            bad.append(("commutativity", u, v))
        # bialgebra: Delta(u sh v) = Delta(u) sh Delta(v)
        if coproduct_poly(shuffle(u, v)) != coproduct(u) * coproduct(v):
            bad.append(("bialgebra", u, v))
    for d1 in range(n + 1):
        for d2 in range(n + 1 - d1):
            for u in enumerate_words(d1):
                for v in enumerate_words(d2):
                    for w in enumerate_words(n - d1 - d2):
                        U, V, W = (WordPoly.monomial(x) for x in (u, v, w))
                        if (U * V) * W != U * (V * W):
                            bad.append(("associativity", u, v, w))
    for w in enumerate_words(n):
        left, right = {}, {}
        for (x, y), c in coproduct(w).terms.items():
            for (x1, x2), c1 in coproduct(x).terms.items():
                left[(x1, x2, y)] = left.get((x1, x2, y), 0) + c * c1
            for (y1, y2), c2 in coproduct(y).terms.items():
                right[(x, y1, y2)] = right.get((x, y1, y2), 0) + c * c2
        if left != right:
            bad.append(("coassociativity", w))
        # m (S (x) id) Delta = eta epsilon
        acc = WordPoly()
        for (x, y), c in coproduct(w).terms.items():
            acc = acc + c * (antipode(x) * WordPoly.monomial(y))
        if acc != (WordPoly.one() if not w else WordPoly()):
            bad.append(("antipode", w))
    return bad, []


def _radford(n):
    return verify_radford(n), True


def _witt_lyndon(n):
    count = sum(1 for w in enumerate_words(n) if is_lyndon(w))
    return count, witt_dimension(n)


def _devlin(n):
    lhs, rhs = disp.displacement(n, "direct"), disp.displacement(n, "recurrence")
    if lhs != rhs:
        return lhs, rhs
    for N in range(1, n + 1):
        t = disp.truncated_displacement(n, N, "truncate")
        r = disp.truncated_displacement(n, N, "recurrence")
        if t != r:
            return t, r
    return lhs, rhs


# ---------------------------------------------------------------------------
# signatures and return maps


def _ree(n):
    a = random_path(2024, max_index=3, pieces=2)
    bad = []
    for d in range(1, n):
        for u in enumerate_words(d):
            for v in enumerate_words(n - d):
                lhs = iterated_integral(a, u) * iterated_integral(a, v)
                rhs = sum((m * iterated_integral(a, w) for w, m in _shuffle_words(u, v)), Fraction(0))
                if lhs != rhs:
                    bad.append((u, v, lhs, rhs))
    return bad, []


def _chen_mult(n):
    a, b = random_path(7, 3, 2), random_path(11, 2, 3)
    Ea, Eb = chen_map(a, n), chen_map(b, n)
    lhs = chen_map(path_concat(a, b), n)
    if lhs != convolution(Ea, Eb):
        return lhs, convolution(Ea, Eb)
    e = chen_map(path_concat(a, path_inverse(a)), n)
    if e != identity_functional(n):
        return e, identity_functional(n)
    return (is_group_like(Ea), is_group_like(Eb), is_group_like(lhs)), (True, True, True)


def _te52(n):
    for a in fixed_paths():
        x, y, z = (return_map(a, n, m) for m in ("integrals", "hopf", "picard"))
        if not (x == y == z):
            return (x, y, z), (x, x, x)
    return True, True


def _prop64(n):
    a = fixed_paths()[0]
    try:
        values = [I_op_value(a, n, m) for m in range(0, n + 4)]
    except InternalError as exc:
        return str(exc), "agreement"
    if any(values[:n]):
        return values[:n], [0] * n
    return equ69_check(a, n + 3, n), True


def _cor65(n):
    a = random_path(5, 3, 2)
    c = random_path(6, 2, 2)
    b = path_concat(a, path_concat(c, path_inverse(c)))
    for t in (Fraction(-2), Fraction(1, 2), Fraction(3), Fraction(7, 3), Fraction(10)):
        x, y = displacement_value(a, n, t), displacement_value(b, n, t)
        if x != y:
            return x, y
    return is_center_to_order(path_concat(a, path_inverse(b)), n), True


def _equ616(n):
    # all pairs (i, j) with i = n + 1 use targets t_1..t_n
    ts = [Fraction(k + 2, 2 * k + 1) * (-1) ** k for k in range(1, max(n, 1) + 1)]
    a = inverse_construction(ts, 1)
    ps = return_map(a, n).coeffs
    want = [ts[k] / factorial(k + 2) for k in range(n)]
    if list(ps) != want:
        return list(ps), want
    i = n + 1
    for j in range(1, i):
        lhs = displacement_value(a, i - j, i - 1)
        rhs = Fraction(factorial(j), factorial(i)) * bell(i, j, [Fraction(1)] + ts)
        if lhs != rhs:
            return lhs, rhs
    return True, True


# ---------------------------------------------------------------------------
# combinatorial closed forms


def _cor611(n):
    for k in range(1, n + 1):
        d, s = disp.S_ik(n, k, "direct"), disp.S_ik(n, k, "stirling")
        if d != s:
            return d, s
        if n >= 2 and d(n - 2) != -abs(stirling_first(n - 1, n - k)):
            return d(n - 2), -abs(stirling_first(n - 1, n - k))
    x = MultiPoly.var("x")
    total = sum((disp.S_ik(n, k)(MultiPoly.var("t")) * x ** k for k in range(1, n + 1)), MultiPoly())
    return total, disp.augmentation_closed(n, x, MultiPoly.var("t"))


def _prop610(n):
    x, t = MultiPoly.var("x"), MultiPoly.var("t")
    sym, closed = disp.augmentation(n, x, t), disp.augmentation_closed(n, x, t)
    if sym != closed:
        return sym, closed
    return disp.augmentation(n, 1, n), Fraction(factorial(n + 1), 2)


def _equ620(n):
    bad = [x for x in (Fraction(1), Fraction(1, 2), Fraction(-2)) if not operator_polynomial_check(n, x, n + 4)]
    bad += [(i, n - 1 - i) for i in range(n) if not commutator_check(i, n - 1 - i, n + 3)]
    bad += [m for m in range(n + 5) if not prop61_check(n, m)]
    return bad, []


def _scaled(k_max):
    return [MultiPoly.const(1)] + [factorial(k + 1) * tvar(k) for k in range(1, k_max + 1)]


def _prop63(i):
    for j in range(i):
        lhs = genbell(i - j).subs({"t": Fraction(j + 1)})
        rhs = Fraction(factorial(j + 1), factorial(i + 1)) * bell(i + 1, j + 1, _scaled(i - j))
        if lhs != rhs:
            return lhs, rhs
    return True, True


def _prop68(k):
    t = MultiPoly.var("t")
    lhs = (t + k) * genbell(k)
    acc = MultiPoly()
    for j in range(1, k + 2):
        acc = acc + j * tvar(j - 1) * genbell(k - j + 1).subs({"t": t - 1})
    return lhs, t * acc


def _prop69(k):
    t = MultiPoly.var("t")
    acc = MultiPoly()
    for j in range(1, k + 1):
        acc = acc + ((t + 1) * Fraction(j, k) - 1) * tvar(j) * genbell(k - j)
    return genbell(k), acc


def _xs(n):
    return [MultiPoly.var(f"x{j}") for j in range(1, n + 1)]


def _bell_rec(n):
    xs = _xs(n)
    for m in range(1, n + 1):
        lhs = bell(n, m, xs)
        rhs = MultiPoly()
        for j in range(1, n - m + 2):
            rhs = rhs + comb(n - 1, j - 1) * xs[j - 1] * bell(n - j, m - 1, xs, one=MultiPoly.const(1))
        if lhs != rhs:
            return lhs, rhs
    return True, True


def _bell_rec2(n):
    xs = _xs(n)
    for m in range(1, n):
        lhs = xs[0] * (n - m) * bell(n, m, xs)
        rhs = MultiPoly()
        for j in range(1, n - m + 1):
            rhs = rhs + comb(n, j) * (m + 1 - Fraction(n + 1, j + 1)) * xs[j] * bell(n - j, m, xs)
        if lhs != rhs:
            return lhs, rhs
    return True, True


def _fdb_antipode(n):
    total = MultiPoly()
    for left, right in fdb_coproduct(n):
        j = int(next(iter(left.variables()))[1:]) if left.variables() else 0
        s = fdb_antipode(j) if j else MultiPoly.const(1)
        total = total + s * right
    return total, MultiPoly()


def _bracket(n):
    N = max(n, 2)
    for i in range(1, n):
        j = n - i
        ti, tj = FdBFunctional.primitive(i, N), FdBFunctional.primitive(j, N)
        lhs = ti * tj - tj * ti
        rhs = FdBFunctional.primitive(n, N).scale(i - j)
        if lhs != rhs:
            return lhs.values, rhs.values
    return True, True


def _gf(n):
    return disp.displacement_from_generating_function(n), disp.displacement(n)


def _theta(n):
    rng = random.Random(n)
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    return theta(fdb_convolve(a, b)), compose_series(theta(a), theta(b))


def _rho_gamma(n):
    bad = [c for c in enumerate_words(n) if rho_pair(lie_nest(c)) != gamma(c)]
    bad += [
        c for c in enumerate_words(n)
        if not is_infinitesimal(TruncatedFunctional.from_poly(lie_nest(c), n))
    ]
    return bad, []


def _te51(n):
    P = disp.displacement(n)
    bad = [c for c in enumerate_words(n) if P.coeff(c) != disp.p_factor(c, n)]
    return bad, []


_SUITES = {
    # name: (check, cap, description)
    "hopf-axioms": (_hopf_axioms, 6, "shuffle Hopf algebra axioms"),
    "radford": (_radford, 6, "Lyndon shuffle monomials form a basis"),
    "witt-lyndon": (_witt_lyndon, 14, "Lyndon word counts match the Witt formula"),
    "devlin": (_devlin, 10, "direct vs recurrence displacement polynomials, truncations"),
    "eq5.2a": (disp._eq52a, 7, "antipode of P_i via Bell polynomials"),
    "eq5.2b": (disp._eq52b, 7, "coproduct of P_i via Bell polynomials"),
    "gpshuffle": (disp._gpshuffle, 8, "P~_i(t) = B_i(P_1..P_i, t-i+1) in the shuffle algebra"),
    "rec63": (disp._rec63, 9, "first recurrence with the (t-j+1) factor"),
    "rec63-printed": (disp._IDENTITIES["rec63-printed"], 9, "first recurrence without the factor (fails)"),
    "rec64": (disp._rec64, 9, "second recurrence"),
    "te67a": (disp._te67a, 7, "shuffle recurrence (A), cleared of (t+1)"),
    "te67b": (disp._te67b, 7, "shuffle recurrence (B)"),
    "eq625": (disp._eq625, 8, "S_i(x,t) via B_i"),
    "ree": (_ree, 8, "shuffle relation for iterated integrals"),
    "chen-mult": (_chen_mult, 6, "Chen map multiplicativity and inverse"),
    "prop64": (_prop64, 8, "I_i(a)(z^m): composition sum vs Bell closed form"),
    "cor611": (_cor611, 12, "S_{i,k}(t) via Stirling numbers"),
    "prop6.10": (_prop610, 12, "augmentation closed form and (i+1)!/2"),
    "equ6.20": (_equ620, 8, "operator identity, commutators, DL-word action"),
    "prop6.3": (_prop63, 9, "B_{i-j}(.., j+1) via Bell polynomials"),
    "prop6.8": (_prop68, 8, "B_k recurrence, cleared of (t+k)"),
    "prop6.9": (_prop69, 8, "B_k second recurrence"),
    "bell-rec": (_bell_rec, 9, "standard Bell recurrence"),
    "bell-rec2": (_bell_rec2, 9, "second Bell recurrence, cleared of x_1 (n-m)"),
    "fdb-antipode": (_fdb_antipode, 6, "FdB antipode axiom on generators"),
    "bracket": (_bracket, 8, "[t'_i, t'_j] = (i-j) t'_{i+j}"),
    "gf": (_gf, 7, "P_n from the FdB generating function"),
    "theta": (_theta, 8, "theta turns convolution into composition"),
    "rho-gamma": (_rho_gamma, 6, "rho on nested brackets is gamma; brackets are primitive"),
    "te5.1": (_te51, 8, "coefficients of P_i are p_c(i)"),
    "te5.2": (_te52, 8, "return map: integrals vs hopf vs picard"),
    "cor6.5": (_cor65, 5, "equal return maps give equal P~_i values"),
    "equ6.16": (_equ616, 4, "inverse construction and Bell values"),
}

# names the command line promises to pass
REQUIRED = [
    "hopf-axioms", "radford", "witt-lyndon", "devlin", "eq5.2a", "eq5.2b", "gpshuffle",
    "rec63", "rec64", "te67a", "te67b", "eq625", "ree", "chen-mult", "prop64", "cor611",
    "prop6.10", "equ6.20",
]

SUITES = _SUITES


def suite_names() -> list:
    return list(_SUITES)


def suite_cap(name: str) -> int:
    return _SUITES[name][1]


def run_suite(name: str, max_degree: int) -> disp.IdentityReport:
    if name not in _SUITES:
        raise InputError(f"unknown identity {name!r}; known: {', '.join(_SUITES)}")
    check, cap, _ = _SUITES[name]
    if not 1 <= max_degree <= cap:
        raise InputError(f"{name}: max degree must be between 1 and {cap}")
    return disp.run_degree_checks(name, check, max_degree)

