"""Command line interface: ``hopfcenter <subcommand> ...``.

Exit codes: 0 success or verified, 1 verification failed, 2 usage or input
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import displacement as disp
from .errors import DomainError, InputError, NumericError
from .exactnum import UniPoly, format_rational, parse_rational
from .paths import chen_map, load_path
from .returnmap import OdeConfig, ode_solve, return_map, series_tail_bound
from .separable import separable_closed_form, separable_series, separable_window
from .suites import REQUIRED, run_suite, suite_cap, suite_names
from .words import format_word, lyndon_words, witt_dimension

__all__ = ["build_parser", "main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so main() owns exit codes."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfcenter", description="Exact Hopf-algebraic tools for the center problem.")
    p.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("poly", help="print a displacement polynomial")
    s.add_argument("--kind", choices=["displacement", "generalized", "truncated", "antipode"],
                   default="displacement")
    s.add_argument("--degree", type=_nonneg_int, required=True)
    s.add_argument("--t", type=_rational, help="value of t for --kind generalized")
    s.add_argument("--N", type=_positive_int, help="alphabet bound for --kind truncated")

    s = sub.add_parser("verify", help="run a named identity suite")
    s.add_argument("--identity", required=True, help="suite name, or 'all' for every listed suite")
    s.add_argument("--max-degree", type=_positive_int, help="defaults to the suite's cap")

    s = sub.add_parser("signature", help="Chen iterated integrals of a path")
    s.add_argument("--input", required=True)
    s.add_argument("--max-degree", type=_nonneg_int, required=True)

    s = sub.add_parser("returnmap", help="return map series of a path")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=_positive_int, required=True)
    s.add_argument("--check-ode", action="store_true")
    s.add_argument("--r0", type=_float, default=1e-3)
    s.add_argument("--tol", type=_float, default=1e-13)

    s = sub.add_parser("center", help="check the center conditions to a given order")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=_positive_int, required=True)

    s = sub.add_parser("separable", help="separable example: series vs closed form")
    s.add_argument("--order", type=_positive_int, required=True)
    s.add_argument("--T", type=_rational, required=True)
    s.add_argument("--r", type=_float, required=True)

    for name, helptext in (("lyndon", "Lyndon words per degree"), ("dims", "Witt dimensions")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--max-degree", type=_positive_int, required=True)
    return p


# ---------------------------------------------------------------------------
# json helpers


def _coeff_json(c):
    if isinstance(c, UniPoly):
        return [format_rational(x) for x in c.coeffs] or ["0"]
    return format_rational(c)


def _terms_json(p) -> list:
    return [{"word": list(w), "coeff": _coeff_json(c)} for w, c in p.items()]


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_poly(args) -> int:
    i = args.degree
    if args.kind == "displacement":
        label, p = f"P_{i}", disp.displacement(i)
    elif args.kind == "generalized":
        if args.t is None:
            label, p = f"P~_{i}(t)", disp.gen_displacement(i)
        else:
            label, p = f"P~_{i}({format_rational(args.t)})", disp.gen_displacement_at(i, args.t)
    elif args.kind == "truncated":
        if args.N is None:
            raise InputError("--kind truncated needs --N")
        label, p = f"P_{i}^{args.N}", disp.truncated_displacement(i, args.N)
    else:
        label, p = f"S(P_{i})", disp.antipode_image(i)
    payload = {"kind": args.kind, "degree": i, "label": label, "terms": _terms_json(p)}
    if args.t is not None:
        payload["t"] = format_rational(args.t)
    if args.N is not None:
        payload["N"] = args.N
    _emit(args, [f"{label} = {p}"], payload)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.identity == "all":
        names = list(REQUIRED)
    elif args.identity in suite_names():
        names = [args.identity]
    else:
        raise InputError(f"unknown identity {args.identity!r}; known: all, {', '.join(suite_names())}")
    reports = []
    for name in names:
        n = args.max_degree if args.max_degree is not None else suite_cap(name)
        if args.identity == "all":
            n = min(n, suite_cap(name))
        reports.append(run_suite(name, n))
    lines = []
    for r in reports:
        if len(reports) > 1:
            lines.append(f"== {r.name}: {'ok' if r.ok else 'FAIL'}")
        lines.extend(r.lines)
    payload = [
        {"identity": r.name, "ok": r.ok, "failed_degree": r.failed_degree, "lines": r.lines}
        for r in reports
    ]
    _emit(args, lines, payload if len(payload) > 1 else payload[0])
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _cmd_signature(args) -> int:
    a = load_path(args.input)
    E = chen_map(a, args.max_degree)
    by_degree: dict = {}
    for w, v in E.items():
        by_degree.setdefault(sum(w), []).append((w, v))
    lines = []
    for d in range(args.max_degree + 1):
        lines.append(f"degree {d}:")
        nonzero = [(w, v) for w, v in by_degree.get(d, []) if v]
        lines.extend(f"  {format_word(w)} = {format_rational(v)}" for w, v in nonzero)
        if not nonzero:
            lines.append("  (all zero)")
    payload = {
        "T": format_rational(a.T),
        "max_degree": args.max_degree,
        "values": {format_word(w): format_rational(v) for w, v in E.items()},
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_returnmap(args) -> int:
    a = load_path(args.input)
    P = return_map(a, args.order)
    lines = [f"P(a)(r) = {P}"]
    lines += [f"p_{i} = {format_rational(c)}" for i, c in enumerate(P.coeffs, start=1)]
    payload = {"order": args.order, "T": format_rational(a.T), **P.to_json()}
    if args.check_ode:
        cfg = OdeConfig(M=args.order, r0=args.r0, tol=args.tol)
        ode = ode_solve(a, cfg)
        series = P.evaluate(args.r0)
        rel = abs(ode - series) / abs(ode)
        bound = series_tail_bound(a, args.order, args.r0)
        lines += [
            f"ode v(T) = {ode!r}",
            f"series   = {series!r}",
            f"relative residual = {rel:.3e}",
            f"series tail bound = {bound:.3e}",
        ]
        payload["ode"] = {"r0": args.r0, "tol": args.tol, "value": ode, "series": series,
                          "relative_residual": rel, "tail_bound": bound}
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_center(args) -> int:
    a = load_path(args.input)
    P = return_map(a, args.order)
    verdict = "yes" if P.is_identity() else "no"
    lines = [f"p_{i} = {format_rational(c)}" for i, c in enumerate(P.coeffs, start=1)]
    lines.append(f"center to order {args.order}: {verdict}")
    payload = {"order": args.order, "center": verdict == "yes", **P.to_json()}
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_separable(args) -> int:
    T, r = args.T, args.r
    if T <= 0:
        raise InputError("--T must be positive")
    coeffs = [separable_series(i, T) for i in range(1, args.order + 1)]
    series = r + sum(float(c) * r ** (i + 1) for i, c in enumerate(coeffs, start=1))
    closed = separable_closed_form(float(T), r)
    residual = abs(series - closed)
    lines = [f"S_{i}({format_rational(T)}, {i}) = {format_rational(c)}" for i, c in enumerate(coeffs, start=1)]
    lines += [
        f"series      = {series!r}",
        f"closed form = {closed!r}",
        f"residual    = {residual:.3e}",
        f"window: 0 < r <= {separable_window(float(T))!r}",
    ]
    payload = {
        "order": args.order, "T": format_rational(T), "r": r,
        "coeffs": [format_rational(c) for c in coeffs],
        "series": series, "closed_form": closed, "residual": residual,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_lyndon(args) -> int:
    lines, payload = [], {}
    words = lyndon_words(args.max_degree)
    for n in range(1, args.max_degree + 1):
        ws = [w for w in words if sum(w) == n]
        lines.append(f"degree {n} ({len(ws)}): " + " ".join(format_word(w) for w in ws))
        payload[str(n)] = [list(w) for w in ws]
    _emit(args, lines, payload)
    return EXIT_OK


def _cmd_dims(args) -> int:
    dims = {n: witt_dimension(n) for n in range(1, args.max_degree + 1)}
    _emit(args, [f"degree {n}: {d}" for n, d in dims.items()], {str(n): d for n, d in dims.items()})
    return EXIT_OK


_COMMANDS = {
    "poly": _cmd_poly,
    "verify": _cmd_verify,
    "signature": _cmd_signature,
    "returnmap": _cmd_returnmap,
    "center": _cmd_center,
    "separable": _cmd_separable,
    "lyndon": _cmd_lyndon,
    "dims": _cmd_dims,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
