"""Exact Hopf-algebraic computations for the center problem of dv/dx = sum a_i(x) v^{i+1}."""

from .displacement import gen_displacement, truncated_displacement, verify_identity
from .dual_algebra import TensorPoly, TruncatedFunctional, X
from .errors import DomainError, InputError, InternalError, NumericError
from .exactnum import MultiPoly, UniPoly, format_rational, parse_rational
from .faadibruno import PowerSeriesMap, compose_series, invert_series, theta
from .paths import CoeffPath, PiecewisePolyFn, chen_map, iterated_integral, load_path
from .returnmap import OdeConfig, is_center_to_order, ode_solve, return_map
from .shuffle_hopf import WordPoly, antipode, coproduct, shuffle
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "CoeffPath",
    "DomainError",
    "InputError",
    "InternalError",
    "MultiPoly",
    "NumericError",
    "OdeConfig",
    "PiecewisePolyFn",
    "PowerSeriesMap",
    "TensorPoly",
    "TruncatedFunctional",
    "UniPoly",
    "WordPoly",
    "X",
    "antipode",
    "chen_map",
    "compose_series",
    "coproduct",
    "format_rational",
    "gen_displacement",
    "invert_series",
    "is_center_to_order",
    "iterated_integral",
    "load_path",
    "ode_solve",
    "parse_rational",
    "return_map",
    "run_suite",
    "shuffle",
    "theta",
    "truncated_displacement",
    "verify_identity",
]
