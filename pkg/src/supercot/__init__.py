"""Exact symbolic calculus on the flat supercotangent chart."""

from .coeff import Scalar
from .superpoly import Signature, SuperPolynomial
from .parse import ParseError, sp_parse

__all__ = [
    "Scalar",
    "Signature",
    "SuperPolynomial",
    "ParseError",
    "sp_parse",
]
