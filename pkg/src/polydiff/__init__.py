"""Exact high-order finite and divided differences of polynomials."""
from .core import (
    ArityMismatch,
    GridSpec,
    MultiPolynomial,
    Polynomial,
    Rational,
    format_rational,
    multi_eval,
    multi_partial_derivative,
    parse_rational,
    poly_derivative,
    poly_eval,
)
from .differences import (
    BACKWARD,
    CENTRAL_FULL,
    CENTRAL_HALF,
    FORWARD,
    DifferenceKind,
    DifferenceRequest,
    NotEqual,
    central_identity,
    divided_difference,
    equality_operator,
    linearity_check,
    nth_difference,
    nth_difference_cascade,
)
from .table import DifferenceTable, build_table, verify_distribution

__version__ = "0.1.0"
