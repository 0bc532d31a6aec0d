"""Exact scalar, polynomial and truncated-series arithmetic."""

from .linalg import determinant, inverse, rank, solve
from .poly import PolyC, compose_poly, linear_substitute, substitute_linear
from .scalars import INFINITY, ExtendedRational, GaussianRational, gr
from .series import (
    DEFAULT_TRUNCATION,
    HermitianSeries,
    UniSeries,
    compose,
    hermitian_order,
    hermitian_pullback,
    series_order,
)

__all__ = [
    "DEFAULT_TRUNCATION",
    "ExtendedRational",
    "GaussianRational",
    "HermitianSeries",
    "INFINITY",
    "PolyC",
    "UniSeries",
    "compose",
    "compose_poly",
    "determinant",
    "gr",
    "hermitian_order",
    "hermitian_pullback",
    "inverse",
    "linear_substitute",
    "rank",
    "series_order",
    "solve",
    "substitute_linear",
]
