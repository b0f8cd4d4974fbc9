"""Polynomial filter bases: recurrences, scalar evaluation and operator application."""

from spectral_filter_lab.bases.operator import apply_basis
from spectral_filter_lab.bases.recurrence import RecurrenceCoeffs, jacobi_first, jacobi_recurrence
from spectral_filter_lab.bases.scalar import (
    CURVE_POINTS,
    basis_curves_frame,
    basis_scalar,
    basis_values,
    binomial,
    fixed_coeffs,
    normalize_at_zero,
    weight_function,
)

__all__ = [
    "RecurrenceCoeffs",
    "jacobi_first",
    "jacobi_recurrence",
    "basis_scalar",
    "basis_values",
    "binomial",
    "fixed_coeffs",
    "weight_function",
    "normalize_at_zero",
    "basis_curves_frame",
    "CURVE_POINTS",
    "apply_basis",
]
