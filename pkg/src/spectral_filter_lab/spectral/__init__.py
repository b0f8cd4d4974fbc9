"""Spectral analysis: eigendecomposition, GFT, diagnostics, Hessians and filters."""

from spectral_filter_lab.spectral.diagnostics import (
    cluster_eigenvalues,
    diagnose,
    signal_density,
)
from spectral_filter_lab.spectral.eigen import (
    Spectrum,
    eigendecompose,
    gft,
    igft,
    spectral_weights,
)
from spectral_filter_lab.spectral.filters import (
    BENCH_FILTERS,
    FILTERS,
    FilterFunction,
    apply_exact_filter,
    get_filter,
)
from spectral_filter_lab.spectral.hessian import (
    condition_number,
    fit_orthonormal_basis,
    fitted_basis_spec,
    hessian,
)

__all__ = [
    # Eigendecomposition and GFT
    "Spectrum",
    "eigendecompose",
    "gft",
    "igft",
    "spectral_weights",
    # Diagnostics
    "cluster_eigenvalues",
    "diagnose",
    "signal_density",
    # Hessian analysis
    "hessian",
    "condition_number",
    "fit_orthonormal_basis",
    "fitted_basis_spec",
    # Filters
    "FilterFunction",
    "FILTERS",
    "BENCH_FILTERS",
    "get_filter",
    "apply_exact_filter",
]
