"""
Universality-condition diagnostics and signal density.

A linear GNN can only produce every one-dimensional prediction when the
Laplacian has no multiple eigenvalues and the features have no missing
frequency component. diagnose() measures both; signal_density() estimates
how the squared GFT energy of the features is spread over [0, 2].
"""

from typing import Optional

import numpy as np

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.eigen import Spectrum, gft, spectral_weights
from spectral_filter_lab.types import DensityEstimate, Diagnostics

logger = get_logger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_BINS = 40


def cluster_eigenvalues(
    eigenvalues: np.ndarray, tol_eig: float = DEFAULT_TOL
) -> list[tuple[int, int]]:
    """Group ascending eigenvalues whose consecutive gaps are <= tol_eig.

    Returns:
        Half-open index ranges [start, end) covering 0..n
    """
    if eigenvalues.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(eigenvalues) > tol_eig) + 1
    starts = np.concatenate([[0], breaks])
    ends = np.concatenate([breaks, [eigenvalues.size]])
    return [(int(a), int(b)) for a, b in zip(starts, ends)]


def diagnose(
    s: Spectrum,
    X: Optional[np.ndarray] = None,
    tol_missing: float = DEFAULT_TOL,
    tol_eig: float = DEFAULT_TOL,
) -> Diagnostics:
    """
    Count missing frequency components and multiple eigenvalues.

    Args:
        s: Spectrum of the normalized Laplacian
        X: Optional n x d features; n_missing is None without them
        tol_missing: Row-norm threshold of gft(X) below which a component is missing
        tol_eig: Absolute gap tolerance for eigenvalue clustering

    Returns:
        Diagnostics (multi_ratio in percent of distinct eigenvalues)

    Example:
        >>> d = diagnose(eigendecompose(normalized_laplacian(complete_graph(3))))
        >>> d.multi_ratio
        50.0
    """
    if tol_missing <= 0 or tol_eig <= 0:
        raise ValidationError(
            message="Diagnostic tolerances must be positive",
            error_code="INVALID_TOLERANCE",
            details={"tol_missing": tol_missing, "tol_eig": tol_eig},
        )

    groups = cluster_eigenvalues(s.eigenvalues, tol_eig)
    multiple = sum(1 for start, end in groups if end - start > 1)
    multi_ratio = 100.0 * multiple / len(groups) if groups else 0.0

    n_missing = None
    if X is not None:
        X_tilde = gft(s, X)
        row_norms = np.abs(X_tilde) if X_tilde.ndim == 1 else np.linalg.norm(X_tilde, axis=1)
        n_missing = int(np.sum(row_norms <= tol_missing))

    diagnostics = Diagnostics(
        n_eigenvalues=s.n,
        n_distinct=len(groups),
        n_missing=n_missing,
        multi_ratio=multi_ratio,
        groups=groups,
        eigenvalue_min=float(s.eigenvalues[0]) if s.n else 0.0,
        eigenvalue_max=float(s.eigenvalues[-1]) if s.n else 0.0,
        tol_missing=tol_missing,
        tol_eig=tol_eig,
    )
    logger.info(
        f"Diagnostics: n={s.n}, distinct={len(groups)}, multi_ratio={multi_ratio:.2f}%, "
        f"n_missing={n_missing}"
    )
    return diagnostics


def signal_density(s: Spectrum, X: np.ndarray, bins: int = DEFAULT_BINS) -> DensityEstimate:
    """
    Histogram estimate of squared GFT energy over uniform bins on [0, 2].

    cumulative[j] is the energy of all bins left of edge j, so cumulative[0]
    is 0 and cumulative[-1] equals ||X||_F^2 (Parseval). density is bin
    energy divided by bin width.
    """
    if bins < 1:
        raise ValidationError(
            message=f"bins must be >= 1, got {bins}",
            error_code="INVALID_BINS",
            details={"bins": bins},
        )
    weights = spectral_weights(s, X)
    edges = np.linspace(0.0, 2.0, bins + 1)
    mass, _ = np.histogram(np.clip(s.eigenvalues, 0.0, 2.0), bins=edges, weights=weights)
    cumulative = np.concatenate([[0.0], np.cumsum(mass)])
    return DensityEstimate(
        bin_edges=edges.tolist(),
        cumulative=cumulative.tolist(),
        density=(mass / np.diff(edges)).tolist(),
    )
