"""
Hessian of the squared filter-learning loss and the fitted orthonormal basis.

For a single channel trained with R = 1/2 ||g(L_hat) x - y||^2 over
g = sum_k alpha_k g_k, the Hessian in alpha is

    H[k1, k2] = sum_i g_k1(lambda_i) g_k2(lambda_i) x_tilde_i^2

i.e. the Gram matrix of the basis under the discrete measure
sum_i x_tilde_i^2 delta(lambda - lambda_i). A basis orthonormal under that
measure gives H = I and the best possible condition number.
"""

from typing import Optional

import numpy as np

from spectral_filter_lab.bases.scalar import basis_values
from spectral_filter_lab.errors import (
    ValidationError,
    degree_infeasible_error,
    dimension_mismatch_error,
)
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.diagnostics import DEFAULT_TOL, cluster_eigenvalues
from spectral_filter_lab.spectral.eigen import Spectrum
from spectral_filter_lab.types import BasisFamily, BasisSpec, OrthoCoeffs

logger = get_logger(__name__)

SINGULAR_RATIO = 1e-14


def _check_weights(s: Spectrum, weights: np.ndarray) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (s.n,):
        raise dimension_mismatch_error("spectral weights", (s.n,), weights.shape)
    if (weights < 0).any():
        raise ValidationError(
            message="Spectral weights must be non-negative",
            error_code="NEGATIVE_WEIGHTS",
            details={"min_weight": float(weights.min())},
        )
    return weights


def hessian(
    s: Spectrum,
    weights: np.ndarray,
    basis: BasisSpec,
    K: Optional[int] = None,
) -> np.ndarray:
    """
    Hessian (Gram) matrix of a basis under spectral weights.

    Args:
        s: Spectrum of the normalized Laplacian
        weights: Length-n non-negative weights x_tilde^2
        basis: Basis specification
        K: Degree (defaults to basis.K)

    Returns:
        (K+1) x (K+1) symmetric matrix

    Example:
        >>> hessian(s_p2, np.array([0.5, 0.5]), BasisSpec(family="monomial", K=1))
        array([[1., 0.],
               [0., 1.]])
    """
    weights = _check_weights(s, weights)
    G = basis_values(basis, s.eigenvalues, K=K)
    # elementwise products first so H[j, k] and H[k, j] see identical terms
    products = G[:, :, None] * G[:, None, :]
    return np.einsum("i,ijk->jk", weights, products)


def condition_number(H: np.ndarray) -> float:
    """|lambda_max| / |lambda_min| of a symmetric matrix; inf when (near) singular."""
    magnitudes = np.abs(np.linalg.eigvalsh(H))
    largest, smallest = float(magnitudes.max()), float(magnitudes.min())
    if largest == 0.0 or smallest <= SINGULAR_RATIO * largest:
        return float("inf")
    return largest / smallest


def fit_orthonormal_basis(
    s: Spectrum,
    weights: np.ndarray,
    K: int,
    tol_eig: float = DEFAULT_TOL,
) -> OrthoCoeffs:
    """
    Stieltjes procedure for polynomials orthonormal under the spectral measure.

    Works in z = 1 - lambda so the result plugs into the ortho_fitted basis:

        p_0 = 1 / sqrt(mass)
        s_k p_{k+1} = (z - a_k) p_k - s_{k-1} p_{k-1}

    Args:
        s: Spectrum of the normalized Laplacian
        weights: Length-n non-negative weights x_tilde^2
        K: Highest degree
        tol_eig: Clustering tolerance used to count distinct support points

    Returns:
        OrthoCoeffs recurrence table of degree K

    Raises:
        ValidationError: DEGREE_INFEASIBLE when fewer than K+1 distinct
            eigenvalues carry positive weight
    """
    weights = _check_weights(s, weights)
    support = sum(
        1
        for start, end in cluster_eigenvalues(s.eigenvalues, tol_eig)
        if weights[start:end].sum() > 0
    )
    if support < K + 1:
        raise degree_infeasible_error(K, support - 1)

    z = 1.0 - s.eigenvalues
    mass = float(weights.sum())
    p_prev = np.zeros_like(z)
    p = np.full_like(z, 1.0 / np.sqrt(mass))
    a: list[float] = []
    off: list[float] = []
    for k in range(K):
        a_k = float(np.sum(weights * z * p * p))
        q = (z - a_k) * p - (off[-1] if off else 0.0) * p_prev
        s_k = float(np.sqrt(np.sum(weights * q * q)))
        if s_k <= 0.0:
            raise degree_infeasible_error(K, k)
        a.append(a_k)
        off.append(s_k)
        p_prev, p = p, q / s_k

    logger.debug(f"Fitted orthonormal basis: K={K}, support={support}, mass={mass:.4g}")
    return OrthoCoeffs(a=a, s=off, mass=mass)


def fitted_basis_spec(s: Spectrum, weights: np.ndarray, K: int) -> BasisSpec:
    """BasisSpec of the ortho_fitted family built from fit_orthonormal_basis."""
    return BasisSpec(
        family=BasisFamily.ORTHO_FITTED, K=K, ortho=fit_orthonormal_basis(s, weights, K)
    )
