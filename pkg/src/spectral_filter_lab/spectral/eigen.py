"""
Dense eigendecomposition and the graph Fourier transform.

The normalized Laplacian L_hat = U diag(lambda) U^T is decomposed with
LAPACK's symmetric solver (scipy.linalg.eigh). Every Spectrum satisfies:
- eigenvalues ascending and inside the operator's admissible range
- ||U diag(lambda) U^T - L_hat||_F <= 1e-8 * max(1, ||L_hat||_F)
- ||U^T U - I||_F <= 1e-8
- each eigenvector's first non-negligible entry is positive
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from spectral_filter_lab.errors import NumericError, ValidationError, dimension_mismatch_error
from spectral_filter_lab.graph.core import SymmetricOperator
from spectral_filter_lab.logging import get_logger

logger = get_logger(__name__)

MAX_DENSE_N = 5000
CONTRACT_TOL = 1e-8
LAPLACIAN_RANGE = (-1e-9, 2.0 + 1e-9)


@dataclass(frozen=True)
class Spectrum:
    """Eigen-pairs of a symmetric operator.

    Attributes:
        eigenvalues: Ascending length-n vector
        eigenvectors: n x n orthonormal matrix, column i belongs to eigenvalues[i]
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # first entry with |u| above a relative threshold is made positive
    threshold = 1e-12 * np.max(np.abs(vectors), axis=0, keepdims=True)
    first = np.argmax(np.abs(vectors) > threshold, axis=0)
    signs = np.sign(vectors[first, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigendecompose(
    op: SymmetricOperator,
    value_range: Optional[tuple[float, float]] = LAPLACIAN_RANGE,
) -> Spectrum:
    """
    Compute the full eigendecomposition of a symmetric operator.

    Args:
        op: Symmetric operator (typically the normalized Laplacian)
        value_range: Admissible closed eigenvalue interval, checked after the
            solve; None disables the check (e.g. for A_hat, whose spectrum
            lies in [-1, 1])

    Returns:
        Spectrum with ascending eigenvalues and sign-normalized eigenvectors

    Raises:
        ValidationError: If n exceeds the dense cap
        NumericError: If LAPACK fails or a contract check is violated

    Example:
        >>> s = eigendecompose(normalized_laplacian(path_graph(2)))
        >>> s.eigenvalues
        array([0., 2.])
    """
    if op.n > MAX_DENSE_N:
        raise ValidationError(
            message=f"Dense eigendecomposition is capped at n={MAX_DENSE_N}, got n={op.n}",
            error_code="GRAPH_TOO_LARGE",
            details={"n": op.n, "max_n": MAX_DENSE_N},
        )

    if op.n == 0:
        return Spectrum(eigenvalues=np.zeros(0), eigenvectors=np.zeros((0, 0)))

    dense = op.to_dense()
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(dense, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"Eigensolver failed on {op.name} (n={op.n}): {e}")
        raise NumericError(
            message=f"Eigendecomposition of {op.name} did not converge",
            error_code="EIGENSOLVER_FAILED",
            details={"n": op.n, "error": str(e)},
        ) from e

    eigenvectors = _fix_signs(eigenvectors)

    reconstruction = np.linalg.norm(eigenvectors * eigenvalues @ eigenvectors.T - dense)
    scale = max(1.0, float(np.linalg.norm(dense)))
    orthogonality = np.linalg.norm(eigenvectors.T @ eigenvectors - np.eye(op.n))
    logger.debug(
        f"eigh {op.name}: n={op.n}, reconstruction={reconstruction:.2e}, "
        f"orthogonality={orthogonality:.2e}"
    )
    if reconstruction > CONTRACT_TOL * scale or orthogonality > CONTRACT_TOL:
        raise NumericError(
            message=f"Eigendecomposition of {op.name} violates the accuracy contract",
            error_code="EIGEN_CONTRACT_VIOLATED",
            details={
                "reconstruction_error": float(reconstruction),
                "orthogonality_error": float(orthogonality),
                "tolerance": CONTRACT_TOL,
            },
        )

    if value_range is not None:
        lo, hi = value_range
        if eigenvalues[0] < lo or eigenvalues[-1] > hi:
            raise NumericError(
                message=(
                    f"Eigenvalues of {op.name} leave [{lo}, {hi}]: "
                    f"[{eigenvalues[0]:.3e}, {eigenvalues[-1]:.3e}]"
                ),
                error_code="EIGENVALUE_OUT_OF_RANGE",
                details={"min": float(eigenvalues[0]), "max": float(eigenvalues[-1])},
            )

    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def _check_rows(s: Spectrum, X: np.ndarray, what: str) -> None:
    if X.shape[0] != s.n:
        raise dimension_mismatch_error(what, s.n, X.shape[0])


def gft(s: Spectrum, X: np.ndarray) -> np.ndarray:
    """Graph Fourier transform X_tilde = U^T X (vector or n x d matrix)."""
    X = np.asarray(X, dtype=float)
    _check_rows(s, X, "GFT input rows")
    return s.eigenvectors.T @ X


def igft(s: Spectrum, X_tilde: np.ndarray) -> np.ndarray:
    """Inverse graph Fourier transform X = U X_tilde."""
    X_tilde = np.asarray(X_tilde, dtype=float)
    _check_rows(s, X_tilde, "inverse GFT input rows")
    return s.eigenvectors @ X_tilde


def spectral_weights(s: Spectrum, X: np.ndarray) -> np.ndarray:
    """Per-eigenvalue signal energy: squared row norms of gft(X)."""
    X_tilde = gft(s, X)
    if X_tilde.ndim == 1:
        return X_tilde**2
    return np.sum(X_tilde**2, axis=1)
