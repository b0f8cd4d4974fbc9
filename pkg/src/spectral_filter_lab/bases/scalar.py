"""
Scalar evaluation of polynomial filter bases on the lambda axis.

Recurrence families (Monomial, Chebyshev, Jacobi, OrthoFitted, and the
Monomial basis underneath the fixed filters) are evaluated in z = 1 - lambda,
i.e. as polynomials of A_hat = I - L_hat. Bernstein is evaluated directly
in lambda:

    B_k(lambda) = C(K, k) (1 - lambda/2)^(K-k) (lambda/2)^k

Binomial coefficients come from log-gamma so K up to 64 stays finite.
"""

from typing import Optional

import numpy as np
import pandas as pd
from scipy.special import gammaln

from spectral_filter_lab.bases.recurrence import jacobi_first, jacobi_recurrence
from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.types import BasisFamily, BasisSpec

CURVE_POINTS = 201

# families whose formula pins the degree to spec.K
_FIXED_DEGREE = frozenset({BasisFamily.BERNSTEIN, BasisFamily.FIXED_APPNP, BasisFamily.FIXED_SGC})


def binomial(K: int, k: np.ndarray | int) -> np.ndarray:
    """C(K, k) in floating point via log-gamma."""
    k = np.asarray(k, dtype=float)
    return np.exp(gammaln(K + 1.0) - gammaln(k + 1.0) - gammaln(K - k + 1.0))


def _resolve_degree(spec: BasisSpec, K: Optional[int]) -> int:
    degree = spec.K if K is None else K
    if degree < 0:
        raise ValidationError(
            message=f"Degree must be >= 0, got {degree}", error_code="INVALID_DEGREE"
        )
    if spec.family in _FIXED_DEGREE and degree > spec.K:
        raise ValidationError(
            message=f"{spec.family.value} basis is defined only for k <= K={spec.K}, got {degree}",
            error_code="BASIS_ARITY_ERROR",
            details={"family": spec.family.value, "K": spec.K, "requested": degree},
        )
    if spec.family == BasisFamily.ORTHO_FITTED and degree > spec.ortho.degree:
        raise ValidationError(
            message=f"Fitted basis has degree {spec.ortho.degree}, requested {degree}",
            error_code="BASIS_ARITY_ERROR",
            details={"available": spec.ortho.degree, "requested": degree},
        )
    return degree


def basis_values(spec: BasisSpec, lam: np.ndarray, K: Optional[int] = None) -> np.ndarray:
    """
    Evaluate g_0..g_K at every lambda.

    Args:
        spec: Basis specification
        lam: Eigenvalues or grid points in [0, 2]
        K: Highest degree (defaults to spec.K); recurrence families may extend it

    Returns:
        len(lam) x (K+1) matrix, column k holds g_k(lam)
    """
    degree = _resolve_degree(spec, K)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    z = 1.0 - lam
    out = np.empty((lam.size, degree + 1))
    family = spec.family

    if family == BasisFamily.BERNSTEIN:
        half = lam / 2.0
        for k in range(degree + 1):
            out[:, k] = binomial(spec.K, k) * (1.0 - half) ** (spec.K - k) * half**k
        return out

    if family == BasisFamily.ORTHO_FITTED:
        a, s = spec.ortho.a, spec.ortho.s
        out[:, 0] = 1.0 / np.sqrt(spec.ortho.mass)
        for k in range(degree):
            nxt = (z - a[k]) * out[:, k]
            if k > 0:
                nxt -= s[k - 1] * out[:, k - 1]
            out[:, k + 1] = nxt / s[k]
        return out

    out[:, 0] = 1.0
    if degree == 0:
        return out

    if family == BasisFamily.CHEBYSHEV:
        out[:, 1] = z
        for k in range(2, degree + 1):
            out[:, k] = 2.0 * z * out[:, k - 1] - out[:, k - 2]
    elif family == BasisFamily.JACOBI:
        c0, c1 = jacobi_first(spec.a, spec.b)
        out[:, 1] = c0 + c1 * z
        for k in range(2, degree + 1):
            r = jacobi_recurrence(spec.a, spec.b, k)
            out[:, k] = (r.theta * z + r.theta_prime) * out[:, k - 1]
            out[:, k] -= r.theta_dprime * out[:, k - 2]
    else:
        # Monomial, and the Monomial basis under APPNP / SGC
        for k in range(1, degree + 1):
            out[:, k] = z * out[:, k - 1]
    return out


def basis_scalar(spec: BasisSpec, k: int, lam: float) -> float:
    """Value of the k-th basis polynomial at a single lambda.

    Example:
        >>> basis_scalar(BasisSpec(family="bernstein", K=2), 1, 1.0)
        0.5
    """
    _resolve_degree(spec, k)
    degree = spec.K if spec.family == BasisFamily.BERNSTEIN else k
    return float(basis_values(spec, np.array([lam]), K=degree)[0, k])


def fixed_coeffs(spec: BasisSpec) -> np.ndarray:
    """Non-learnable coefficients of a fixed filter over the Monomial basis.

    APPNP: alpha^k / (1 - alpha).  SGC: one-hot at K.
    """
    k = np.arange(spec.K + 1)
    if spec.family == BasisFamily.FIXED_APPNP:
        return spec.alpha**k / (1.0 - spec.alpha)
    if spec.family == BasisFamily.FIXED_SGC:
        return (k == spec.K).astype(float)
    raise ValidationError(
        message=f"{spec.family.value} is not a fixed filter family",
        error_code="NOT_A_FIXED_FILTER",
        details={"family": spec.family.value},
    )


def weight_function(spec: BasisSpec, lam: np.ndarray) -> np.ndarray:
    """Orthogonality weight on the lambda axis.

    Jacobi weight (1-z)^a (1+z)^b becomes lambda^a (2-lambda)^b; Chebyshev is
    the a = b = -1/2 case.
    """
    lam = np.asarray(lam, dtype=float)
    if spec.family == BasisFamily.JACOBI:
        a, b = spec.a, spec.b
    elif spec.family == BasisFamily.CHEBYSHEV:
        a = b = -0.5
    else:
        raise ValidationError(
            message=f"No closed-form weight function for {spec.family.value}",
            error_code="UNSUPPORTED_BASIS_COMBINATION",
            details={"family": spec.family.value},
        )
    with np.errstate(divide="ignore"):
        return lam**a * (2.0 - lam) ** b


def normalize_at_zero(spec: BasisSpec, values: np.ndarray) -> np.ndarray:
    """Divide each column by g_k(0) (z = 1); columns with g_k(0) = 0 are left as is."""
    at_zero = basis_values(spec, np.array([0.0]), K=values.shape[1] - 1)[0]
    scale = np.where(at_zero == 0.0, 1.0, at_zero)
    return values / scale


def basis_curves_frame(
    spec: BasisSpec,
    K: Optional[int] = None,
    points: int = CURVE_POINTS,
    normalize: bool = False,
) -> pd.DataFrame:
    """Long-format curves: one row per (lambda, k) with the basis value.

    A 'weight' column carries the orthogonality weight where one exists
    (NaN otherwise).
    """
    grid = np.linspace(0.0, 2.0, points)
    values = basis_values(spec, grid, K=K)
    if normalize:
        values = normalize_at_zero(spec, values)
    try:
        weights = weight_function(spec, grid)
    except ValidationError:
        weights = np.full(points, np.nan)

    degree = values.shape[1] - 1
    return pd.DataFrame(
        {
            "lambda": np.tile(grid, degree + 1),
            "k": np.repeat(np.arange(degree + 1), points),
            "value": values.T.ravel(),
            "weight": np.tile(weights, degree + 1),
        }
    )
