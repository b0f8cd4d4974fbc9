"""
Operator evaluation B_k = g_k(A_hat) h of the filter bases.

Recurrence families cost exactly K sparse mat-vecs. Bernstein uses the
expanded form

    B_k = C(K, k) 2^-K (I + A_hat)^(K-k) (I - A_hat)^k h

at O(K^2) mat-vecs. With PCD gammas (Jacobi only) the scaled recurrence
produces B~_k = (prod_{i<=k} gamma_i) B_k directly:

    B~_1 = gamma_1 [(a-b)/2 h + (a+b+2)/2 A_hat h]
    B~_k = gamma_k theta_k A_hat B~_{k-1} + gamma_k theta'_k B~_{k-1}
           - gamma_k gamma_{k-1} theta''_k B~_{k-2}
"""

from typing import Optional

import numpy as np

from spectral_filter_lab.bases.recurrence import jacobi_first, jacobi_recurrence
from spectral_filter_lab.bases.scalar import binomial
from spectral_filter_lab.errors import ValidationError, dimension_mismatch_error
from spectral_filter_lab.graph.core import SymmetricOperator
from spectral_filter_lab.types import BasisFamily, BasisSpec


def _jacobi(
    spec: BasisSpec, A_hat: SymmetricOperator, h: np.ndarray, gammas: np.ndarray
) -> list[np.ndarray]:
    c0, c1 = jacobi_first(spec.a, spec.b)
    out = [h, gammas[0] * (c0 * h + c1 * A_hat.matvec(h))]
    for k in range(2, spec.K + 1):
        r = jacobi_recurrence(spec.a, spec.b, k)
        g_k, g_prev = gammas[k - 1], gammas[k - 2]
        out.append(
            g_k * r.theta * A_hat.matvec(out[-1])
            + g_k * r.theta_prime * out[-1]
            - g_k * g_prev * r.theta_dprime * out[-2]
        )
    return out


def _bernstein(spec: BasisSpec, A_hat: SymmetricOperator, h: np.ndarray) -> list[np.ndarray]:
    K = spec.K
    # (I - A_hat)^k h for k = 0..K
    lows = [h]
    for _ in range(K):
        lows.append(lows[-1] - A_hat.matvec(lows[-1]))
    out = []
    for k in range(K + 1):
        v = lows[k]
        for _ in range(K - k):
            v = v + A_hat.matvec(v)
        out.append(binomial(K, k) * 2.0**-K * v)
    return out


def apply_basis(
    spec: BasisSpec,
    A_hat: SymmetricOperator,
    h: np.ndarray,
    gammas: Optional[np.ndarray] = None,
) -> list[np.ndarray]:
    """
    Compute B_0..B_K = g_k(A_hat) h.

    Args:
        spec: Basis specification (degree spec.K)
        A_hat: Normalized adjacency
        h: n-vector or n x c matrix (each column filtered independently)
        gammas: Optional length-K PCD scale factors gamma_1..gamma_K (Jacobi only)

    Returns:
        List of K+1 arrays shaped like h

    Raises:
        ValidationError: On dimension mismatch or gammas with a non-Jacobi family
    """
    h = np.asarray(h, dtype=float)
    if h.shape[0] != A_hat.n:
        raise dimension_mismatch_error("basis input rows", A_hat.n, h.shape[0])

    family = spec.family
    K = spec.K

    if gammas is not None:
        if family != BasisFamily.JACOBI:
            raise ValidationError(
                message=f"PCD scale factors need the Jacobi basis, not {family.value}",
                error_code="UNSUPPORTED_BASIS_COMBINATION",
                details={"family": family.value},
            )
        gammas = np.asarray(gammas, dtype=float)
        if gammas.shape != (K,):
            raise dimension_mismatch_error("PCD gammas", (K,), gammas.shape)

    if family == BasisFamily.BERNSTEIN:
        return _bernstein(spec, A_hat, h)

    if family == BasisFamily.ORTHO_FITTED:
        a, s = spec.ortho.a, spec.ortho.s
        out = [h / np.sqrt(spec.ortho.mass)]
        for k in range(K):
            nxt = A_hat.matvec(out[k]) - a[k] * out[k]
            if k > 0:
                nxt = nxt - s[k - 1] * out[k - 1]
            out.append(nxt / s[k])
        return out

    if K == 0:
        return [h]

    if family == BasisFamily.JACOBI:
        return _jacobi(spec, A_hat, h, np.ones(K) if gammas is None else gammas)

    out = [h, A_hat.matvec(h)]
    if family == BasisFamily.CHEBYSHEV:
        for _ in range(2, K + 1):
            out.append(2.0 * A_hat.matvec(out[-1]) - out[-2])
    else:
        for _ in range(2, K + 1):
            out.append(A_hat.matvec(out[-1]))
    return out
