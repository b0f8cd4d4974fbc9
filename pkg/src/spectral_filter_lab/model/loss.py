"""
Losses and hand-derived gradients of the linear GNN.

With G = dR/dZ (zero outside the mask):

    dR/dalpha[k, l] = <B_k[:, l], G[:, l]>           (summed over l for UniFilter)
    dR/dX_hat[:, l] = sum_k alpha[k, l] g_k(A_hat) G[:, l]   (g_k(A_hat) symmetric)
    dR/dW           = X_in^T (dR/dX_hat * dropout_h scale)
    dR/db           = column sums of the same

Under PCD the stored beta multiplies the scaled basis B~_k, and the chain
rule through gamma_i = gamma' tanh(eta_i) gives

    dR/dgamma_i = sum_{k>=i} s_k prod_{j<=k, j!=i} gamma_j,
    s_k = sum_l beta[k, l] <B_k[:, l], G[:, l]>      (unscaled B_k)
"""

from typing import Literal, Optional

import numpy as np
from scipy.special import log_softmax, softmax

from spectral_filter_lab.bases.operator import apply_basis
from spectral_filter_lab.errors import ValidationError, dimension_mismatch_error
from spectral_filter_lab.graph.core import SymmetricOperator
from spectral_filter_lab.model.core import DropoutState, ForwardCache, LinearGnnModel, forward

LossKind = Literal["squared", "softmax_ce"]
LOSS_KINDS = ("squared", "softmax_ce")


def _as_index(mask: np.ndarray, n: int) -> np.ndarray:
    mask = np.asarray(mask)
    index = np.flatnonzero(mask) if mask.dtype == bool else mask.astype(np.int64)
    if index.size == 0:
        raise ValidationError(message="Loss mask selects no nodes", error_code="EMPTY_MASK")
    if mask.dtype == bool and mask.shape != (n,):
        raise dimension_mismatch_error("boolean mask", (n,), mask.shape)
    return index


def squared_loss(Z: np.ndarray, target: np.ndarray, index: np.ndarray) -> tuple[float, np.ndarray]:
    """R = 1/2 sum over masked rows of ||Z - Y||^2; returns (R, dR/dZ)."""
    residual = np.zeros_like(Z)
    residual[index] = Z[index] - target[index]
    return 0.5 * float(np.sum(residual**2)), residual


def softmax_ce_loss(
    Z: np.ndarray, labels: np.ndarray, index: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean cross-entropy of softmax(Z) over masked rows; returns (R, dR/dZ)."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.max(initial=-1) >= Z.shape[1]:
        raise dimension_mismatch_error("class count", Z.shape[1], int(labels.max()) + 1)
    log_probs = log_softmax(Z[index], axis=1)
    picked = log_probs[np.arange(index.size), labels[index]]
    grad = np.zeros_like(Z)
    probs = softmax(Z[index], axis=1)
    probs[np.arange(index.size), labels[index]] -= 1.0
    grad[index] = probs / index.size
    return -float(np.mean(picked)), grad


def _prepare_target(loss: str, target: np.ndarray, Z: np.ndarray) -> np.ndarray:
    target = np.asarray(target)
    if loss == "squared":
        target = target.astype(float).reshape(Z.shape[0], -1)
        if target.shape != Z.shape:
            raise dimension_mismatch_error("target", Z.shape, target.shape)
    elif target.shape != (Z.shape[0],):
        raise dimension_mismatch_error("class labels", (Z.shape[0],), target.shape)
    return target


def check_loss_kind(loss: str) -> None:
    if loss not in LOSS_KINDS:
        raise ValidationError(
            message=f"Unknown loss kind '{loss}'",
            error_code="UNKNOWN_LOSS",
            details={"loss": loss},
            suggestions=[f"Use one of: {', '.join(LOSS_KINDS)}"],
        )


def compute_loss(
    loss: str, Z: np.ndarray, target: np.ndarray, index: np.ndarray
) -> tuple[float, np.ndarray]:
    """Dispatch on loss kind; returns (value, dR/dZ)."""
    check_loss_kind(loss)
    target = _prepare_target(loss, target, Z)
    if loss == "squared":
        return squared_loss(Z, target, index)
    return softmax_ce_loss(Z, target, index)


def _channel_inner(B: np.ndarray, G: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->j", B, G)


def _pcd_eta_grad(
    m: LinearGnnModel, A_hat: SymmetricOperator, cache: ForwardCache, G: np.ndarray
) -> np.ndarray:
    gammas = cache.gammas
    K = gammas.size
    unscaled = apply_basis(m.spec, A_hat, cache.X_hat)
    beta = np.broadcast_to(m.coeffs, (K + 1, m.d_out))
    s = np.array([np.sum(beta[k] * _channel_inner(unscaled[k], G)) for k in range(K + 1)])

    grad_gamma = np.zeros(K)
    for i in range(1, K + 1):
        for k in range(i, K + 1):
            others = np.delete(gammas[:k], i - 1)
            grad_gamma[i - 1] += s[k] * np.prod(others)
    return grad_gamma * m.gamma_prime * (1.0 - np.tanh(m.eta) ** 2)


def backward(
    m: LinearGnnModel,
    A_hat: SymmetricOperator,
    cache: ForwardCache,
    G: np.ndarray,
) -> dict[str, np.ndarray]:
    """Gradients of every learnable parameter given dR/dZ."""
    grads: dict[str, np.ndarray] = {}

    if m.learn_coeffs:
        inner = np.stack([_channel_inner(B_k, G) for B_k in cache.basis])
        grads["coeffs"] = inner.sum(axis=1, keepdims=True) if m.coeffs.shape[1] == 1 else inner

    if m.pcd:
        grads["eta"] = _pcd_eta_grad(m, A_hat, cache, G)

    # g_k(A_hat) is symmetric, so the adjoint reuses the forward recurrence
    filtered = apply_basis(m.spec, A_hat, G, cache.gammas)
    d_X_hat = np.zeros_like(G)
    for k, F_k in enumerate(filtered):
        d_X_hat += m.coeffs[k][None, :] * F_k

    if cache.dropout is not None:
        d_X_hat = d_X_hat * cache.dropout.scale_h()

    grads["W"] = cache.X_in.T @ d_X_hat
    if m.bias is not None:
        grads["bias"] = d_X_hat.sum(axis=0)
    return grads


def loss_and_grads(
    m: LinearGnnModel,
    A_hat: SymmetricOperator,
    X: np.ndarray,
    target: np.ndarray,
    mask: np.ndarray,
    loss: LossKind = "squared",
    dropout: Optional[DropoutState] = None,
) -> tuple[float, dict[str, np.ndarray]]:
    """
    Loss value and analytic gradients for all learnable parameters.

    Args:
        m: Model
        A_hat: Normalized adjacency
        X: n x d features
        target: n x d_out real targets (squared) or length-n class ids (softmax_ce)
        mask: Boolean length-n mask or node index array
        loss: "squared" (1/2 sum) or "softmax_ce" (mean)
        dropout: Optional keep masks

    Returns:
        (loss value, {"W", "bias", "coeffs", "eta"} gradients present in the model)

    Raises:
        ValidationError: Unknown loss kind, empty mask, dimension mismatch
    """
    check_loss_kind(loss)
    index = _as_index(mask, A_hat.n)
    Z, cache = forward(m, A_hat, X, dropout)
    value, G = compute_loss(loss, Z, target, index)
    return value, backward(m, A_hat, cache, G)
