"""
One shared filter cannot produce every multi-channel prediction.

On P2 with X = (1, 0)^T and a single input channel, a UniFilter model
outputs Z = v w^T with v = g(L_hat) x, so Z has rank one whatever the
polynomial. The target Y = [[0.5, 0.5], [0.5, -0.5]] has two equal singular
values, so every rank-one Z leaves loss >= sigma_2^2 / 2 = 0.25. One filter
per channel fits Y exactly.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from spectral_filter_lab.bases.operator import apply_basis
from spectral_filter_lab.graph.core import Graph, normalized_adjacency, normalized_laplacian
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.model.core import LinearGnnModel, init_model, predict
from spectral_filter_lab.model.loss import compute_loss
from spectral_filter_lab.model.training import TrainTask, train
from spectral_filter_lab.spectral.diagnostics import cluster_eigenvalues
from spectral_filter_lab.spectral.eigen import Spectrum, eigendecompose, gft
from spectral_filter_lab.types import BasisSpec, TrainConfig, UnifilterReport

logger = get_logger(__name__)

MIN_GAP = 0.1
FIT_TOL = 1e-10
SCAN_STEPS = 20_000


@dataclass(frozen=True)
class UnifilterCounterexample:
    graph: Graph
    X: np.ndarray
    Y: np.ndarray


def unifilter_counterexample() -> UnifilterCounterexample:
    return UnifilterCounterexample(
        graph=Graph.from_edges(2, [(0, 1)]),
        X=np.array([[1.0], [0.0]]),
        Y=np.array([[0.5, 0.5], [0.5, -0.5]]),
    )


def reachable_subspace(s: Spectrum, x: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """
    Orthonormal basis of {g(L_hat) x : g any polynomial}.

    Each distinct eigenvalue contributes the projection of x on its eigenspace.
    """
    x_tilde = gft(s, np.asarray(x, dtype=float).ravel())
    columns = []
    for start, end in cluster_eigenvalues(s.eigenvalues):
        part = s.eigenvectors[:, start:end] @ x_tilde[start:end]
        if np.linalg.norm(part) > tol:
            columns.append(part / np.linalg.norm(part))
    if not columns:
        return np.zeros((s.n, 0))
    return np.column_stack(columns)


def unifilter_optimal_loss(s: Spectrum, x: np.ndarray, Y: np.ndarray) -> float:
    """
    Least-squares optimum of 1/2 ||v w^T - Y||_F^2 over reachable v and any w.

    For unit v the best w is Y^T v, leaving (||Y||^2 - ||Y^T v||^2) / 2; the
    maximum of ||Y^T v|| over the subspace Q is the top singular value of Q^T Y.

    Example:
        >>> ex = unifilter_counterexample()
        >>> s = eigendecompose(normalized_laplacian(ex.graph))
        >>> round(unifilter_optimal_loss(s, ex.X, ex.Y), 12)
        0.25
    """
    Q = reachable_subspace(s, x)
    total = float(np.sum(Y**2))
    if Q.shape[1] == 0:
        return 0.5 * total
    top = float(np.linalg.svd(Q.T @ Y, compute_uv=False)[0])
    return 0.5 * (total - top**2)


def unifilter_scan_loss(
    s: Spectrum, x: np.ndarray, Y: np.ndarray, steps: int = SCAN_STEPS
) -> Optional[float]:
    """Brute-force minimum over unit directions of a two-dimensional reachable subspace."""
    Q = reachable_subspace(s, x)
    if Q.shape[1] != 2:
        return None
    theta = np.linspace(0.0, np.pi, steps, endpoint=False)
    V = Q @ np.vstack([np.cos(theta), np.sin(theta)])
    captured = np.sum((Y.T @ V) ** 2, axis=0)
    return float(0.5 * (np.sum(Y**2) - captured.max()))


def multi_filter_fit(
    graph: Graph, X: np.ndarray, Y: np.ndarray, spec: BasisSpec
) -> tuple[LinearGnnModel, float]:
    """Per-channel least-squares coefficients with W = 1; returns the model and its loss."""
    A_hat = normalized_adjacency(graph)
    B = np.column_stack(apply_basis(spec, A_hat, X[:, 0]))
    coeffs = np.linalg.lstsq(B, Y, rcond=None)[0]
    model = LinearGnnModel(
        W=np.ones((1, Y.shape[1])), bias=None, coeffs=coeffs, spec=spec, unifilter=False
    )
    loss, _ = compute_loss("squared", predict(model, A_hat, X), Y, np.arange(graph.n))
    return model, loss


def unifilter_check(
    K: int = 1, epochs: int = 2000, lr: float = 0.05, seed: int = 0
) -> UnifilterReport:
    """
    Compare the UniFilter optimum with the multi-filter model on P2.

    The check passes when the UniFilter optimum is >= MIN_GAP and the
    least-squares multi-filter fit is <= FIT_TOL. The multi-filter model is
    also trained with Adam from its identity start and the final loss reported.
    """
    example = unifilter_counterexample()
    s = eigendecompose(normalized_laplacian(example.graph))
    optimum = unifilter_optimal_loss(s, example.X, example.Y)
    scanned = unifilter_scan_loss(s, example.X, example.Y)

    spec = BasisSpec(family="monomial", K=K)
    _, fitted = multi_filter_fit(example.graph, example.X, example.Y, spec)

    model = init_model(1, 2, spec, seed=seed, bias=False)
    cfg = TrainConfig(
        lr_linear=lr, lr_coeffs=lr, max_epochs=epochs, patience=epochs, seed=seed, log_every=500
    )
    task = TrainTask(
        A_hat=normalized_adjacency(example.graph),
        X=example.X,
        target=example.Y,
        train_index=np.arange(2),
    )
    _, history = train(model, task, cfg)
    trained = min(r.train_loss for r in history.records)

    passed = optimum >= MIN_GAP and fitted <= FIT_TOL
    logger.info(
        f"UniFilter check: shared-filter optimum {optimum:.6f}, multi-filter fit {fitted:.3e}, "
        f"trained {trained:.3e} after {history.epochs_run} epochs"
    )
    return UnifilterReport(
        check="unifilter",
        passed=passed,
        seed=seed,
        K=K,
        unifilter_optimal_loss=optimum,
        scan_loss=scanned,
        multi_filter_fit_loss=fitted,
        multi_filter_trained_loss=trained,
        epochs=history.epochs_run,
        min_gap=MIN_GAP,
        fit_tolerance=FIT_TOL,
    )
