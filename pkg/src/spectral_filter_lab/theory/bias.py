"""
A bias term cannot fill a missing frequency component.

Two isolated nodes with equal features produce the eigenvector
u = (e_0 - e_1) / sqrt(2) of L_hat (eigenvalue 1). u is orthogonal to X and
to the all-ones vector, hence to every column of XW + 1b.
"""

from dataclasses import dataclass

import numpy as np

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import Graph, normalized_laplacian
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.types import BiasReport

logger = get_logger(__name__)

PROJECTION_TOL = 1e-12
MIN_NODES = 4


@dataclass(frozen=True)
class BiasCounterexample:
    graph: Graph
    X: np.ndarray
    witness: np.ndarray


def bias_counterexample(n: int = MIN_NODES) -> BiasCounterexample:
    """
    Graph whose nodes 0 and 1 are isolated, nodes 2..n-1 a path; X = (1, 1, 2, ..., n-1).

    Example:
        >>> bias_counterexample(4).X.ravel()
        array([1., 1., 2., 3.])
    """
    if n < MIN_NODES:
        raise ValidationError(
            message=f"The bias counterexample needs n >= {MIN_NODES}, got {n}",
            error_code="INVALID_NODE_COUNT",
            details={"n": n},
        )
    graph = Graph.from_edges(n, [(i, i + 1) for i in range(2, n - 1)])
    X = np.concatenate([[1.0, 1.0], np.arange(2, n, dtype=float)])[:, None]
    witness = np.zeros(n)
    witness[:2] = [1.0, -1.0]
    witness /= np.sqrt(2.0)
    return BiasCounterexample(graph=graph, X=X, witness=witness)


def bias_check(n: int = 6, draws: int = 100, d_out: int = 3, seed: int = 0) -> BiasReport:
    """Verify u^T (XW + 1b) = 0 on random (W, b) and that u is an eigenvector of L_hat."""
    example = bias_counterexample(n)
    u = example.witness
    L_hat = normalized_laplacian(example.graph).to_dense()
    eigenvalue = float(u @ L_hat @ u)
    eigen_residual = float(np.linalg.norm(L_hat @ u - eigenvalue * u))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        W = rng.standard_normal((example.X.shape[1], d_out))
        b = rng.standard_normal(d_out)
        hidden = example.X @ W + b
        worst = max(worst, float(np.max(np.abs(u @ hidden))))

    passed = worst <= PROJECTION_TOL and eigen_residual <= PROJECTION_TOL
    logger.info(
        f"Bias check: n={n}, {draws} draws, max |u^T (XW + b)| = {worst:.3e}, "
        f"eigenvalue {eigenvalue:.6f}"
    )
    return BiasReport(
        check="bias",
        passed=passed,
        seed=seed,
        n=n,
        draws=draws,
        max_projection=worst,
        witness_eigenvalue=eigenvalue,
        tolerance=PROJECTION_TOL,
    )
