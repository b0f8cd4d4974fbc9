"""
Filter degree needed when a simple target is fitted from random features.

On a path graph the target z = A_hat 1 is a degree-1 filter of the constant
signal. From a Gaussian feature x the filter must instead satisfy
g(lambda_i) = z_tilde_i / x_tilde_i, whose sign changes with x_tilde make g
oscillate, so the degree reaching a small residual grows with n.
"""

import numpy as np
from numpy.polynomial import chebyshev

from spectral_filter_lab.graph.core import normalized_adjacency, normalized_laplacian
from spectral_filter_lab.graph.generators import path_graph
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.diagnostics import DEFAULT_TOL, cluster_eigenvalues
from spectral_filter_lab.spectral.eigen import eigendecompose, gft
from spectral_filter_lab.types import DegreeDemoReport

logger = get_logger(__name__)

REL_TOLERANCE = 1e-3
RATIO_THRESHOLD = 0.25


def fit_residual(lam: np.ndarray, x_tilde: np.ndarray, z_tilde: np.ndarray, degree: int) -> float:
    """Relative residual of the best degree-K filter g with g(lambda) x_tilde ~ z_tilde."""
    design = chebyshev.chebvander(lam - 1.0, degree) * x_tilde[:, None]
    coeffs = np.linalg.lstsq(design, z_tilde, rcond=None)[0]
    return float(np.linalg.norm(design @ coeffs - z_tilde) / np.linalg.norm(z_tilde))


def random_feature_degree_demo(
    n: int = 64,
    seed: int = 0,
    rel_tolerance: float = REL_TOLERANCE,
    threshold: float = RATIO_THRESHOLD,
) -> DegreeDemoReport:
    """
    Smallest fit degree reaching `rel_tolerance` on P_n with a Gaussian feature.

    Passes when min_degree / (number of distinct eigenvalues) >= threshold.
    The threshold is empirical; the report carries the residual per degree.
    """
    g = path_graph(n)
    s = eigendecompose(normalized_laplacian(g))
    n_distinct = len(cluster_eigenvalues(s.eigenvalues, DEFAULT_TOL))

    rng = np.random.default_rng(seed)
    x_tilde = gft(s, rng.standard_normal(n))
    z_tilde = gft(s, normalized_adjacency(g).matvec(np.ones(n)))

    residuals: dict[int, float] = {}
    min_degree = None
    for degree in range(n):
        residuals[degree] = fit_residual(s.eigenvalues, x_tilde, z_tilde, degree)
        if residuals[degree] <= rel_tolerance:
            min_degree = degree
            break

    ratio = None if min_degree is None else min_degree / n_distinct
    passed = ratio is not None and ratio >= threshold
    logger.info(
        f"Degree demo on P{n}: {n_distinct} distinct eigenvalues, minimum degree {min_degree}, "
        f"ratio {ratio}"
    )
    return DegreeDemoReport(
        check="degree_demo",
        passed=passed,
        seed=seed,
        n=n,
        n_distinct=n_distinct,
        min_degree=min_degree,
        ratio=ratio,
        rel_tolerance=rel_tolerance,
        residuals=residuals,
    )
