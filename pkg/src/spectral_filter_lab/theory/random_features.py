"""
Random node features and the universality they restore.

The GFT of x ~ N(0, sigma^2 I) is again N(0, sigma^2 I), so Gaussian
columns have no missing frequency component. Appending as many of them as
the total multiplicity of the repeated eigenvalues makes the block of
X_tilde on those rows invertible with probability 1, and any target then
becomes reachable by a linear GNN.
"""

from dataclasses import dataclass

import numpy as np

from spectral_filter_lab.errors import NumericError, ValidationError
from spectral_filter_lab.graph.core import normalized_laplacian
from spectral_filter_lab.graph.generators import complete_graph, grid_graph, path_graph
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.diagnostics import DEFAULT_TOL, cluster_eigenvalues
from spectral_filter_lab.spectral.eigen import Spectrum, eigendecompose, gft
from spectral_filter_lab.theory.universality import (
    MIN_PROJECTION,
    RESIDUAL_TOL,
    InterpolatingFilter,
    apply_spectral_response,
    universality_solve,
)
from spectral_filter_lab.types import RandomFeatureReport, RandomSpectrumReport

logger = get_logger(__name__)

MIN_SAMPLES = 1000
BOUND_FACTOR = 5.0
MAX_BLOCK_COND = 1e12


# =============================================================================
# Gaussian Spectrum Invariance
# =============================================================================


def random_feature_spectrum_test(
    s: Spectrum, sigma: float = 1.0, samples: int = 10_000, seed: int = 0
) -> RandomSpectrumReport:
    """
    Monte Carlo check that gft(x) of x ~ N(0, sigma^2 I) has mean 0 and covariance sigma^2 I.

    Passes when max |mean| <= 5 sigma / sqrt(samples) and every covariance
    entry is within 5 sigma^2 / sqrt(samples) of sigma^2 I. Parseval is
    checked per sample.

    Raises:
        ValidationError: INVALID_SAMPLES below 1000 samples, INVALID_SIGMA for sigma < 0
    """
    if samples < MIN_SAMPLES:
        raise ValidationError(
            message=f"Need at least {MIN_SAMPLES} samples, got {samples}",
            error_code="INVALID_SAMPLES",
            details={"samples": samples},
        )
    if sigma < 0:
        raise ValidationError(
            message=f"sigma must be >= 0, got {sigma}",
            error_code="INVALID_SIGMA",
            details={"sigma": sigma},
        )

    rng = np.random.default_rng(seed)
    x = rng.normal(0.0, 1.0, size=(samples, s.n)) * sigma
    # rows are samples, so U^T x for each is x @ U
    x_tilde = x @ s.eigenvectors

    mean = x_tilde.mean(axis=0)
    cov = np.cov(x_tilde, rowvar=False).reshape(s.n, s.n)
    max_abs_mean = float(np.max(np.abs(mean)))
    max_cov_dev = float(np.max(np.abs(cov - sigma**2 * np.eye(s.n))))
    norm_error = float(np.max(np.abs(np.linalg.norm(x_tilde, axis=1) - np.linalg.norm(x, axis=1))))

    mean_bound = BOUND_FACTOR * sigma / np.sqrt(samples)
    cov_bound = BOUND_FACTOR * sigma**2 / np.sqrt(samples)
    passed = max_abs_mean <= mean_bound and max_cov_dev <= cov_bound
    logger.info(
        f"Random spectrum test: n={s.n}, sigma={sigma}, max|mean|={max_abs_mean:.3e} "
        f"(bound {mean_bound:.3e}), max cov deviation={max_cov_dev:.3e} (bound {cov_bound:.3e})"
    )
    return RandomSpectrumReport(
        check="randfeat_spectrum",
        passed=passed,
        seed=seed,
        n=s.n,
        sigma=sigma,
        samples=samples,
        max_abs_mean=max_abs_mean,
        max_cov_deviation=max_cov_dev,
        mean_bound=mean_bound,
        cov_bound=cov_bound,
        max_norm_error=norm_error,
    )


# =============================================================================
# Random-Feature Universality
# =============================================================================


@dataclass(frozen=True)
class RandomFeatureSolution:
    """Augmented features [X | R] and the linear GNN reproducing the target.

    Attributes:
        R: n x m Gaussian columns appended to X (m = 0 for a simple spectrum)
        W_star: Length-(d + m) linear map on [X | R]
        filter: Polynomial g with g(L_hat) [X | R] W* = z
        relative_residual: ||g(L_hat) [X | R] W* - z|| / ||z||
        attempts: Feature draws needed
    """

    R: np.ndarray
    W_star: np.ndarray
    filter: InterpolatingFilter
    relative_residual: float
    attempts: int

    @property
    def augmented_dims(self) -> int:
        return int(self.R.shape[1])


def _multiple_rows(groups: list[tuple[int, int]]) -> np.ndarray:
    rows = [np.arange(a, b) for a, b in groups if b - a > 1]
    return np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)


def random_feature_universality(
    s: Spectrum,
    X: np.ndarray,
    z: np.ndarray,
    seed: int = 0,
    tol_eig: float = DEFAULT_TOL,
    max_resamples: int = 20,
) -> RandomFeatureSolution:
    """
    Reach target z after appending Gaussian feature columns to X.

    With m = total multiplicity of the repeated eigenvalues, m Gaussian
    columns are appended. On the m rows of repeated eigenvalues the filter is
    fixed to 1 and W* is the minimum-norm solution of the block system
    [X_tilde | R_tilde]_M W* = z_tilde_M. On every simple eigenvalue the
    filter is the pointwise ratio z_tilde_i / ([X_tilde | R_tilde] W*)_i. An
    ill-conditioned block or a vanishing ratio denominator triggers a redraw
    with the next seed.

    Without repeated eigenvalues this is universality_solve on X itself.

    Args:
        s: Spectrum of the normalized Laplacian
        X: n x d features
        z: Length-n target
        seed: Seed of the first draw (redraws use seed + 1, seed + 2, ...)
        tol_eig: Eigenvalue gap below which eigenvalues are grouped
        max_resamples: Draws before giving up

    Raises:
        NumericError: SINGULAR_RANDOM_BLOCK when every draw is degenerate
    """
    X = np.asarray(X, dtype=float).reshape(s.n, -1)
    z = np.asarray(z, dtype=float)
    groups = cluster_eigenvalues(s.eigenvalues, tol_eig)
    rows = _multiple_rows(groups)

    if rows.size == 0:
        solution = universality_solve(s, X, z, seed=seed, tol_eig=tol_eig)
        return RandomFeatureSolution(
            R=np.zeros((s.n, 0)),
            W_star=solution.W_star,
            filter=solution.filter,
            relative_residual=solution.relative_residual,
            attempts=solution.attempts,
        )

    m = int(rows.size)
    z_tilde = gft(s, z)
    centers = np.array([s.eigenvalues[a:b].mean() for a, b in groups])
    singles = np.array([a for a, b in groups if b - a == 1], dtype=np.int64)

    for attempt in range(1, max_resamples + 1):
        rng = np.random.default_rng(seed + attempt - 1)
        R = rng.standard_normal((s.n, m))
        features = np.hstack([X, R])
        block = gft(s, features)[rows]
        if np.linalg.cond(block) > MAX_BLOCK_COND:
            logger.warning(f"Random feature block is ill-conditioned (draw {attempt}); resampling")
            continue
        W_star = np.linalg.lstsq(block, z_tilde[rows], rcond=None)[0]
        projected = gft(s, features @ W_star)
        if singles.size and np.min(np.abs(projected[singles])) <= MIN_PROJECTION:
            logger.warning(f"Random features miss a simple eigenvalue (draw {attempt}); resampling")
            continue
        break
    else:
        raise NumericError(
            message=f"No usable random feature draw in {max_resamples} attempts",
            error_code="SINGULAR_RANDOM_BLOCK",
            details={"seed": seed, "augmented_dims": m},
        )

    values = np.ones(len(groups))
    simple = np.array([b - a == 1 for a, b in groups])
    values[simple] = z_tilde[singles] / projected[singles]
    g = InterpolatingFilter.fit(centers, values)

    reconstruction = apply_spectral_response(s, g(s.eigenvalues), features @ W_star)
    scale = max(float(np.linalg.norm(z)), np.finfo(float).tiny)
    residual = float(np.linalg.norm(reconstruction - z)) / scale
    logger.debug(
        f"random_feature_universality: n={s.n}, augmented={m}, attempts={attempt}, "
        f"residual={residual:.3e}"
    )
    return RandomFeatureSolution(
        R=R, W_star=W_star, filter=g, relative_residual=residual, attempts=attempt
    )


def random_feature_check(seeds: int = 20, seed: int = 0) -> RandomFeatureReport:
    """
    Solve random targets with constant features on graphs with repeated eigenvalues.

    Uses K3, K5, the 3 x 3 grid and the 4-path (a simple spectrum, solved
    directly), one draw per (graph, seed).
    """
    graphs = {
        "K3": complete_graph(3),
        "K5": complete_graph(5),
        "grid3x3": grid_graph(3, 3),
        "P4": path_graph(4),
    }
    attempts = 0
    successes = 0
    worst = 0.0
    widest = 0
    for name, g in graphs.items():
        s = eigendecompose(normalized_laplacian(g))
        # constant features lack components outside one eigenspace; P4 gets Gaussian ones
        for k in range(seeds):
            rng = np.random.default_rng([seed, k])
            X = np.ones((g.n, 1)) if name != "P4" else rng.standard_normal((g.n, 1))
            z = rng.standard_normal(g.n)
            attempts += 1
            try:
                solution = random_feature_universality(s, X, z, seed=seed * 1_000 + k)
            except NumericError as e:
                logger.warning(f"Random feature solve failed on {name}, seed {k}: {e.message}")
                continue
            worst = max(worst, solution.relative_residual)
            widest = max(widest, solution.augmented_dims)
            if solution.relative_residual <= RESIDUAL_TOL:
                successes += 1

    logger.info(f"Random feature check: {successes}/{attempts} solved, max residual {worst:.3e}")
    return RandomFeatureReport(
        check="randfeat",
        passed=successes == attempts,
        seed=seed,
        attempts=attempts,
        successes=successes,
        augmented_dims=widest,
        max_relative_residual=worst,
    )
