"""
Constructive universality of linear GNNs.

When the Laplacian has no multiple eigenvalue and the features have no
missing frequency component, any target z is reachable as g(L_hat) X W*:

1. draw W* until every entry of X_tilde W* is bounded away from 0
2. the filter must satisfy g(lambda_i) = z_tilde_i / (X_tilde W*)_i
3. with distinct lambda_i that is a square Vandermonde system

The reported coefficients come from a pivoted LU solve of the Vandermonde
system. The reconstruction evaluates the same interpolant in Newton form
over Leja-ordered nodes, which stays accurate where the monomial
coefficients do not.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from spectral_filter_lab.errors import NumericError, precondition_error
from spectral_filter_lab.graph.core import normalized_laplacian
from spectral_filter_lab.graph.generators import random_connected_graph
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.diagnostics import DEFAULT_TOL
from spectral_filter_lab.spectral.eigen import Spectrum, eigendecompose, gft, igft
from spectral_filter_lab.types import UniversalityReport

logger = get_logger(__name__)

MIN_PROJECTION = 1e-10
RESIDUAL_TOL = 1e-6


# =============================================================================
# Newton interpolation
# =============================================================================


def leja_order(nodes: np.ndarray) -> np.ndarray:
    """Permutation putting nodes in Leja order (largest |x| first, then max product distance)."""
    nodes = np.asarray(nodes, dtype=float)
    if nodes.size == 0:
        return np.zeros(0, dtype=np.int64)
    order = [int(np.argmax(np.abs(nodes)))]
    with np.errstate(divide="ignore"):
        log_dist = np.log(np.abs(nodes - nodes[order[0]]))
    remaining = np.ones(nodes.size, dtype=bool)
    remaining[order[0]] = False
    for _ in range(nodes.size - 1):
        candidates = np.where(remaining, log_dist, -np.inf)
        nxt = int(np.argmax(candidates))
        order.append(nxt)
        remaining[nxt] = False
        with np.errstate(divide="ignore"):
            log_dist = log_dist + np.log(np.abs(nodes - nodes[nxt]))
    return np.asarray(order, dtype=np.int64)


def newton_coefficients(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Divided differences c_k = f[x_0, ..., x_k] (nodes must be distinct)."""
    coeffs = np.array(values, dtype=float, copy=True)
    n = coeffs.size
    for j in range(1, n):
        coeffs[j:] = (coeffs[j:] - coeffs[j - 1 : -1]) / (nodes[j:] - nodes[: n - j])
    return coeffs


def newton_evaluate(nodes: np.ndarray, coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Nested evaluation of the Newton form at x."""
    x = np.asarray(x, dtype=float)
    result = np.full_like(x, coeffs[-1] if coeffs.size else 0.0)
    for k in range(coeffs.size - 2, -1, -1):
        result = result * (x - nodes[k]) + coeffs[k]
    return result


@dataclass(frozen=True)
class InterpolatingFilter:
    """Polynomial filter through (node, value) pairs in Newton form."""

    nodes: np.ndarray
    coeffs: np.ndarray

    @classmethod
    def fit(cls, nodes: np.ndarray, values: np.ndarray) -> "InterpolatingFilter":
        order = leja_order(nodes)
        ordered = np.asarray(nodes, dtype=float)[order]
        return cls(nodes=ordered, coeffs=newton_coefficients(ordered, np.asarray(values)[order]))

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        return newton_evaluate(self.nodes, self.coeffs, lam)


# =============================================================================
# Universality Solver
# =============================================================================


@dataclass(frozen=True)
class UniversalitySolution:
    """Output of universality_solve.

    Attributes:
        W_star: Length-d linear map
        poly_coeffs: Length-n monomial-in-lambda coefficients of g
        filter: Newton form of the same g, used for reconstruction
        relative_residual: ||g(L_hat) X W* - z|| / ||z||
        attempts: W* draws needed
    """

    W_star: np.ndarray
    poly_coeffs: np.ndarray
    filter: InterpolatingFilter
    relative_residual: float
    attempts: int


def check_distinct(s: Spectrum, tol_eig: float) -> None:
    gaps = np.diff(s.eigenvalues)
    close = np.flatnonzero(gaps <= tol_eig)
    if close.size:
        raise precondition_error(
            "multiple_eigenvalues",
            {
                "index_pairs": [[int(i), int(i) + 1] for i in close[:10]],
                "min_gap": float(gaps.min()),
                "tol_eig": tol_eig,
            },
        )


def check_no_missing(X_tilde: np.ndarray, tol_missing: float) -> None:
    norms = np.linalg.norm(X_tilde.reshape(X_tilde.shape[0], -1), axis=1)
    missing = np.flatnonzero(norms <= tol_missing)
    if missing.size:
        raise precondition_error(
            "missing_frequency_component",
            {
                "indices": missing[:10].tolist(),
                "count": int(missing.size),
                "tol_missing": tol_missing,
            },
        )


def apply_spectral_response(s: Spectrum, response: np.ndarray, x: np.ndarray) -> np.ndarray:
    """U diag(response) U^T x."""
    return igft(s, response * gft(s, x))


def universality_solve(
    s: Spectrum,
    X: np.ndarray,
    z: np.ndarray,
    seed: int = 0,
    tol_eig: float = DEFAULT_TOL,
    tol_missing: float = DEFAULT_TOL,
    max_tries: int = 100,
) -> UniversalitySolution:
    """
    Find W* and a polynomial g with g(L_hat) X W* = z.

    Args:
        s: Spectrum of the normalized Laplacian
        X: n x d features (a vector is treated as d = 1)
        z: Length-n target
        seed: Seed for the W* draws
        tol_eig: Minimum eigenvalue gap
        tol_missing: Minimum row norm of gft(X)
        max_tries: W* draws before giving up

    Returns:
        UniversalitySolution with the verified relative residual

    Raises:
        ValidationError: PRECONDITION_VIOLATED naming multiple_eigenvalues or
            missing_frequency_component
        NumericError: If no admissible W* is found (a residual above 1e-6 is
            logged as a warning and reported, not raised)

    Example:
        >>> sol = universality_solve(s_p2, np.array([[1.0], [0.0]]), np.array([0.0, 1.0]))
        >>> sol.relative_residual < 1e-12
        True
    """
    X = np.asarray(X, dtype=float).reshape(s.n, -1)
    z = np.asarray(z, dtype=float)
    check_distinct(s, tol_eig)
    X_tilde = gft(s, X)
    check_no_missing(X_tilde, tol_missing)

    rng = np.random.default_rng(seed)
    for attempt in range(1, max_tries + 1):
        W_star = rng.standard_normal(X.shape[1])
        W_star /= np.linalg.norm(W_star)
        projected = X_tilde @ W_star
        if np.min(np.abs(projected)) > MIN_PROJECTION:
            break
    else:
        raise NumericError(
            message=f"No W* with |X_tilde W*| > {MIN_PROJECTION} in {max_tries} draws",
            error_code="NO_ADMISSIBLE_PROJECTION",
            details={"max_tries": max_tries, "seed": seed},
        )

    response = gft(s, z) / projected
    vandermonde = np.vander(s.eigenvalues, increasing=True)
    poly_coeffs = scipy.linalg.lu_solve(scipy.linalg.lu_factor(vandermonde), response)

    g = InterpolatingFilter.fit(s.eigenvalues, response)
    reconstruction = apply_spectral_response(s, g(s.eigenvalues), X @ W_star)
    scale = max(float(np.linalg.norm(z)), np.finfo(float).tiny)
    residual = float(np.linalg.norm(reconstruction - z)) / scale

    logger.debug(f"universality_solve: n={s.n}, attempts={attempt}, residual={residual:.3e}")
    if residual > RESIDUAL_TOL:
        logger.warning(
            f"Universality reconstruction residual {residual:.3e} exceeds {RESIDUAL_TOL} "
            f"(n={s.n}, min gap {float(np.min(np.diff(s.eigenvalues), initial=np.inf)):.3e})"
        )
    return UniversalitySolution(
        W_star=W_star,
        poly_coeffs=poly_coeffs,
        filter=g,
        relative_residual=residual,
        attempts=attempt,
    )


def universality_check(
    graphs: int = 50,
    n_range: tuple[int, int] = (8, 30),
    seed: int = 0,
    min_gap: float = 1e-3,
    edge_probability: float = 0.3,
) -> UniversalityReport:
    """Solve random targets on seeded random connected graphs with well-separated spectra."""

    rng = np.random.default_rng(seed)
    worst = 0.0
    solved = 0
    graph_seed = seed * 100_003
    max_draws = graphs * 50
    draws = 0
    while solved < graphs:
        draws += 1
        if draws > max_draws:
            raise NumericError(
                message=f"Only {solved} of {graphs} graphs had eigenvalue gaps >= {min_gap}",
                error_code="GENERATION_FAILED",
                details={"draws": max_draws, "min_gap": min_gap, "n_range": list(n_range)},
                suggestions=["Lower min_gap or narrow n_range"],
            )
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        g = random_connected_graph(n, edge_probability, graph_seed)
        graph_seed += 1_000
        s = eigendecompose(normalized_laplacian(g))
        if np.min(np.diff(s.eigenvalues)) < min_gap:
            continue
        X = rng.standard_normal((n, 3))
        z = rng.standard_normal(n)
        solution = universality_solve(s, X, z, seed=int(rng.integers(2**31)))
        worst = max(worst, solution.relative_residual)
        solved += 1

    logger.info(f"Universality check: {graphs} graphs, max residual {worst:.3e}")
    return UniversalityReport(
        check="universality",
        passed=worst <= RESIDUAL_TOL,
        seed=seed,
        graphs=graphs,
        max_relative_residual=worst,
        tolerance=RESIDUAL_TOL,
    )
