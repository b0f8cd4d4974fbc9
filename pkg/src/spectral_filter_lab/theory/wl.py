"""
1-WL color refinement and the message-passing bound it implies.

A polynomial filter of degree K over the normalized adjacency cannot tell
apart two nodes that WL_{K+1} colors equally (one extra round accounts for
the degree normalization). wl_bound_check verifies this on random models.
"""

from dataclasses import dataclass
from typing import Any, Hashable, Optional, Sequence

import numpy as np

from spectral_filter_lab.errors import dimension_mismatch_error
from spectral_filter_lab.graph.core import Graph, normalized_adjacency
from spectral_filter_lab.graph.generators import erdos_renyi_generate
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.model.core import init_model, predict
from spectral_filter_lab.types import BasisFamily, BasisSpec, WlBoundReport

logger = get_logger(__name__)

QUANTUM = 1e-9
OUTPUT_TOL = 1e-8


@dataclass(frozen=True)
class WlColoring:
    """Integer node colors after each refinement round (round 0 is the initial coloring)."""

    labels: tuple[np.ndarray, ...]

    @property
    def iterations(self) -> int:
        return len(self.labels) - 1

    @property
    def final(self) -> np.ndarray:
        return self.labels[-1]

    def classes(self, iteration: int = -1) -> list[np.ndarray]:
        """Node index arrays of each color, ordered by color."""
        labels = self.labels[iteration]
        return [np.flatnonzero(labels == c) for c in np.unique(labels)]


def quantize(X: np.ndarray, quantum: float = QUANTUM) -> list[tuple[int, ...]]:
    """Hashable per-node keys: feature rows rounded to a grid of width `quantum`."""
    X = np.asarray(X, dtype=float)
    rows = np.rint(X.reshape(X.shape[0], -1) / quantum).astype(np.int64)
    return [tuple(row.tolist()) for row in rows]


def encode_labels(values: Sequence[Hashable]) -> np.ndarray:
    """Map hashable labels to consecutive integers (sorted order when comparable)."""
    try:
        palette = {v: i for i, v in enumerate(sorted(set(values)))}
    except TypeError:
        palette = {}
        for v in values:
            palette.setdefault(v, len(palette))
    return np.array([palette[v] for v in values], dtype=np.int64)


def wl_refine(g: Graph, init_labels: Sequence[Hashable], iters: int) -> WlColoring:
    """
    Run exactly `iters` rounds of 1-WL refinement.

    Each round recodes (own color, sorted multiset of neighbor colors) into
    consecutive integers, so partitions never coarsen.

    Example:
        >>> wl_refine(path_graph(3), [0, 0, 0], 1).final
        array([0, 1, 0])
    """
    if len(init_labels) != g.n:
        raise dimension_mismatch_error("initial labels", g.n, len(init_labels))
    adj = g.adjacency
    neighbors = [adj.indices[adj.indptr[i] : adj.indptr[i + 1]] for i in range(g.n)]
    labels = encode_labels(list(init_labels))
    history = [labels]
    for _ in range(iters):
        signatures = [
            (int(labels[i]), tuple(sorted(labels[nbrs].tolist())))
            for i, nbrs in enumerate(neighbors)
        ]
        labels = encode_labels(signatures)
        history.append(labels)
    return WlColoring(labels=tuple(history))


def _random_jacobi_model(d: int, K: int, rng: np.random.Generator):
    spec = BasisSpec(
        family=BasisFamily.JACOBI,
        K=K,
        a=float(rng.uniform(-0.5, 2.0)),
        b=float(rng.uniform(-0.5, 2.0)),
    )
    model = init_model(d, 2, spec, seed=int(rng.integers(2**31)))
    return model.with_parameters(
        {
            "coeffs": rng.standard_normal(model.coeffs.shape),
            "bias": rng.standard_normal(2),
        }
    )


def wl_bound_check(
    g: Graph,
    X: Optional[np.ndarray] = None,
    K: int = 3,
    trials: int = 10,
    seed: int = 0,
) -> WlBoundReport:
    """
    Check that WL_{K+1}-equivalent nodes get equal outputs from random degree-K models.

    Args:
        g: Graph
        X: n x d features (defaults to g.features, then to all-ones)
        K: Filter degree
        trials: Random (basis, coefficient, W, b) draws
        seed: RNG seed

    Returns:
        WlBoundReport listing every pair whose outputs differ by more than
        1e-8 * max(1, max|Z|)
    """
    if X is None:
        X = g.features if g.features is not None else np.ones((g.n, 1))
    X = np.asarray(X, dtype=float).reshape(g.n, -1)
    classes = [c for c in wl_refine(g, quantize(X), K + 1).classes() if c.size > 1]
    A_hat = normalized_adjacency(g)
    rng = np.random.default_rng(seed)

    pairs = 0
    violations: list[dict[str, Any]] = []
    for trial in range(trials):
        Z = predict(_random_jacobi_model(X.shape[1], K, rng), A_hat, X)
        tol = OUTPUT_TOL * max(1.0, float(np.max(np.abs(Z), initial=0.0)))
        for members in classes:
            deviation = np.max(np.abs(Z[members[1:]] - Z[members[0]]), axis=1)
            pairs += int(members.size - 1)
            for j in np.flatnonzero(deviation > tol):
                violations.append(
                    {
                        "trial": trial,
                        "nodes": [int(members[0]), int(members[j + 1])],
                        "deviation": float(deviation[j]),
                        "tolerance": tol,
                    }
                )

    if violations:
        logger.warning(f"WL bound: {len(violations)} violation(s) on n={g.n}, K={K}")
    return WlBoundReport(
        check="wl",
        passed=not violations,
        seed=seed,
        K=K,
        trials=trials,
        pairs_checked=pairs,
        violations=violations,
    )


def wl_check(
    graphs: int = 30,
    n_max: int = 30,
    K_max: int = 4,
    trials: int = 10,
    seed: int = 0,
    edge_probability: float = 0.2,
) -> WlBoundReport:
    """wl_bound_check over seeded G(n, p) graphs with binary node features."""
    rng = np.random.default_rng(seed)
    pairs = 0
    violations: list[dict[str, Any]] = []
    for index in range(graphs):
        n = int(rng.integers(4, n_max + 1))
        g = erdos_renyi_generate(n, edge_probability, seed * 7_919 + index)
        X = rng.integers(0, 2, size=(n, 1)).astype(float)
        K = int(rng.integers(1, K_max + 1))
        report = wl_bound_check(g, X, K=K, trials=trials, seed=int(rng.integers(2**31)))
        pairs += report.pairs_checked
        violations.extend({"graph": index, "n": n, "K": K, **v} for v in report.violations)

    logger.info(
        f"WL check: {graphs} graphs, {pairs} equal-color pairs, {len(violations)} violation(s)"
    )
    return WlBoundReport(
        check="wl",
        passed=not violations,
        seed=seed,
        K=K_max,
        trials=trials,
        pairs_checked=pairs,
        violations=violations,
    )
