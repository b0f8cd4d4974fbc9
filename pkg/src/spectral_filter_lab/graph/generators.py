"""
Synthetic graph generators.

All random generators take an explicit integer seed and draw from
numpy.random.default_rng, so the same arguments always yield the same graph.
"""

from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import Graph
from spectral_filter_lab.logging import get_logger

logger = get_logger(__name__)


def _check_probability(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValidationError(
            message=f"{name} must be in [0, 1], got {p}",
            error_code="INVALID_PROBABILITY",
            details={name: p},
        )


def _upper_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def grid_graph(rows: int, cols: int) -> Graph:
    """4-neighbour lattice with node id r * cols + c.

    Edge count is rows * (cols - 1) + cols * (rows - 1).
    """
    if rows < 1 or cols < 1:
        raise ValidationError(
            message=f"Grid dimensions must be >= 1, got {rows}x{cols}",
            error_code="INVALID_GRID",
            details={"rows": rows, "cols": cols},
        )
    ids = np.arange(rows * cols).reshape(rows, cols)
    horizontal = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    vertical = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    edges = np.concatenate([horizontal, vertical])
    return Graph.from_edges(rows * cols, map(tuple, edges))


def path_graph(n: int) -> Graph:
    """Path 0 - 1 - ... - (n-1)."""
    if n < 1:
        raise ValidationError(
            message=f"Path needs n >= 1, got {n}", error_code="INVALID_NODE_COUNT"
        )
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    """Complete graph K_n."""
    if n < 1:
        raise ValidationError(
            message=f"K_n needs n >= 1, got {n}", error_code="INVALID_NODE_COUNT"
        )
    rows, cols = _upper_pairs(n)
    return Graph.from_edges(n, zip(rows, cols))


def _warn_if_disconnected(graph: Graph, what: str) -> None:
    if graph.n == 0:
        return
    count, _ = connected_components(graph.adjacency, directed=False)
    if count > 1:
        logger.warning(f"{what} graph is disconnected ({count} components)")


def sbm_generate(
    blocks: int,
    sizes: Sequence[int],
    p_in: float,
    p_out: float,
    feature_dim: int,
    noise: float,
    seed: int,
) -> Graph:
    """
    Stochastic block model with one-hot block features plus Gaussian noise.

    Each unordered node pair is an edge independently with probability p_in
    (same block) or p_out (different blocks). Labels are block ids; features
    are one-hot(block) in the first `blocks` columns plus N(0, noise^2) on
    every entry.

    Args:
        blocks: Number of blocks
        sizes: Node count per block
        p_in: Intra-block edge probability
        p_out: Inter-block edge probability
        feature_dim: Feature columns (>= blocks)
        noise: Gaussian feature noise standard deviation (>= 0)
        seed: RNG seed

    Returns:
        Labelled Graph with features

    Raises:
        ValidationError: On inconsistent block sizes, probabilities or dims

    Example:
        >>> g = sbm_generate(2, [3, 3], 1.0, 0.0, 2, 0.0, seed=0)
        >>> g.num_edges
        6
    """
    _check_probability("p_in", p_in)
    _check_probability("p_out", p_out)
    if len(sizes) != blocks or any(s < 1 for s in sizes):
        raise ValidationError(
            message=f"Need {blocks} positive block sizes, got {list(sizes)}",
            error_code="INVALID_BLOCK_SIZES",
            details={"blocks": blocks, "sizes": list(sizes)},
        )
    if feature_dim < blocks:
        raise ValidationError(
            message=f"feature_dim ({feature_dim}) must be >= blocks ({blocks})",
            error_code="INVALID_FEATURE_DIM",
            details={"feature_dim": feature_dim, "blocks": blocks},
        )
    if noise < 0:
        raise ValidationError(
            message=f"noise must be >= 0, got {noise}", error_code="INVALID_NOISE"
        )

    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(blocks), sizes)
    n = int(labels.size)

    rows, cols = _upper_pairs(n)
    probs = np.where(labels[rows] == labels[cols], p_in, p_out)
    keep = rng.random(rows.size) < probs

    features = np.zeros((n, feature_dim))
    features[np.arange(n), labels] = 1.0
    features += noise * rng.standard_normal((n, feature_dim))

    graph = Graph.from_edges(
        n, zip(rows[keep], cols[keep]), features=features, labels=labels
    )
    _warn_if_disconnected(graph, "SBM")
    logger.info(
        f"Generated SBM: blocks={blocks}, n={n}, edges={graph.num_edges}, "
        f"p_in={p_in}, p_out={p_out}, seed={seed}"
    )
    return graph


def erdos_renyi_generate(n: int, p: float, seed: int) -> Graph:
    """G(n, p) random graph; each pair is an edge with probability p."""
    _check_probability("p", p)
    if n < 1:
        raise ValidationError(
            message=f"G(n,p) needs n >= 1, got {n}", error_code="INVALID_NODE_COUNT"
        )
    rng = np.random.default_rng(seed)
    rows, cols = _upper_pairs(n)
    keep = rng.random(rows.size) < p
    return Graph.from_edges(n, zip(rows[keep], cols[keep]))


def random_connected_graph(n: int, p: float, seed: int, max_tries: int = 100) -> Graph:
    """Draw G(n, p) graphs with seeds seed, seed+1, ... until one is connected."""
    for attempt in range(max_tries):
        graph = erdos_renyi_generate(n, p, seed + attempt)
        count, _ = connected_components(graph.adjacency, directed=False)
        if count == 1:
            return graph
    raise ValidationError(
        message=f"No connected G({n}, {p}) within {max_tries} draws",
        error_code="GENERATION_FAILED",
        details={"n": n, "p": p, "seed": seed},
        suggestions=["Increase p"],
    )
