"""
Automorphism orders of small graphs and the exhaustive scans built on them.

A permutation matrix P commuting with L_hat maps each eigenvector of a simple
eigenvalue to +-itself, so a graph with a simple spectrum has no automorphism
of order >= 3. If in addition every frequency component of X is present and
P preserves X, the sign must be + everywhere and P is the identity.
automorphism_scan checks both statements on every graph of the networkx atlas.
"""

import math
from typing import Any, Iterator, Optional

import networkx as nx
import numpy as np

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import Graph, normalized_laplacian
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.diagnostics import DEFAULT_TOL
from spectral_filter_lab.spectral.eigen import eigendecompose, gft
from spectral_filter_lab.theory.wl import encode_labels
from spectral_filter_lab.types import AutomorphismScanReport

logger = get_logger(__name__)

MAX_BRUTE_FORCE_N = 8
ATLAS_MAX_N = 7
FEATURE_MODES = ("constant", "orbit_gaussian", "gaussian")


def _check_size(n: int) -> None:
    if n > MAX_BRUTE_FORCE_N:
        raise ValidationError(
            message=f"Automorphism enumeration is capped at n={MAX_BRUTE_FORCE_N}, got n={n}",
            error_code="GRAPH_TOO_LARGE",
            details={"n": n, "max_n": MAX_BRUTE_FORCE_N},
        )


def automorphisms(g: Graph, X: Optional[np.ndarray] = None) -> Iterator[tuple[int, ...]]:
    """
    Yield every automorphism of g as a tuple perm with perm[i] = image of i.

    Node i may only map to a node of the same degree and, when X is given,
    an exactly equal feature row. Backtracking checks adjacency against the
    already placed prefix.

    Raises:
        ValidationError: GRAPH_TOO_LARGE for n > 8
    """
    _check_size(g.n)
    n = g.n
    adjacency = g.adjacency.toarray() > 0
    degrees = g.degrees()
    if X is None:
        colors = np.zeros(n, dtype=np.int64)
    else:
        rows = np.asarray(X, dtype=float).reshape(n, -1).tolist()
        colors = encode_labels([tuple(row) for row in rows])

    perm = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(perm)
            return
        for v in range(n):
            if used[v] or degrees[v] != degrees[i] or colors[v] != colors[i]:
                continue
            if any(adjacency[i, j] != adjacency[v, perm[j]] for j in range(i)):
                continue
            perm[i], used[v] = v, True
            yield from extend(i + 1)
            perm[i], used[v] = -1, False

    yield from extend(0)


def permutation_order(perm: tuple[int, ...]) -> int:
    """Least common multiple of the cycle lengths."""
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        length = 0
        node = start
        while not seen[node]:
            seen[node] = True
            node = perm[node]
            length += 1
        if length:
            order = math.lcm(order, length)
    return order


def automorphism_orders(g: Graph, X: Optional[np.ndarray] = None) -> set[int]:
    """
    Orders of all automorphisms of g (feature-preserving when X is given).

    Example:
        >>> automorphism_orders(complete_graph(3))
        {1, 2, 3}
    """
    return {permutation_order(p) for p in automorphisms(g, X)}


def automorphism_orbits(g: Graph) -> np.ndarray:
    """Orbit id of every node under the full automorphism group."""
    orbit = np.arange(g.n)
    for perm in automorphisms(g):
        for i, j in enumerate(perm):
            a, b = orbit[i], orbit[j]
            if a != b:
                orbit[orbit == max(a, b)] = min(a, b)
    return encode_labels(orbit.tolist())


def _features(mode: str, g: Graph, rng: np.random.Generator) -> np.ndarray:
    if mode == "constant":
        return np.ones((g.n, 1))
    if mode == "orbit_gaussian":
        orbit = automorphism_orbits(g)
        return rng.standard_normal((int(orbit.max()) + 1, 2))[orbit]
    return rng.standard_normal((g.n, 2))


def atlas_graphs(n_max: int) -> Iterator[Graph]:
    """Every graph on 1..n_max nodes up to isomorphism (networkx atlas, n_max <= 7)."""
    if n_max > ATLAS_MAX_N:
        raise ValidationError(
            message=f"The graph atlas covers n <= {ATLAS_MAX_N}, got n_max={n_max}",
            error_code="INVALID_SCAN_SIZE",
            details={"n_max": n_max},
        )
    for nx_graph in nx.graph_atlas_g():
        n = nx_graph.number_of_nodes()
        if 1 <= n <= n_max:
            yield Graph.from_edges(n, nx_graph.edges())


def automorphism_scan(
    n_max: int = 6,
    seed: int = 0,
    tol_eig: float = DEFAULT_TOL,
    tol_missing: float = DEFAULT_TOL,
) -> AutomorphismScanReport:
    """
    Exhaustively test the automorphism-order statements on all graphs with n <= n_max.

    For each simple-spectrum graph: no automorphism may have order >= 3. For
    each feature mode (constant, Gaussian constant on automorphism orbits,
    plain Gaussian) whose GFT has no missing component, the only
    feature-preserving automorphism must be the identity.

    Args:
        n_max: Largest node count (<= 7)
        seed: Seed for the Gaussian feature modes
        tol_eig: Eigenvalue gap below which the spectrum counts as multiple
        tol_missing: Row norm of gft(X) at or below which a component is missing

    Returns:
        AutomorphismScanReport (passed iff no counterexample)
    """
    rng = np.random.default_rng(seed)
    scanned = 0
    simple = 0
    checked4 = 0
    counter3: list[list[tuple[int, int]]] = []
    counter4: list[dict[str, Any]] = []

    for g in atlas_graphs(n_max):
        scanned += 1
        s = eigendecompose(normalized_laplacian(g))
        if np.any(np.diff(s.eigenvalues) <= tol_eig):
            continue
        simple += 1
        orders = automorphism_orders(g)
        if max(orders) >= 3:
            counter3.append(g.edges())

        for mode in FEATURE_MODES:
            X = _features(mode, g, rng)
            if np.min(np.linalg.norm(gft(s, X), axis=1)) <= tol_missing:
                continue
            checked4 += 1
            feature_orders = automorphism_orders(g, X)
            if feature_orders != {1}:
                counter4.append(
                    {
                        "n": g.n,
                        "edges": g.edges(),
                        "features": mode,
                        "orders": sorted(feature_orders),
                    }
                )

    passed = not counter3 and not counter4
    logger.info(
        f"Automorphism scan n<={n_max}: {scanned} graphs, {simple} with simple spectrum, "
        f"{len(counter3)} order>=3 counterexample(s), {checked4} feature checks, "
        f"{len(counter4)} non-identity counterexample(s)"
    )
    return AutomorphismScanReport(
        check="automorphism",
        passed=passed,
        seed=seed,
        n_max=n_max,
        graphs_scanned=scanned,
        distinct_spectrum_graphs=simple,
        high_order_counterexamples=counter3,
        feature_checks=checked4,
        feature_counterexamples=counter4,
    )
