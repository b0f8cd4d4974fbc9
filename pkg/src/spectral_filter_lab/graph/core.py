"""
Core graph and operator types.

A Graph is an immutable undirected simple graph stored as a symmetric CSR
adjacency with unit weights. Normalized operators follow the convention
D^{-1/2}_ii = 0 for isolated nodes, so their Laplacian diagonal is 1.
"""

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import scipy.sparse as sp

from spectral_filter_lab.errors import ValidationError, dimension_mismatch_error, node_index_error
from spectral_filter_lab.logging import get_logger

logger = get_logger(__name__)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


def _canonical_csr(matrix: sp.spmatrix) -> sp.csr_matrix:
    matrix = sp.csr_matrix(matrix, copy=True)
    matrix.sum_duplicates()
    matrix.sort_indices()
    return matrix


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph with optional node features and labels.

    Attributes:
        n: Node count
        adjacency: Symmetric CSR matrix with unit entries, no self-loops
        features: Optional n x d real matrix
        labels: Optional length-n integer vector
    """

    n: int
    adjacency: sp.csr_matrix
    features: Optional[np.ndarray] = None
    labels: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(
                message=f"Node count must be non-negative, got {self.n}",
                error_code="INVALID_NODE_COUNT",
            )
        if self.adjacency.shape != (self.n, self.n):
            raise dimension_mismatch_error("adjacency", (self.n, self.n), self.adjacency.shape)
        if self.adjacency.diagonal().any():
            raise ValidationError(message="Adjacency has self-loops", error_code="SELF_LOOPS")
        if (self.adjacency != self.adjacency.T).nnz:
            raise ValidationError(message="Adjacency is not symmetric", error_code="NOT_SYMMETRIC")
        if self.features is not None and self.features.shape[0] != self.n:
            raise dimension_mismatch_error("feature rows", self.n, self.features.shape[0])
        if self.labels is not None and self.labels.shape != (self.n,):
            raise dimension_mismatch_error("labels", (self.n,), self.labels.shape)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        features: Optional[np.ndarray] = None,
        labels: Optional[np.ndarray] = None,
    ) -> "Graph":
        """Build a canonical graph from an edge iterable.

        Each undirected edge may appear once or twice; duplicates are merged
        and self-loops dropped (with a warning).

        Args:
            n: Node count
            edges: Iterable of (u, v) pairs with 0 <= u, v < n
            features: Optional n x d feature matrix
            labels: Optional length-n integer labels

        Returns:
            Canonical Graph

        Raises:
            ValidationError: If an index falls outside [0, n)
        """
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size:
            bad = pairs[(pairs < 0) | (pairs >= n)]
            if bad.size:
                raise node_index_error(int(bad[0]), n)

        loops = pairs[:, 0] == pairs[:, 1]
        if loops.any():
            logger.warning(f"Dropped {int(loops.sum())} self-loop(s)")
        pairs = pairs[~loops]

        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        canonical = np.unique(np.stack([lo, hi], axis=1), axis=0) if len(pairs) else pairs
        duplicates = len(pairs) - len(canonical)
        if duplicates:
            logger.warning(f"Merged {duplicates} duplicate edge record(s)")

        rows = np.concatenate([canonical[:, 0], canonical[:, 1]])
        cols = np.concatenate([canonical[:, 1], canonical[:, 0]])
        adjacency = sp.csr_matrix(
            (np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(n, n)
        )

        return cls(
            n=n,
            adjacency=_canonical_csr(adjacency),
            features=None if features is None else _readonly(np.asarray(features, dtype=float)),
            labels=None if labels is None else _readonly(np.asarray(labels, dtype=np.int64)),
        )

    def with_data(
        self,
        features: Optional[np.ndarray] = None,
        labels: Optional[np.ndarray] = None,
    ) -> "Graph":
        """Return a copy carrying new features and/or labels."""
        return Graph(
            n=self.n,
            adjacency=self.adjacency,
            features=self.features if features is None else _readonly(np.asarray(features, float)),
            labels=self.labels if labels is None else _readonly(np.asarray(labels, np.int64)),
        )

    @property
    def num_edges(self) -> int:
        """Number of undirected edges."""
        return int(self.adjacency.nnz // 2)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted (u, v) pairs with u < v."""
        upper = sp.triu(self.adjacency, k=1).tocoo()
        order = np.lexsort((upper.col, upper.row))
        return [(int(upper.row[i]), int(upper.col[i])) for i in order]

    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel()


@dataclass(frozen=True)
class SymmetricOperator:
    """Symmetric real sparse operator (normalized adjacency or Laplacian)."""

    n: int
    values: sp.csr_matrix
    name: str = "operator"

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Apply the operator to a vector or to each column of a matrix."""
        if x.shape[0] != self.n:
            raise dimension_mismatch_error(f"{self.name} operand", self.n, x.shape[0])
        return self.values @ x

    def to_dense(self) -> np.ndarray:
        return self.values.toarray()


def _inverse_sqrt_products(g: Graph) -> sp.csr_matrix:
    coo = g.adjacency.tocoo()
    deg = g.degrees()
    # 1/sqrt(d_u d_v) is exactly symmetric in floating point
    data = 1.0 / np.sqrt(deg[coo.row] * deg[coo.col])
    return sp.csr_matrix((data, (coo.row, coo.col)), shape=(g.n, g.n))


def normalized_adjacency(g: Graph) -> SymmetricOperator:
    """Normalized adjacency D^{-1/2} A D^{-1/2}; isolated rows/cols are zero."""
    return SymmetricOperator(n=g.n, values=_canonical_csr(_inverse_sqrt_products(g)), name="A_hat")


def normalized_laplacian(g: Graph) -> SymmetricOperator:
    """Normalized Laplacian I - A_hat."""
    laplacian = sp.identity(g.n, format="csr") - _inverse_sqrt_products(g)
    return SymmetricOperator(n=g.n, values=_canonical_csr(laplacian), name="L_hat")


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union with node blocks in argument order (features concatenated by rows)."""
    offset = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    features = None
    if graphs and all(g.features is not None for g in graphs):
        features = np.vstack([g.features for g in graphs])
    return Graph.from_edges(offset, edges, features=features)
