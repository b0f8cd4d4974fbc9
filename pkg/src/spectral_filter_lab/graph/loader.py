"""
Graph file loaders.

Edge lists are the single graph wire format:
- UTF-8 text, '#'-prefixed comments
- optional '# n=<count>' header fixing the node count (needed for trailing
  isolated nodes); otherwise n = 1 + max index
- one 'u v' pair per line, 0-indexed; each undirected edge once or twice

Features and labels are CSV files with a header row; row i belongs to node i.
"""

import re
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from spectral_filter_lab.errors import (
    ValidationError,
    dimension_mismatch_error,
    edge_list_parse_error,
    file_not_found_error,
    node_index_error,
)
from spectral_filter_lab.graph.core import Graph
from spectral_filter_lab.logging import get_logger

logger = get_logger(__name__)

NODE_COUNT_HEADER = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


def load_edge_list(file_path: str | Path) -> Graph:
    """
    Load an undirected graph from an edge-list file.

    Args:
        file_path: Path to the edge list

    Returns:
        Canonical Graph (symmetric, deduplicated, self-loop-free)

    Raises:
        NotFoundError: If the file does not exist
        ValidationError: On a malformed line (with line number) or an index
            outside a declared '# n=' header

    Example:
        >>> g = load_edge_list("data/graphs/p2.edges")
        >>> g.n, g.num_edges
        (2, 1)
    """
    file_path = Path(file_path)
    if not file_path.exists():
        logger.error(f"Edge list not found: {file_path}")
        raise file_not_found_error(str(file_path), "edge list")

    declared_n: Optional[int] = None
    edges: list[tuple[int, int, int]] = []

    with open(file_path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                header = NODE_COUNT_HEADER.match(stripped)
                if header:
                    declared_n = int(header.group(1))
                continue

            parts = stripped.split()
            if len(parts) != 2:
                raise edge_list_parse_error(str(file_path), line_number, line)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as e:
                raise edge_list_parse_error(str(file_path), line_number, line) from e
            if u < 0 or v < 0:
                raise edge_list_parse_error(str(file_path), line_number, line)
            edges.append((u, v, line_number))

    max_index = max((max(u, v) for u, v, _ in edges), default=-1)
    if declared_n is None:
        n = max_index + 1
    else:
        n = declared_n
        for u, v, line_number in edges:
            if max(u, v) >= n:
                raise node_index_error(max(u, v), n, line_number)

    graph = Graph.from_edges(n, [(u, v) for u, v, _ in edges])
    logger.info(f"Loaded graph from {file_path}: n={graph.n}, edges={graph.num_edges}")
    return graph


def save_edge_list(graph: Graph, file_path: str | Path) -> Path:
    """
    Write a graph as an edge list with an explicit '# n=' header.

    Each undirected edge is written once as 'u v' with u < v, so
    load_edge_list(save_edge_list(g)) reproduces g exactly.

    Args:
        graph: Graph to write
        file_path: Destination path

    Returns:
        Path written
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# n={graph.n}"] + [f"{u} {v}" for u, v in graph.edges()]
    file_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {graph.num_edges} edges to {file_path}")
    return file_path


def _read_csv(file_path: Path, kind: str) -> pd.DataFrame:
    if not file_path.exists():
        logger.error(f"{kind.capitalize()} file not found: {file_path}")
        raise file_not_found_error(str(file_path), kind)
    try:
        return pd.read_csv(file_path)
    except Exception as e:
        logger.error(f"Failed to parse {kind} CSV {file_path}: {e}")
        raise ValidationError(
            message=f"Failed to parse {kind} file {file_path}",
            error_code="CSV_PARSE_ERROR",
            details={"path": str(file_path), "error": str(e)},
            suggestions=["The file must be CSV with a header row"],
        ) from e


def load_features_csv(file_path: str | Path, n: Optional[int] = None) -> np.ndarray:
    """
    Load an n x d feature matrix from CSV (header row, row i = node i).

    Args:
        file_path: CSV path
        n: Expected node count (optional)

    Returns:
        Float feature matrix

    Raises:
        ValidationError: On non-numeric / non-finite entries or row mismatch
    """
    file_path = Path(file_path)
    df = _read_csv(file_path, "features")
    try:
        features = df.to_numpy(dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ValidationError(
            message=f"Features in {file_path} must be real numbers",
            error_code="INVALID_FEATURES",
            details={"path": str(file_path), "error": str(e)},
        ) from e
    if not np.isfinite(features).all():
        raise ValidationError(
            message=f"Features in {file_path} contain non-finite values",
            error_code="INVALID_FEATURES",
            details={"path": str(file_path)},
        )
    if n is not None and features.shape[0] != n:
        raise dimension_mismatch_error("feature rows", n, features.shape[0])
    logger.info(f"Loaded features {features.shape} from {file_path}")
    return features


def load_labels_csv(file_path: str | Path, n: Optional[int] = None) -> np.ndarray:
    """
    Load non-negative integer node labels from the first CSV column.

    Args:
        file_path: CSV path
        n: Expected node count (optional)

    Returns:
        Integer label vector

    Raises:
        ValidationError: On negative / non-integer labels or row mismatch
    """
    file_path = Path(file_path)
    df = _read_csv(file_path, "labels")
    column = df.iloc[:, 0]
    if not pd.api.types.is_integer_dtype(column) or (column < 0).any():
        raise ValidationError(
            message=f"Labels in {file_path} must be non-negative integers",
            error_code="INVALID_LABELS",
            details={"path": str(file_path), "dtype": str(column.dtype)},
        )
    labels = column.to_numpy(dtype=np.int64)
    if n is not None and labels.shape[0] != n:
        raise dimension_mismatch_error("label rows", n, labels.shape[0])
    n_classes = len(np.unique(labels))
    logger.info(f"Loaded {labels.shape[0]} labels ({n_classes} classes) from {file_path}")
    return labels
