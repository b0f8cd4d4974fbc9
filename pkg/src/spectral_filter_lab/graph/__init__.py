"""
Graph construction, generation and file I/O.

This module provides the immutable Graph type, the normalized adjacency and
Laplacian operators, synthetic generators and edge-list / CSV loaders.
"""

from spectral_filter_lab.graph.core import (
    Graph,
    SymmetricOperator,
    disjoint_union,
    normalized_adjacency,
    normalized_laplacian,
)
from spectral_filter_lab.graph.generators import (
    complete_graph,
    erdos_renyi_generate,
    grid_graph,
    path_graph,
    random_connected_graph,
    sbm_generate,
)
from spectral_filter_lab.graph.loader import (
    load_edge_list,
    load_features_csv,
    load_labels_csv,
    save_edge_list,
)

__all__ = [
    # Core types and operators
    "Graph",
    "SymmetricOperator",
    "normalized_adjacency",
    "normalized_laplacian",
    "disjoint_union",
    # Generators
    "grid_graph",
    "path_graph",
    "complete_graph",
    "sbm_generate",
    "erdos_renyi_generate",
    "random_connected_graph",
    # File I/O
    "load_edge_list",
    "save_edge_list",
    "load_features_csv",
    "load_labels_csv",
]
