"""Pytest configuration and fixtures for Spectral Filter Lab tests."""

import numpy as np
import pandas as pd
import pytest

from spectral_filter_lab.graph.core import Graph, normalized_adjacency, normalized_laplacian
from spectral_filter_lab.graph.generators import (
    complete_graph,
    grid_graph,
    path_graph,
    sbm_generate,
)
from spectral_filter_lab.graph.loader import save_edge_list
from spectral_filter_lab.spectral.eigen import eigendecompose
from spectral_filter_lab.types import TrainConfig

# ============================================================================
# Tiny Graphs
# ============================================================================


@pytest.fixture
def p2():
    """Path on two nodes: eigenvalues {0, 2}."""
    return path_graph(2)


@pytest.fixture
def p3():
    """Path on three nodes: eigenvalues {0, 1, 2}."""
    return path_graph(3)


@pytest.fixture
def k3():
    """Triangle: eigenvalues {0, 1.5, 1.5}."""
    return complete_graph(3)


@pytest.fixture
def grid2x2():
    """2x2 grid, i.e. the 4-cycle: eigenvalues {0, 1, 1, 2}."""
    return grid_graph(2, 2)


@pytest.fixture
def star4():
    """Star with center 0 and three leaves."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


# ============================================================================
# Spectra and Operators
# ============================================================================


@pytest.fixture
def p3_spectrum(p3):
    return eigendecompose(normalized_laplacian(p3))


@pytest.fixture
def k3_spectrum(k3):
    return eigendecompose(normalized_laplacian(k3))


@pytest.fixture
def grid_spectrum():
    """Spectrum of a 4x4 grid."""
    return eigendecompose(normalized_laplacian(grid_graph(4, 4)))


@pytest.fixture
def path6():
    return path_graph(6)


@pytest.fixture
def path6_operators(path6):
    """(A_hat, L_hat, spectrum) of P6."""
    L_hat = normalized_laplacian(path6)
    return normalized_adjacency(path6), L_hat, eigendecompose(L_hat)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# ============================================================================
# Input Files
# ============================================================================


@pytest.fixture
def p2_edge_file(tmp_path):
    path = tmp_path / "p2.edges"
    path.write_text("# two nodes, one edge\n0 1\n")
    return path


@pytest.fixture
def constant_features_file(tmp_path):
    """Constant single-column features for two nodes."""
    path = tmp_path / "features.csv"
    path.write_text("x\n1.0\n1.0\n")
    return path


# ============================================================================
# Node Classification
# ============================================================================


@pytest.fixture
def separable_sbm():
    """Two disconnected blocks of 15 nodes with noiseless one-hot features."""
    return sbm_generate(2, [15, 15], 0.5, 0.0, 3, 0.0, seed=3)


@pytest.fixture
def fast_train_config():
    return TrainConfig(
        lr_linear=0.05, lr_coeffs=0.05, lr_pcd=0.05, max_epochs=150, patience=50, log_every=50
    )


@pytest.fixture
def sbm_files(tmp_path, separable_sbm):
    """Edge list, feature CSV and label CSV of the separable SBM."""
    edges = save_edge_list(separable_sbm, tmp_path / "sbm.edges")
    features = tmp_path / "sbm_features.csv"
    pd.DataFrame(separable_sbm.features, columns=["f0", "f1", "f2"]).to_csv(features, index=False)
    labels = tmp_path / "sbm_labels.csv"
    pd.DataFrame({"label": separable_sbm.labels}).to_csv(labels, index=False)
    return {"graph": edges, "features": features, "labels": labels}
