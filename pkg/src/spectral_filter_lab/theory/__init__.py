"""Executable checks of linear-GNN expressiveness results."""

from spectral_filter_lab.theory.automorphism import (
    atlas_graphs,
    automorphism_orbits,
    automorphism_orders,
    automorphisms,
    permutation_order,
    automorphism_scan,
)
from spectral_filter_lab.theory.bias import BiasCounterexample, bias_check, bias_counterexample
from spectral_filter_lab.theory.degree_demo import random_feature_degree_demo
from spectral_filter_lab.theory.interpolation import (
    chebyshev_points,
    degree_limited_loss,
    derivative_sup,
    filter_loss_bound,
    interpolation_bound_check,
)
from spectral_filter_lab.theory.random_features import (
    RandomFeatureSolution,
    random_feature_check,
    random_feature_spectrum_test,
    random_feature_universality,
)
from spectral_filter_lab.theory.suite import THEORY_CHECKS, run_theory_check
from spectral_filter_lab.theory.unifilter import (
    UnifilterCounterexample,
    multi_filter_fit,
    reachable_subspace,
    unifilter_check,
    unifilter_counterexample,
    unifilter_optimal_loss,
    unifilter_scan_loss,
)
from spectral_filter_lab.theory.universality import (
    InterpolatingFilter,
    UniversalitySolution,
    universality_check,
    universality_solve,
)
from spectral_filter_lab.theory.wl import WlColoring, quantize, wl_bound_check, wl_check, wl_refine

__all__ = [
    # Universality
    "UniversalitySolution",
    "InterpolatingFilter",
    "universality_solve",
    "universality_check",
    # WL
    "WlColoring",
    "quantize",
    "wl_refine",
    "wl_bound_check",
    "wl_check",
    # Automorphisms
    "automorphisms",
    "automorphism_orders",
    "automorphism_orbits",
    "permutation_order",
    "atlas_graphs",
    "automorphism_scan",
    # Random features
    "RandomFeatureSolution",
    "random_feature_spectrum_test",
    "random_feature_universality",
    "random_feature_check",
    "random_feature_degree_demo",
    # Bias
    "BiasCounterexample",
    "bias_counterexample",
    "bias_check",
    # Shared filter
    "UnifilterCounterexample",
    "unifilter_counterexample",
    "reachable_subspace",
    "unifilter_optimal_loss",
    "unifilter_scan_loss",
    "multi_filter_fit",
    "unifilter_check",
    # Degree-limited error
    "chebyshev_points",
    "derivative_sup",
    "interpolation_bound_check",
    "filter_loss_bound",
    "degree_limited_loss",
    # Dispatch
    "THEORY_CHECKS",
    "run_theory_check",
]
