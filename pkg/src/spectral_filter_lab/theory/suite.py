"""Named theory checks as dispatched by the `theory` command."""

from typing import Any, Callable

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import normalized_laplacian
from spectral_filter_lab.graph.generators import grid_graph
from spectral_filter_lab.spectral.eigen import eigendecompose
from spectral_filter_lab.theory.automorphism import automorphism_scan
from spectral_filter_lab.theory.bias import bias_check
from spectral_filter_lab.theory.degree_demo import random_feature_degree_demo
from spectral_filter_lab.theory.interpolation import interpolation_bound_check
from spectral_filter_lab.theory.random_features import (
    random_feature_check,
    random_feature_spectrum_test,
)
from spectral_filter_lab.theory.universality import universality_check
from spectral_filter_lab.theory.unifilter import unifilter_check
from spectral_filter_lab.theory.wl import wl_check
from spectral_filter_lab.types import TheoryReport


def _spectrum_check(seed: int, rows: int = 2, cols: int = 5, **params: Any) -> TheoryReport:
    s = eigendecompose(normalized_laplacian(grid_graph(rows, cols)))
    return random_feature_spectrum_test(s, seed=seed, **params)


THEORY_CHECKS: dict[str, Callable[..., TheoryReport]] = {
    "universality": lambda seed, **p: universality_check(seed=seed, **p),
    "wl": lambda seed, **p: wl_check(seed=seed, **p),
    "automorphism": lambda seed, **p: automorphism_scan(seed=seed, **p),
    "randfeat": lambda seed, **p: random_feature_check(seed=seed, **p),
    "spectrum": _spectrum_check,
    "bias": lambda seed, **p: bias_check(seed=seed, **p),
    "interp": lambda seed, **p: interpolation_bound_check(**p),
    "degree": lambda seed, **p: random_feature_degree_demo(seed=seed, **p),
    "unifilter": lambda seed, **p: unifilter_check(seed=seed, **p),
}


def run_theory_check(check: str, seed: int = 0, **params: Any) -> TheoryReport:
    """
    Run one named check; parameters are forwarded to the underlying function.

    Raises:
        ValidationError: UNKNOWN_CHECK for an unregistered name
    """
    try:
        runner = THEORY_CHECKS[check]
    except KeyError:
        raise ValidationError(
            message=f"Unknown theory check '{check}'",
            error_code="UNKNOWN_CHECK",
            details={"check": check},
            suggestions=[f"Known checks: {', '.join(THEORY_CHECKS)}"],
        ) from None
    report = runner(seed, **params)
    if report.seed is None:
        report.seed = seed
    return report
