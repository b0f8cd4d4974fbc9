"""
Named scalar filter responses h(lambda) on [0, 2] and the exact spectral oracle.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.spectral.eigen import Spectrum, gft

ScalarFilter = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FilterFunction:
    """A filter response with optional analytic derivative bound.

    Attributes:
        name: Registry key
        response: Vectorized h(lambda)
        smooth: False when h is not differentiable on [0, 2]
        derivative_sup: Maps m to sup |h^(m)| on [0, 2] when known analytically
    """

    name: str
    response: ScalarFilter
    smooth: bool = True
    derivative_sup: Optional[Callable[[int], float]] = None

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        return self.response(np.asarray(lam, dtype=float))


def _low(lam: np.ndarray) -> np.ndarray:
    return np.exp(-10.0 * lam**2)


def _band(lam: np.ndarray) -> np.ndarray:
    return np.exp(-10.0 * (lam - 1.0) ** 2)


FILTERS: dict[str, FilterFunction] = {
    "low": FilterFunction("low", _low),
    "high": FilterFunction("high", lambda lam: 1.0 - _low(lam)),
    "band": FilterFunction("band", _band),
    "reject": FilterFunction("reject", lambda lam: 1.0 - _band(lam)),
    "comb": FilterFunction("comb", lambda lam: np.abs(np.sin(np.pi * lam)), smooth=False),
    # every derivative of cos is +-sin or +-cos, which reach 1 on [0, 2]
    "cos": FilterFunction("cos", np.cos, derivative_sup=lambda m: 1.0),
    "linear": FilterFunction(
        "linear", lambda lam: 1.0 - lam, derivative_sup=lambda m: 1.0 if m == 1 else 0.0
    ),
    "identity": FilterFunction(
        "identity", lambda lam: np.ones_like(lam), derivative_sup=lambda m: 0.0
    ),
}

BENCH_FILTERS = ("low", "high", "band", "reject", "comb")


def get_filter(name: str) -> FilterFunction:
    """Look up a registered filter by name."""
    try:
        return FILTERS[name]
    except KeyError:
        raise ValidationError(
            message=f"Unknown filter '{name}'",
            error_code="UNKNOWN_FILTER",
            details={"filter": name},
            suggestions=[f"Known filters: {', '.join(FILTERS)}"],
        ) from None


def apply_exact_filter(
    s: Spectrum,
    h: Union[str, FilterFunction, ScalarFilter],
    x: np.ndarray,
) -> np.ndarray:
    """Spectral oracle U h(Lambda) U^T x for a vector or n x d matrix x.

    Example:
        >>> apply_exact_filter(s_p2, "linear", np.array([1.0, 0.0]))
        array([0., 1.])
    """
    response = get_filter(h) if isinstance(h, str) else h
    gains = np.asarray(response(s.eigenvalues), dtype=float)
    x_tilde = gft(s, x)
    if x_tilde.ndim == 1:
        return s.eigenvectors @ (gains * x_tilde)
    return s.eigenvectors @ (gains[:, None] * x_tilde)
