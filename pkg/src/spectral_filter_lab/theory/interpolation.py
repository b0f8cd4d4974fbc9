"""
Degree-limited approximation error of polynomial filters.

Interpolating h at the n + 1 Chebyshev points 1 + cos((2i + 1) pi / (2n + 2))
of [0, 2] gives

    sup |h - g| <= sup |h^(n+1)| / ((n + 1)! 2^n)

and the squared loss of a linear GNN using g in place of h is at most
bound^2 / 2 * ||XW||_F^2.
"""

import math

import numpy as np
from numpy.polynomial import Chebyshev

from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.spectral.eigen import Spectrum, gft
from spectral_filter_lab.spectral.filters import FilterFunction, get_filter
from spectral_filter_lab.types import InterpolationReport

logger = get_logger(__name__)

DOMAIN = (0.0, 2.0)
GRID_POINTS = 2001
PROXY_DEGREE = 128
BOUND_SLACK = 1e-12


def chebyshev_points(n: int) -> np.ndarray:
    """The n + 1 Chebyshev points of [0, 2] (descending)."""
    i = np.arange(n + 1)
    return 1.0 + np.cos((2 * i + 1) * np.pi / (2 * n + 2))


def interpolant(h: FilterFunction, n: int) -> Chebyshev:
    """Degree-n polynomial through h at the Chebyshev points."""
    if n < 0:
        raise ValidationError(
            message=f"Interpolation degree must be >= 0, got {n}",
            error_code="INVALID_DEGREE",
            details={"degree": n},
        )
    points = chebyshev_points(n)
    return Chebyshev.fit(points, h(points), deg=n, domain=list(DOMAIN))


def derivative_sup(h: FilterFunction, m: int) -> float:
    """
    sup over [0, 2] of |h^(m)|.

    Uses the filter's analytic bound when registered, inf for non-smooth
    filters, and otherwise differentiates a degree-128 Chebyshev proxy of h
    (trailing coefficients below 1e-14 relative trimmed) on the 2001-point grid.
    """
    if h.derivative_sup is not None:
        return float(h.derivative_sup(m))
    if not h.smooth:
        return math.inf
    proxy = Chebyshev.interpolate(h, PROXY_DEGREE, domain=list(DOMAIN))
    proxy = proxy.trim(1e-14 * float(np.max(np.abs(proxy.coef))))
    grid = np.linspace(*DOMAIN, GRID_POINTS)
    return float(np.max(np.abs(proxy.deriv(m)(grid))))


def error_bound(h: FilterFunction, n: int) -> tuple[float, float]:
    """(bound, sup |h^(n+1)|) for the degree-n Chebyshev-point interpolant."""
    dsup = derivative_sup(h, n + 1)
    return dsup / (math.factorial(n + 1) * 2.0**n), dsup


def interpolation_bound_check(filter_id: str, degree: int) -> InterpolationReport:
    """
    Measure the sup error of the Chebyshev-point interpolant against its bound.

    Example:
        >>> r = interpolation_bound_check("cos", 4)
        >>> round(r.bound, 8), r.passed
        (0.00052083, True)
    """
    h = get_filter(filter_id)
    g = interpolant(h, degree)
    grid = np.linspace(*DOMAIN, GRID_POINTS)
    sup_error = float(np.max(np.abs(h(grid) - g(grid))))
    bound, dsup = error_bound(h, degree)

    passed = sup_error <= bound + BOUND_SLACK
    logger.info(
        f"Interpolation check {filter_id}, degree {degree}: sup error {sup_error:.3e}, "
        f"bound {bound:.3e}"
    )
    return InterpolationReport(
        check="interp",
        passed=passed,
        filter_id=filter_id,
        degree=degree,
        sup_error=sup_error,
        bound=bound,
        derivative_sup=dsup,
        loss_bound_unit=0.5 * bound**2,
    )


def filter_loss_bound(filter_id: str, degree: int, XW: np.ndarray) -> float:
    """Upper bound bound^2 / 2 * ||XW||_F^2 on the squared loss of the degree-n interpolant."""
    bound, _ = error_bound(get_filter(filter_id), degree)
    return 0.5 * bound**2 * float(np.sum(np.asarray(XW, dtype=float) ** 2))


def degree_limited_loss(s: Spectrum, filter_id: str, degree: int, XW: np.ndarray) -> float:
    """1/2 ||(h(Lambda) - g(Lambda)) U^T XW||_F^2 for the degree-n interpolant g."""
    h = get_filter(filter_id)
    g = interpolant(h, degree)
    gap = h(s.eigenvalues) - g(s.eigenvalues)
    spectral = gft(s, np.asarray(XW, dtype=float).reshape(s.n, -1))
    return 0.5 * float(np.sum((gap[:, None] * spectral) ** 2))
