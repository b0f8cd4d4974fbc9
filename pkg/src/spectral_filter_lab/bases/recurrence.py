"""
Jacobi three-term recurrence coefficients.

P_0 = 1
P_1 = (a - b)/2 + (a + b + 2)/2 * z
P_k = (theta_k z + theta'_k) P_{k-1} - theta''_k P_{k-2},  k >= 2

with
    theta_k   = (2k+a+b)(2k+a+b-1) / (2k(k+a+b))
    theta'_k  = (2k+a+b-1)(a^2-b^2) / (2k(k+a+b)(2k+a+b-2))
    theta''_k = (k+a-1)(k+b-1)(2k+a+b) / (k(k+a+b)(2k+a+b-2))
"""

from dataclasses import dataclass

from spectral_filter_lab.errors import ValidationError

DENOMINATOR_TOL = 1e-12


@dataclass(frozen=True)
class RecurrenceCoeffs:
    theta: float
    theta_prime: float
    theta_dprime: float


def _check_exponents(a: float, b: float) -> None:
    if a <= -1.0 or b <= -1.0:
        raise ValidationError(
            message=f"Jacobi exponents must exceed -1, got a={a}, b={b}",
            error_code="INVALID_JACOBI_PARAMETERS",
            details={"a": a, "b": b},
        )


def jacobi_first(a: float, b: float) -> tuple[float, float]:
    """Constant and linear coefficient of P_1^{a,b}(z)."""
    _check_exponents(a, b)
    return (a - b) / 2.0, (a + b + 2.0) / 2.0


def jacobi_recurrence(a: float, b: float, k: int) -> RecurrenceCoeffs:
    """
    Evaluate the degree-k Jacobi recurrence coefficients.

    Args:
        a: Exponent on (1 - z), > -1
        b: Exponent on (1 + z), > -1
        k: Degree, >= 2

    Returns:
        RecurrenceCoeffs(theta, theta_prime, theta_dprime)

    Raises:
        ValidationError: If k < 2, exponents are out of range, or a
            denominator is within 1e-12 of zero

    Example:
        >>> jacobi_recurrence(0.0, 0.0, 2)
        RecurrenceCoeffs(theta=1.5, theta_prime=0.0, theta_dprime=0.5)
    """
    _check_exponents(a, b)
    if k < 2:
        raise ValidationError(
            message=f"Recurrence coefficients are defined for k >= 2, got k={k}",
            error_code="INVALID_DEGREE",
            details={"k": k},
        )

    outer = 2.0 * k * (k + a + b)
    inner = 2.0 * k + a + b - 2.0
    if abs(outer) <= DENOMINATOR_TOL or abs(inner) <= DENOMINATOR_TOL:
        raise ValidationError(
            message=f"Jacobi recurrence is singular at a={a}, b={b}, k={k}",
            error_code="SINGULAR_RECURRENCE",
            details={"a": a, "b": b, "k": k, "denominators": [outer, inner]},
            suggestions=["Choose exponents with a + b away from -2"],
        )

    s = 2.0 * k + a + b
    return RecurrenceCoeffs(
        theta=s * (s - 1.0) / outer,
        theta_prime=(s - 1.0) * (a * a - b * b) / (outer * inner),
        theta_dprime=2.0 * (k + a - 1.0) * (k + b - 1.0) * s / (outer * inner),
    )
