"""Unit tests for polynomial filter bases (recurrences, scalar values, operators)."""

import numpy as np
import pytest
from scipy.integrate import quad

from spectral_filter_lab.bases.operator import apply_basis
from spectral_filter_lab.bases.recurrence import jacobi_first, jacobi_recurrence
from spectral_filter_lab.bases.scalar import (
    CURVE_POINTS,
    basis_curves_frame,
    basis_scalar,
    basis_values,
    binomial,
    fixed_coeffs,
    normalize_at_zero,
    weight_function,
)
from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import normalized_adjacency, normalized_laplacian
from spectral_filter_lab.graph.generators import random_connected_graph
from spectral_filter_lab.spectral.eigen import eigendecompose, spectral_weights
from spectral_filter_lab.spectral.hessian import fitted_basis_spec
from spectral_filter_lab.types import BasisFamily, BasisSpec

# ============================================================================
# Recurrence coefficients
# ============================================================================


class TestJacobiRecurrence:
    """Three-term recurrence coefficients."""

    def test_legendre_degree_two(self):
        r = jacobi_recurrence(0.0, 0.0, 2)
        assert (r.theta, r.theta_prime, r.theta_dprime) == (1.5, 0.0, 0.5)

    def test_chebyshev_case_degree_two(self):
        r = jacobi_recurrence(-0.5, -0.5, 2)
        assert r.theta == pytest.approx(1.5)
        assert r.theta_prime == pytest.approx(0.0)
        assert r.theta_dprime == pytest.approx(0.375)

    def test_first_polynomial(self):
        assert jacobi_first(1.0, 0.0) == (0.5, 2.0)

    def test_degree_below_two(self):
        with pytest.raises(ValidationError) as exc:
            jacobi_recurrence(0.0, 0.0, 1)
        assert exc.value.error_code == "INVALID_DEGREE"

    def test_exponents_out_of_range(self):
        with pytest.raises(ValidationError) as exc:
            jacobi_recurrence(-1.0, 0.0, 2)
        assert exc.value.error_code == "INVALID_JACOBI_PARAMETERS"

    def test_singular_denominator(self):
        with pytest.raises(ValidationError) as exc:
            jacobi_recurrence(-1.0 + 1e-13, -1.0 + 1e-13, 2)
        assert exc.value.error_code == "SINGULAR_RECURRENCE"


# ============================================================================
# Scalar evaluation
# ============================================================================


class TestBasisValues:
    """Evaluation on the lambda axis."""

    grid = np.linspace(0.0, 2.0, CURVE_POINTS)

    def test_chebyshev_is_cosine(self):
        values = basis_values(BasisSpec(family="chebyshev", K=10), self.grid)
        theta = np.arccos(np.clip(1.0 - self.grid, -1.0, 1.0))
        for k in range(11):
            np.testing.assert_allclose(values[:, k], np.cos(k * theta), atol=1e-10)

    def test_jacobi_minus_half_matches_chebyshev_after_normalization(self):
        jacobi = normalize_at_zero(
            BasisSpec(family="jacobi", K=10, a=-0.5, b=-0.5),
            basis_values(BasisSpec(family="jacobi", K=10, a=-0.5, b=-0.5), self.grid),
        )
        chebyshev = basis_values(BasisSpec(family="chebyshev", K=10), self.grid)
        np.testing.assert_allclose(jacobi, chebyshev, atol=1e-10)

    def test_bernstein_partition_of_unity(self):
        values = basis_values(BasisSpec(family="bernstein", K=7), self.grid)
        np.testing.assert_allclose(values.sum(axis=1), 1.0, atol=1e-12)
        assert (values >= 0).all()

    def test_bernstein_scalar(self):
        assert basis_scalar(BasisSpec(family="bernstein", K=2), 1, 1.0) == 0.5

    def test_bernstein_arity(self):
        with pytest.raises(ValidationError) as exc:
            basis_values(BasisSpec(family="bernstein", K=3), self.grid, K=4)
        assert exc.value.error_code == "BASIS_ARITY_ERROR"

    def test_monomial_powers(self):
        values = basis_values(BasisSpec(family="monomial", K=3), np.array([0.5]))
        np.testing.assert_allclose(values[0], [1.0, 0.5, 0.25, 0.125])

    def test_recurrence_families_extend_degree(self):
        values = basis_values(BasisSpec(family="chebyshev", K=2), self.grid, K=5)
        assert values.shape == (CURVE_POINTS, 6)

    def test_large_binomial_is_finite(self):
        assert np.isfinite(binomial(64, 32))
        assert binomial(5, 2) == pytest.approx(10.0)

    def test_jacobi_orthogonality_under_weight(self):
        spec = BasisSpec(family="jacobi", K=4, a=1.0, b=0.5)

        def inner(j, k):
            def integrand(lam):
                g = basis_values(spec, np.array([lam]))[0]
                return g[j] * g[k] * weight_function(spec, np.array([lam]))[0]

            return quad(integrand, 0.0, 2.0)[0]

        for j in range(4):
            assert inner(j, j + 1) == pytest.approx(0.0, abs=1e-8)
        assert inner(2, 2) > 0


class TestFixedCoeffs:
    """Non-learnable APPNP and SGC coefficients."""

    def test_appnp(self):
        coeffs = fixed_coeffs(BasisSpec(family="fixed_appnp", K=3, alpha=0.5))
        np.testing.assert_allclose(coeffs, [2.0, 1.0, 0.5, 0.25])

    def test_sgc(self):
        np.testing.assert_array_equal(
            fixed_coeffs(BasisSpec(family="fixed_sgc", K=2)), [0.0, 0.0, 1.0]
        )

    def test_not_fixed(self):
        with pytest.raises(ValidationError) as exc:
            fixed_coeffs(BasisSpec(family="chebyshev", K=2))
        assert exc.value.error_code == "NOT_A_FIXED_FILTER"


class TestWeightFunction:
    """Weight functions on the lambda axis."""

    def test_chebyshev_weight(self):
        lam = np.array([0.5, 1.0])
        np.testing.assert_allclose(
            weight_function(BasisSpec(family="chebyshev"), lam), (lam * (2 - lam)) ** -0.5
        )

    def test_no_weight_for_bernstein(self):
        with pytest.raises(ValidationError):
            weight_function(BasisSpec(family="bernstein"), np.array([1.0]))


class TestBasisCurvesFrame:
    """Long-format curve export."""

    def test_rows_per_degree(self):
        frame = basis_curves_frame(BasisSpec(family="jacobi", K=3, a=0.5, b=1.0))
        assert list(frame.columns) == ["lambda", "k", "value", "weight"]
        assert len(frame) == 4 * CURVE_POINTS
        assert (frame.groupby("k").size() == CURVE_POINTS).all()

    def test_bernstein_sums_to_one_per_lambda(self):
        frame = basis_curves_frame(BasisSpec(family="bernstein", K=5))
        sums = frame.groupby("lambda")["value"].sum()
        np.testing.assert_allclose(sums.to_numpy(), 1.0, atol=1e-12)
        assert frame["weight"].isna().all()


# ============================================================================
# Operator evaluation
# ============================================================================


def _oracle(spec: BasisSpec, s, h: np.ndarray) -> list[np.ndarray]:
    G = basis_values(spec, s.eigenvalues)
    U = s.eigenvectors
    return [U @ (G[:, k][:, None] * (U.T @ h)) for k in range(G.shape[1])]


class TestApplyBasis:
    """g_k(A_hat) h against the dense spectral oracle."""

    @pytest.mark.parametrize("seed", range(3))
    @pytest.mark.parametrize(
        "spec",
        [
            BasisSpec(family="monomial", K=10),
            BasisSpec(family="chebyshev", K=10),
            BasisSpec(family="bernstein", K=10),
            BasisSpec(family="jacobi", K=10, a=1.5, b=-0.5),
            BasisSpec(family="fixed_appnp", K=10),
        ],
        ids=lambda spec: spec.family.value,
    )
    def test_matches_spectral_oracle(self, spec, seed):
        g = random_connected_graph(40, 0.15, seed=seed)
        A_hat = normalized_adjacency(g)
        s = eigendecompose(normalized_laplacian(g))
        h = np.random.default_rng(seed).standard_normal((40, 2))
        for got, expected in zip(apply_basis(spec, A_hat, h), _oracle(spec, s, h)):
            np.testing.assert_allclose(got, expected, atol=1e-8)

    def test_fitted_basis_matches_oracle(self, rng):
        g = random_connected_graph(25, 0.25, seed=8)
        A_hat = normalized_adjacency(g)
        s = eigendecompose(normalized_laplacian(g))
        h = rng.standard_normal(25)
        spec = fitted_basis_spec(s, spectral_weights(s, h), K=5)
        H = h[:, None]
        for got, expected in zip(apply_basis(spec, A_hat, H), _oracle(spec, s, H)):
            np.testing.assert_allclose(got, expected, atol=1e-8)

    def test_unit_gammas_match_plain_jacobi(self, path6_operators, rng):
        A_hat, _, _ = path6_operators
        spec = BasisSpec(family="jacobi", K=4, a=0.5, b=0.5)
        h = rng.standard_normal(6)
        plain = apply_basis(spec, A_hat, h)
        scaled = apply_basis(spec, A_hat, h, gammas=np.ones(4))
        for a, b in zip(plain, scaled):
            np.testing.assert_allclose(a, b, atol=1e-12)

    def test_gammas_scale_cumulatively(self, path6_operators, rng):
        A_hat, _, _ = path6_operators
        spec = BasisSpec(family="jacobi", K=3)
        gammas = np.array([0.5, 0.8, 0.9])
        h = rng.standard_normal(6)
        plain = apply_basis(spec, A_hat, h)
        scaled = apply_basis(spec, A_hat, h, gammas=gammas)
        for k in range(1, 4):
            np.testing.assert_allclose(scaled[k], np.prod(gammas[:k]) * plain[k], atol=1e-12)

    def test_gammas_need_jacobi(self, path6_operators):
        A_hat, _, _ = path6_operators
        with pytest.raises(ValidationError) as exc:
            apply_basis(BasisSpec(family="chebyshev", K=2), A_hat, np.ones(6), gammas=np.ones(2))
        assert exc.value.error_code == "UNSUPPORTED_BASIS_COMBINATION"

    def test_degree_zero(self, path6_operators):
        A_hat, _, _ = path6_operators
        out = apply_basis(BasisSpec(family=BasisFamily.JACOBI, K=0), A_hat, np.ones(6))
        assert len(out) == 1

    def test_row_mismatch(self, path6_operators):
        A_hat, _, _ = path6_operators
        with pytest.raises(ValidationError):
            apply_basis(BasisSpec(K=2), A_hat, np.ones(5))
