"""Unit tests for spectral_filter_lab.types.

Tests the Pydantic models for:
- Valid input acceptance
- Invalid input rejection
- Default value handling
- Custom validators and tabular views
"""

import pytest
from pydantic import ValidationError

from spectral_filter_lab.types import (
    AblationReport,
    BasisFamily,
    BasisSpec,
    BenchReport,
    BenchRow,
    ClassificationReport,
    ClassificationRun,
    DensityEstimate,
    ModelConfig,
    OrthoCoeffs,
    TrainConfig,
    UnifilterReport,
)

# =============================================================================
# Basis Tests
# =============================================================================


class TestBasisSpec:
    """Tests for BasisSpec validation."""

    def test_defaults(self):
        spec = BasisSpec()
        assert spec.family == BasisFamily.JACOBI
        assert spec.K == 10
        assert spec.a == 1.0
        assert spec.b == 1.0
        assert spec.alpha == 0.1
        assert spec.ortho is None

    def test_family_from_string(self):
        assert BasisSpec(family="bernstein").family == BasisFamily.BERNSTEIN

    def test_unknown_family(self):
        with pytest.raises(ValidationError):
            BasisSpec(family="legendre")

    @pytest.mark.parametrize("field,value", [("a", -1.0), ("b", -2.0), ("K", -1)])
    def test_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            BasisSpec(**{field: value})

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_alpha_open_interval(self, alpha):
        with pytest.raises(ValidationError):
            BasisSpec(family="fixed_appnp", alpha=alpha)

    def test_frozen(self):
        spec = BasisSpec()
        with pytest.raises(ValidationError):
            spec.K = 3

    def test_is_fixed(self):
        assert BasisSpec(family="fixed_sgc").is_fixed
        assert BasisSpec(family="fixed_appnp").is_fixed
        assert not BasisSpec(family="chebyshev").is_fixed

    @pytest.mark.parametrize(
        "spec,label",
        [
            (BasisSpec(a=0.25, b=-0.5), "jacobi(a=0.25,b=-0.5)"),
            (BasisSpec(family="fixed_appnp", alpha=0.2), "fixed_appnp(alpha=0.2)"),
            (BasisSpec(family="monomial"), "monomial"),
        ],
    )
    def test_label(self, spec, label):
        assert spec.label() == label

    def test_ortho_requires_table(self):
        with pytest.raises(ValidationError, match="recurrence table"):
            BasisSpec(family="ortho_fitted", K=2)

    def test_ortho_table_degree(self):
        table = OrthoCoeffs(a=[0.0], s=[1.0], mass=1.0)
        with pytest.raises(ValidationError, match="degree 1 < K=2"):
            BasisSpec(family="ortho_fitted", K=2, ortho=table)

    def test_ortho_valid(self):
        table = OrthoCoeffs(a=[0.0, 0.1], s=[1.0, 0.5], mass=2.0)
        spec = BasisSpec(family="ortho_fitted", K=2, ortho=table)
        assert spec.ortho.degree == 2


class TestOrthoCoeffs:
    """Tests for the recurrence table."""

    def test_length_mismatch(self):
        with pytest.raises(ValidationError, match="equal length"):
            OrthoCoeffs(a=[0.0, 0.0], s=[1.0], mass=1.0)

    def test_non_positive_offdiagonal(self):
        with pytest.raises(ValidationError, match="positive"):
            OrthoCoeffs(a=[0.0], s=[0.0], mass=1.0)

    def test_non_positive_mass(self):
        with pytest.raises(ValidationError):
            OrthoCoeffs(a=[0.0], s=[1.0], mass=0.0)


# =============================================================================
# Model and Training Config Tests
# =============================================================================


class TestModelConfig:
    def test_defaults(self):
        cfg = ModelConfig()
        assert cfg.pcd
        assert cfg.gamma_prime == 1.0
        assert not cfg.unifilter
        assert cfg.bias

    def test_gamma_prime_positive(self):
        with pytest.raises(ValidationError):
            ModelConfig(gamma_prime=0.0)


class TestTrainConfig:
    def test_defaults(self):
        cfg = TrainConfig()
        assert cfg.loss == "squared"
        assert cfg.max_epochs == 1000
        assert cfg.patience == 200
        assert cfg.dropout_x == 0.0

    def test_unknown_loss(self):
        with pytest.raises(ValidationError):
            TrainConfig(loss="hinge")

    @pytest.mark.parametrize("field,value", [("dropout_h", 1.0), ("max_epochs", 0), ("lr_pcd", -1)])
    def test_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            TrainConfig(**{field: value})


# =============================================================================
# Report Model Tests
# =============================================================================


class TestTabularViews:
    """Tests for to_frame helpers on report models."""

    def test_density_frame(self):
        density = DensityEstimate(
            bin_edges=[0.0, 1.0, 2.0], cumulative=[0.0, 0.25, 1.0], density=[0.25, 0.75]
        )

        frame = density.to_frame()

        assert list(frame.columns) == ["lambda_lo", "lambda_hi", "F", "f"]
        assert list(frame["F"]) == [0.25, 1.0]
        assert list(frame["lambda_hi"]) == [1.0, 2.0]

    def test_bench_frame_empty(self):
        frame = BenchReport(rows=[], summary=[]).to_frame()

        assert frame.empty
        assert list(frame.columns) == ["basis", "filter", "task", "seed", "metric"]

    def test_bench_frame_failed_row(self):
        row = BenchRow(basis="monomial", filter_id="high", task_index=2, seed=5, failed=True)

        frame = BenchReport(rows=[row], summary=[]).to_frame()

        assert frame.loc[0, "task"] == 2
        assert frame["metric"].isna().all()

    def test_ablation_frame_joins_split_hashes(self):
        runs = [
            ClassificationRun(
                repeat=i,
                seed=i,
                split_hash=h,
                test_accuracy=1.0,
                best_val_metric=1.0,
                best_epoch=3,
                test_index=[0],
            )
            for i, h in enumerate(["aa", "bb"])
        ]
        report = ClassificationReport(
            dataset="sbm", variant="full", runs=runs, mean_accuracy=1.0, ci95=0.0
        )

        frame = AblationReport(rows=[report]).to_frame()

        assert frame.loc[0, "split_hashes"] == "aa;bb"
        assert frame.loc[0, "variant"] == "full"


class TestTheoryReports:
    def test_unifilter_report_optional_scan(self):
        report = UnifilterReport(
            check="unifilter",
            passed=True,
            K=1,
            unifilter_optimal_loss=0.25,
            multi_filter_fit_loss=0.0,
            multi_filter_trained_loss=1e-6,
            epochs=10,
            min_gap=0.1,
            fit_tolerance=1e-10,
        )

        assert report.scan_loss is None
        assert report.seed is None
        assert report.model_dump()["check"] == "unifilter"
