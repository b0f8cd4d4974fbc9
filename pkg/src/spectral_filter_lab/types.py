"""Data types and Pydantic models for Spectral Filter Lab.

This module defines the serializable data structures used for:
- Filter basis identification (BasisSpec, OrthoCoeffs)
- Model and training configuration (ModelConfig, TrainConfig, RunConfig)
- Spectral diagnostics (Diagnostics, DensityEstimate)
- Benchmark, classification and theory-check reports

Array-valued numerical containers (Graph, Spectrum, LinearGnnModel) are plain
dataclasses living next to the code that operates on them.
"""

from enum import Enum
from typing import Any, Literal, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

# =============================================================================
# Filter Bases
# =============================================================================


class BasisFamily(str, Enum):
    """Polynomial filter families."""

    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"
    BERNSTEIN = "bernstein"
    JACOBI = "jacobi"
    FIXED_APPNP = "fixed_appnp"
    FIXED_SGC = "fixed_sgc"
    ORTHO_FITTED = "ortho_fitted"


FIXED_FAMILIES = frozenset({BasisFamily.FIXED_APPNP, BasisFamily.FIXED_SGC})


class OrthoCoeffs(BaseModel):
    """Three-term recurrence table of a fitted orthonormal basis.

    Polynomials live in z = 1 - lambda:
        p_0 = 1 / sqrt(mass)
        s[k] * p_{k+1} = (z - a[k]) * p_k - s[k-1] * p_{k-1}   (s[-1] term absent)
    """

    model_config = ConfigDict(frozen=True)

    a: list[float] = Field(..., description="Recurrence diagonal a_0..a_{K-1}")
    s: list[float] = Field(..., description="Recurrence off-diagonal s_1..s_K (all > 0)")
    mass: float = Field(..., gt=0.0, description="Total weight of the discrete measure")

    @model_validator(mode="after")
    def _check_lengths(self) -> "OrthoCoeffs":
        if len(self.a) != len(self.s):
            raise ValueError(f"a and s must have equal length, got {len(self.a)} and {len(self.s)}")
        if any(v <= 0.0 for v in self.s):
            raise ValueError("recurrence off-diagonal entries must be positive")
        return self

    @property
    def degree(self) -> int:
        return len(self.a)


class BasisSpec(BaseModel):
    """Identifies a polynomial filter family, its degree and family parameters."""

    model_config = ConfigDict(frozen=True)

    family: BasisFamily = Field(default=BasisFamily.JACOBI)
    K: int = Field(default=10, ge=0, description="Maximum polynomial degree")
    a: float = Field(default=1.0, gt=-1.0, description="Jacobi exponent on (1 - z)")
    b: float = Field(default=1.0, gt=-1.0, description="Jacobi exponent on (1 + z)")
    alpha: float = Field(default=0.1, gt=0.0, lt=1.0, description="APPNP teleport scalar")
    ortho: Optional[OrthoCoeffs] = Field(default=None, description="Table for ortho_fitted")

    @model_validator(mode="after")
    def _check_ortho(self) -> "BasisSpec":
        if self.family == BasisFamily.ORTHO_FITTED:
            if self.ortho is None:
                raise ValueError("ortho_fitted basis requires a recurrence table")
            if self.ortho.degree < self.K:
                raise ValueError(
                    f"recurrence table has degree {self.ortho.degree} < K={self.K}"
                )
        return self

    @property
    def is_fixed(self) -> bool:
        return self.family in FIXED_FAMILIES

    def label(self) -> str:
        """Short human-readable label used in report rows."""
        if self.family == BasisFamily.JACOBI:
            return f"jacobi(a={self.a:g},b={self.b:g})"
        if self.family == BasisFamily.FIXED_APPNP:
            return f"fixed_appnp(alpha={self.alpha:g})"
        return self.family.value


# =============================================================================
# Model and Training Configuration
# =============================================================================


class ModelConfig(BaseModel):
    """Structure of a linear GNN / JacobiConv model."""

    basis: BasisSpec = Field(default_factory=BasisSpec)
    pcd: bool = Field(default=True, description="Polynomial coefficient decomposition")
    gamma_prime: float = Field(default=1.0, gt=0.0, description="PCD gamma cap")
    unifilter: bool = Field(default=False, description="Share one filter across channels")
    bias: bool = Field(default=True, description="Learnable bias after the linear layer")


class TrainConfig(BaseModel):
    """Optimizer groups, regularization and stopping rules."""

    lr_linear: float = Field(default=0.01, ge=0.0, description="Adam lr for W and bias")
    lr_coeffs: float = Field(default=0.01, ge=0.0, description="Adam lr for alpha / beta")
    lr_pcd: float = Field(default=0.01, ge=0.0, description="Adam lr for PCD eta")
    wd_linear: float = Field(default=0.0, ge=0.0)
    wd_coeffs: float = Field(default=0.0, ge=0.0)
    wd_pcd: float = Field(default=0.0, ge=0.0)
    dropout_x: float = Field(default=0.0, ge=0.0, lt=1.0, description="Dropout on X")
    dropout_h: float = Field(default=0.0, ge=0.0, lt=1.0, description="Dropout on XW + b")
    max_epochs: int = Field(default=1000, ge=1)
    patience: int = Field(default=200, ge=0)
    seed: int = Field(default=0)
    loss: Literal["squared", "softmax_ce"] = Field(default="squared")
    log_every: int = Field(default=100, ge=1)


class RunConfig(BaseModel):
    """Full configuration of one CLI invocation; embedded in every report."""

    command: str
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    paths: dict[str, str] = Field(default_factory=dict)
    params: dict[str, Any] = Field(default_factory=dict)
    model: ModelConfig = Field(default_factory=ModelConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)


# =============================================================================
# Spectral Diagnostics
# =============================================================================


class Diagnostics(BaseModel):
    """Universality-condition diagnostics of a graph (and optional features)."""

    n_eigenvalues: int
    n_distinct: int
    n_missing: Optional[int] = Field(
        default=None, description="Frequency components with ||X~_i|| <= tol_missing"
    )
    multi_ratio: float = Field(..., description="% of distinct eigenvalues with multiplicity > 1")
    groups: list[tuple[int, int]] = Field(
        ..., description="Half-open index ranges of equal-eigenvalue clusters"
    )
    eigenvalue_min: float
    eigenvalue_max: float
    tol_missing: float
    tol_eig: float


class DensityEstimate(BaseModel):
    """Histogram estimate of the squared-GFT signal density over [0, 2]."""

    bin_edges: list[float]
    cumulative: list[float] = Field(..., description="Mass below each edge; last edge closed")
    density: list[float] = Field(..., description="Bin mass divided by bin width")

    def to_frame(self) -> pd.DataFrame:
        """Tabular form with columns lambda_lo, lambda_hi, F, f."""
        return pd.DataFrame(
            {
                "lambda_lo": self.bin_edges[:-1],
                "lambda_hi": self.bin_edges[1:],
                "F": self.cumulative[1:],
                "f": self.density,
            }
        )


# =============================================================================
# Benchmark and Classification Reports
# =============================================================================


class BenchRow(BaseModel):
    """One (task, basis) training run of the filter benchmark."""

    basis: str
    filter_id: str
    task_index: int
    seed: int
    sse: Optional[float] = None
    epochs_run: int = 0
    best_epoch: int = 0
    epochs_to_threshold: Optional[int] = None
    a: Optional[float] = None
    b: Optional[float] = None
    failed: bool = False
    error: Optional[str] = None
    curve: list[float] = Field(default_factory=list, description="Training SSE per epoch")


class BenchSummary(BaseModel):
    """Aggregate of BenchRows for one (basis, filter)."""

    basis: str
    filter_id: str
    count: int
    failures: int
    mean_sse: Optional[float]
    median_sse: Optional[float]


class BenchReport(BaseModel):
    """Synthetic filter-learning benchmark results."""

    rows: list[BenchRow]
    summary: list[BenchSummary]
    selected: dict[str, dict[str, float]] = Field(
        default_factory=dict, description="Per-filter Jacobi (a, b) picked on selection tasks"
    )
    config: dict[str, Any] = Field(default_factory=dict)
    config_hash: Optional[str] = None

    def to_frame(self) -> pd.DataFrame:
        """Flat table: basis, filter, task, seed, metric."""
        return pd.DataFrame(
            [
                {
                    "basis": r.basis,
                    "filter": r.filter_id,
                    "task": r.task_index,
                    "seed": r.seed,
                    "metric": r.sse,
                }
                for r in self.rows
            ],
            columns=["basis", "filter", "task", "seed", "metric"],
        )


class ClassificationRun(BaseModel):
    """One repeat of the node-classification protocol."""

    repeat: int
    seed: int
    split_hash: str
    test_accuracy: float
    best_val_metric: float
    best_epoch: int
    test_index: list[int]
    checkpoint: Optional[str] = Field(default=None, description="Saved best model, if any")


class ClassificationReport(BaseModel):
    """Mean test accuracy with a normal-approximation 95% interval."""

    dataset: str
    variant: str
    runs: list[ClassificationRun]
    mean_accuracy: float
    ci95: float
    config: dict[str, Any] = Field(default_factory=dict)
    config_hash: Optional[str] = None


class AblationReport(BaseModel):
    """Paired comparison of model variants on shared splits."""

    rows: list[ClassificationReport]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "dataset": r.dataset,
                    "variant": r.variant,
                    "mean_accuracy": r.mean_accuracy,
                    "ci95": r.ci95,
                    "split_hashes": ";".join(run.split_hash for run in r.runs),
                }
                for r in self.rows
            ],
            columns=["dataset", "variant", "mean_accuracy", "ci95", "split_hashes"],
        )


# =============================================================================
# Theory-Check Reports
# =============================================================================


class TheoryReport(BaseModel):
    """Common envelope of every theory check."""

    check: str
    passed: bool
    seed: Optional[int] = None


class UniversalityReport(TheoryReport):
    graphs: int
    max_relative_residual: float
    tolerance: float


class WlBoundReport(TheoryReport):
    K: int
    trials: int
    pairs_checked: int
    violations: list[dict[str, Any]] = Field(default_factory=list)


class AutomorphismScanReport(TheoryReport):
    n_max: int
    graphs_scanned: int
    distinct_spectrum_graphs: int
    high_order_counterexamples: list[list[tuple[int, int]]] = Field(default_factory=list)
    feature_checks: int = 0
    feature_counterexamples: list[dict[str, Any]] = Field(default_factory=list)


class RandomSpectrumReport(TheoryReport):
    n: int
    sigma: float
    samples: int
    max_abs_mean: float
    max_cov_deviation: float
    mean_bound: float
    cov_bound: float
    max_norm_error: float


class RandomFeatureReport(TheoryReport):
    attempts: int
    successes: int
    augmented_dims: int
    max_relative_residual: float


class BiasReport(TheoryReport):
    n: int
    draws: int
    max_projection: float
    witness_eigenvalue: float
    tolerance: float


class InterpolationReport(TheoryReport):
    filter_id: str
    degree: int
    sup_error: float
    bound: float
    derivative_sup: float
    loss_bound_unit: float = Field(
        ..., description="Squared-loss bound per unit ||XW||_F^2: bound^2 / 2"
    )


class DegreeDemoReport(TheoryReport):
    n: int
    n_distinct: int
    min_degree: Optional[int]
    ratio: Optional[float]
    rel_tolerance: float
    residuals: dict[int, float] = Field(default_factory=dict)


class UnifilterReport(TheoryReport):
    K: int
    unifilter_optimal_loss: float
    scan_loss: Optional[float] = None
    multi_filter_fit_loss: float
    multi_filter_trained_loss: float
    epochs: int
    min_gap: float
    fit_tolerance: float
