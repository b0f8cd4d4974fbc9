"""
Linear GNN / JacobiConv model and its forward pass.

    X_hat = dropout_h(dropout_x(X) W + b)
    Z[:, l] = sum_k alpha[k, l] g_k(A_hat) X_hat[:, l]

With polynomial coefficient decomposition (PCD, Jacobi basis only) the
stored coefficients are beta and

    alpha[k, l] = beta[k, l] * prod_{i<=k} gamma_i,   gamma_i = gamma' tanh(eta_i)

which the forward pass realizes through the scaled Jacobi recurrence.
"""

import copy
from dataclasses import dataclass
from typing import Optional

import numpy as np

from spectral_filter_lab.bases.operator import apply_basis
from spectral_filter_lab.bases.scalar import fixed_coeffs
from spectral_filter_lab.errors import ValidationError, dimension_mismatch_error
from spectral_filter_lab.graph.core import SymmetricOperator
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.types import BasisFamily, BasisSpec, ModelConfig

logger = get_logger(__name__)

PCD_INIT_CAP = 0.9


@dataclass
class LinearGnnModel:
    """Parameters of a linear spectral GNN bound to one basis.

    Attributes:
        W: d x d_out linear layer
        bias: Length-d_out bias, or None when disabled
        coeffs: (K+1) x c filter coefficients (alpha, or beta under PCD);
            c = 1 for UniFilter and fixed filters (broadcast over channels)
        spec: Filter basis
        eta: Length-K PCD parameters, or None without PCD
        gamma_prime: PCD cap gamma'
        unifilter: One filter shared by all output channels
        learn_coeffs: False for fixed (APPNP / SGC) filters
        seed: Initialization seed
    """

    W: np.ndarray
    bias: Optional[np.ndarray]
    coeffs: np.ndarray
    spec: BasisSpec
    eta: Optional[np.ndarray] = None
    gamma_prime: float = 1.0
    unifilter: bool = False
    learn_coeffs: bool = True
    seed: int = 0

    @property
    def d_in(self) -> int:
        return int(self.W.shape[0])

    @property
    def d_out(self) -> int:
        return int(self.W.shape[1])

    @property
    def pcd(self) -> bool:
        return self.eta is not None

    def gammas(self) -> Optional[np.ndarray]:
        """gamma_i = gamma' tanh(eta_i), or None without PCD."""
        if self.eta is None:
            return None
        return self.gamma_prime * np.tanh(self.eta)

    def effective_coeffs(self) -> np.ndarray:
        """alpha as a (K+1) x d_out matrix (PCD products folded in, columns broadcast)."""
        alpha = self.coeffs
        gammas = self.gammas()
        if gammas is not None:
            alpha = alpha * np.concatenate([[1.0], np.cumprod(gammas)])[:, None]
        return np.broadcast_to(alpha, (alpha.shape[0], self.d_out)).copy()

    def parameters(self) -> dict[str, np.ndarray]:
        """Learnable parameter arrays keyed by name (W, bias, coeffs, eta)."""
        params = {"W": self.W}
        if self.bias is not None:
            params["bias"] = self.bias
        if self.learn_coeffs:
            params["coeffs"] = self.coeffs
        if self.eta is not None:
            params["eta"] = self.eta
        return params

    def with_parameters(self, params: dict[str, np.ndarray]) -> "LinearGnnModel":
        """Copy of the model with some parameter arrays replaced."""
        clone = self.copy()
        for name, value in params.items():
            setattr(clone, name, np.array(value, dtype=float, copy=True))
        return clone

    def copy(self) -> "LinearGnnModel":
        return copy.deepcopy(self)


def init_model(
    d: int,
    d_out: int,
    spec: BasisSpec,
    pcd: bool = False,
    unifilter: bool = False,
    seed: int = 0,
    gamma_prime: float = 1.0,
    bias: bool = True,
) -> LinearGnnModel:
    """
    Initialize a model at the identity filter.

    W ~ U(-sqrt(1/d), sqrt(1/d)); bias 0; alpha[0] = 1, higher orders 0.
    Fixed families get their non-learnable coefficients instead. PCD starts
    at eta_i = atanh(min(0.9, 1/gamma')), i.e. gamma_i = min(1, 0.9 gamma').

    Raises:
        ValidationError: On non-positive dims or PCD with a non-Jacobi basis

    Example:
        >>> m = init_model(3, 2, BasisSpec(family="chebyshev", K=4), seed=1)
        >>> m.coeffs[:, 0]
        array([1., 0., 0., 0., 0.])
    """
    if d < 1 or d_out < 1:
        raise ValidationError(
            message=f"Model dimensions must be >= 1, got d={d}, d_out={d_out}",
            error_code="INVALID_MODEL_DIMS",
            details={"d": d, "d_out": d_out},
        )
    if pcd and spec.family != BasisFamily.JACOBI:
        raise ValidationError(
            message=f"PCD requires the Jacobi basis, got {spec.family.value}",
            error_code="UNSUPPORTED_BASIS_COMBINATION",
            details={"family": spec.family.value},
        )

    rng = np.random.default_rng(seed)
    limit = np.sqrt(1.0 / d)
    W = rng.uniform(-limit, limit, size=(d, d_out))

    if spec.is_fixed:
        coeffs = fixed_coeffs(spec)[:, None]
    else:
        coeffs = np.zeros((spec.K + 1, 1 if unifilter else d_out))
        coeffs[0] = 1.0

    eta = None
    if pcd:
        eta = np.full(spec.K, np.arctanh(min(PCD_INIT_CAP, 1.0 / gamma_prime)))

    model = LinearGnnModel(
        W=W,
        bias=np.zeros(d_out) if bias else None,
        coeffs=coeffs,
        spec=spec,
        eta=eta,
        gamma_prime=gamma_prime,
        unifilter=unifilter,
        learn_coeffs=not spec.is_fixed,
        seed=seed,
    )
    logger.debug(
        f"Initialized model: d={d}, d_out={d_out}, basis={spec.label()}, K={spec.K}, "
        f"pcd={pcd}, unifilter={unifilter}, seed={seed}"
    )
    return model


def model_from_config(d: int, d_out: int, config: ModelConfig, seed: int) -> LinearGnnModel:
    """init_model driven by a ModelConfig."""
    return init_model(
        d,
        d_out,
        config.basis,
        pcd=config.pcd,
        unifilter=config.unifilter,
        seed=seed,
        gamma_prime=config.gamma_prime,
        bias=config.bias,
    )


@dataclass(frozen=True)
class DropoutState:
    """Inverted-dropout keep masks for one epoch."""

    mask_x: np.ndarray
    mask_h: np.ndarray
    p_x: float
    p_h: float

    def scale_x(self) -> np.ndarray:
        return self.mask_x / (1.0 - self.p_x)

    def scale_h(self) -> np.ndarray:
        return self.mask_h / (1.0 - self.p_h)


def sample_dropout(
    seed: int,
    epoch: int,
    shape_x: tuple[int, int],
    shape_h: tuple[int, int],
    p_x: float,
    p_h: float,
) -> Optional[DropoutState]:
    """Keep masks drawn from default_rng([seed, epoch]); None when both rates are 0."""
    if p_x == 0.0 and p_h == 0.0:
        return None
    rng = np.random.default_rng([seed, epoch])
    return DropoutState(
        mask_x=(rng.random(shape_x) >= p_x).astype(float),
        mask_h=(rng.random(shape_h) >= p_h).astype(float),
        p_x=p_x,
        p_h=p_h,
    )


@dataclass
class ForwardCache:
    """Intermediates kept for the backward pass."""

    X_in: np.ndarray
    X_hat: np.ndarray
    basis: list[np.ndarray]
    gammas: Optional[np.ndarray]
    dropout: Optional[DropoutState] = None


def forward(
    m: LinearGnnModel,
    A_hat: SymmetricOperator,
    X: np.ndarray,
    dropout: Optional[DropoutState] = None,
) -> tuple[np.ndarray, ForwardCache]:
    """
    Evaluate Z = sum_k alpha_k * g_k(A_hat) X_hat channel-wise.

    Args:
        m: Model
        A_hat: Normalized adjacency
        X: n x d features
        dropout: Optional keep masks (training only)

    Returns:
        (Z, cache) with Z of shape n x d_out

    Raises:
        ValidationError: On dimension mismatch
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != m.d_in:
        raise dimension_mismatch_error("feature columns", m.d_in, X.shape[-1] if X.ndim else 0)
    if X.shape[0] != A_hat.n:
        raise dimension_mismatch_error("feature rows", A_hat.n, X.shape[0])

    X_in = X * dropout.scale_x() if dropout is not None else X
    X_hat = X_in @ m.W
    if m.bias is not None:
        X_hat = X_hat + m.bias
    if dropout is not None:
        X_hat = X_hat * dropout.scale_h()

    gammas = m.gammas()
    basis = apply_basis(m.spec, A_hat, X_hat, gammas)
    Z = np.zeros_like(X_hat)
    for k, B_k in enumerate(basis):
        Z += m.coeffs[k][None, :] * B_k

    return Z, ForwardCache(X_in=X_in, X_hat=X_hat, basis=basis, gammas=gammas, dropout=dropout)


def predict(m: LinearGnnModel, A_hat: SymmetricOperator, X: np.ndarray) -> np.ndarray:
    """Forward pass without dropout."""
    Z, _ = forward(m, A_hat, X)
    return Z
