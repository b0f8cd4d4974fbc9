"""
Adam with per-group learning rate and L2 weight decay.

Parameter groups:
    linear  -> W, bias
    coeffs  -> alpha / beta
    pcd     -> eta
"""

from dataclasses import dataclass, field

import numpy as np

from spectral_filter_lab.types import TrainConfig

BETA1 = 0.9
BETA2 = 0.999
EPS = 1e-8

PARAM_GROUPS = {"W": "linear", "bias": "linear", "coeffs": "coeffs", "eta": "pcd"}


def group_hyperparams(name: str, cfg: TrainConfig) -> tuple[float, float]:
    """(learning rate, weight decay) of the group owning a parameter."""
    group = PARAM_GROUPS[name]
    return getattr(cfg, f"lr_{group}"), getattr(cfg, f"wd_{group}")


@dataclass
class AdamState:
    """First/second moment estimates per parameter and the shared step count."""

    step: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(
    state: AdamState,
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    cfg: TrainConfig,
) -> dict[str, np.ndarray]:
    """
    One Adam update (beta1=0.9, beta2=0.999, eps=1e-8) of every parameter.

    Weight decay is added to the gradient (L2 penalty) using the parameter's
    group coefficient. State is updated in place; new parameter arrays are
    returned.

    Example:
        >>> state = AdamState()
        >>> adam_step(state, {"W": np.zeros(1)}, {"W": np.ones(1)}, TrainConfig(lr_linear=0.1))
        {'W': array([-0.1])}
    """
    state.step += 1
    t = state.step
    updated = {}
    for name, value in params.items():
        lr, wd = group_hyperparams(name, cfg)
        grad = grads[name] + wd * value if wd else grads[name]
        m = state.m.get(name, np.zeros_like(value))
        v = state.v.get(name, np.zeros_like(value))
        m = BETA1 * m + (1.0 - BETA1) * grad
        v = BETA2 * v + (1.0 - BETA2) * grad * grad
        state.m[name], state.v[name] = m, v
        m_hat = m / (1.0 - BETA1**t)
        v_hat = v / (1.0 - BETA2**t)
        updated[name] = value - lr * m_hat / (np.sqrt(v_hat) + EPS)
    return updated
