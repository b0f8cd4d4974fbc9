"""Linear GNN / JacobiConv model: forward pass, gradients, Adam and training."""

from spectral_filter_lab.model.core import (
    DropoutState,
    ForwardCache,
    LinearGnnModel,
    forward,
    init_model,
    model_from_config,
    predict,
    sample_dropout,
)
from spectral_filter_lab.model.loss import (
    LOSS_KINDS,
    backward,
    compute_loss,
    loss_and_grads,
    softmax_ce_loss,
    squared_loss,
)
from spectral_filter_lab.model.optim import PARAM_GROUPS, AdamState, adam_step
from spectral_filter_lab.model.training import (
    EpochRecord,
    TrainHistory,
    TrainTask,
    accuracy,
    evaluate,
    train,
)

__all__ = [
    # Model
    "LinearGnnModel",
    "init_model",
    "model_from_config",
    "forward",
    "predict",
    "ForwardCache",
    "DropoutState",
    "sample_dropout",
    # Loss and gradients
    "LOSS_KINDS",
    "squared_loss",
    "softmax_ce_loss",
    "compute_loss",
    "backward",
    "loss_and_grads",
    # Optimizer
    "AdamState",
    "adam_step",
    "PARAM_GROUPS",
    # Training
    "TrainTask",
    "EpochRecord",
    "TrainHistory",
    "accuracy",
    "evaluate",
    "train",
]
