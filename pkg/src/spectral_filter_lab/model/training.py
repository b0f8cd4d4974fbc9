"""
Full-batch training loop with early stopping on a validation metric.

The validation metric is the validation loss for the squared loss (lower is
better) and accuracy for softmax cross-entropy (higher is better, ties broken
by lower validation loss). Training stops when more than `patience`
consecutive epochs fail to improve it, and the best-validation parameters
are restored.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from spectral_filter_lab.errors import ValidationError, divergence_error
from spectral_filter_lab.graph.core import SymmetricOperator
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.model.core import LinearGnnModel, predict, sample_dropout
from spectral_filter_lab.model.loss import compute_loss, loss_and_grads
from spectral_filter_lab.model.optim import AdamState, adam_step
from spectral_filter_lab.types import TrainConfig

logger = get_logger(__name__)


@dataclass(frozen=True)
class TrainTask:
    """Graph operator, features, target and node splits of one training run."""

    A_hat: SymmetricOperator
    X: np.ndarray
    target: np.ndarray
    train_index: np.ndarray
    val_index: Optional[np.ndarray] = None
    test_index: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        splits = [s for s in (self.train_index, self.val_index, self.test_index) if s is not None]
        seen: set[int] = set()
        for split in splits:
            members = set(np.asarray(split).tolist())
            if seen & members:
                raise ValidationError(
                    message="Train/validation/test node sets must be disjoint",
                    error_code="OVERLAPPING_SPLITS",
                    details={"overlap": sorted(seen & members)[:10]},
                )
            seen |= members

    @property
    def validation_index(self) -> np.ndarray:
        return self.train_index if self.val_index is None else self.val_index


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_metric: float


@dataclass
class TrainHistory:
    """Per-epoch curve plus stopping information."""

    records: list[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_val_metric: float = float("nan")
    stopped_early: bool = False

    @property
    def epochs_run(self) -> int:
        return len(self.records)

    def epochs_to_threshold(self, threshold: float) -> Optional[int]:
        """First epoch whose train loss is <= threshold, if any."""
        for record in self.records:
            if record.train_loss <= threshold:
                return record.epoch
        return None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.epoch, r.train_loss, r.val_metric) for r in self.records],
            columns=["epoch", "train_loss", "val_metric"],
        )


def accuracy(Z: np.ndarray, labels: np.ndarray, index: np.ndarray) -> float:
    """Fraction of indexed nodes whose argmax prediction equals the label."""
    return float(np.mean(np.argmax(Z[index], axis=1) == np.asarray(labels)[index]))


def evaluate(
    m: LinearGnnModel, task: TrainTask, index: np.ndarray, loss: str
) -> tuple[float, float]:
    """(loss, metric) on a node subset without dropout.

    The metric is accuracy for cross-entropy and the loss itself otherwise.
    """
    Z = predict(m, task.A_hat, task.X)
    value, _ = compute_loss(loss, Z, task.target, np.asarray(index))
    if loss == "softmax_ce":
        return value, accuracy(Z, task.target, np.asarray(index))
    return value, value


def train(
    m: LinearGnnModel, task: TrainTask, cfg: TrainConfig
) -> tuple[LinearGnnModel, TrainHistory]:
    """
    Train with Adam and early stopping; returns the best-validation model.

    Args:
        m: Initial model (not modified)
        task: Operator, features, target and splits
        cfg: Optimizer groups, dropout, epochs, patience, seed and loss

    Returns:
        (best model, history)

    Raises:
        NumericError: TRAINING_DIVERGED when the loss becomes non-finite
    """
    maximize = cfg.loss == "softmax_ce"
    model = m.copy()
    state = AdamState()
    history = TrainHistory()
    best_model = model.copy()
    best_key: Optional[tuple[float, float]] = None
    stale = 0
    val_index = task.validation_index

    n, d = task.X.shape
    for epoch in range(1, cfg.max_epochs + 1):
        dropout = sample_dropout(
            cfg.seed, epoch, (n, d), (n, model.d_out), cfg.dropout_x, cfg.dropout_h
        )
        loss, grads = loss_and_grads(
            model, task.A_hat, task.X, task.target, task.train_index, cfg.loss, dropout
        )
        if not np.isfinite(loss) or not all(np.isfinite(g).all() for g in grads.values()):
            logger.error(f"Training diverged at epoch {epoch} (loss={loss})")
            raise divergence_error(epoch, loss)

        model = model.with_parameters(adam_step(state, model.parameters(), grads, cfg))

        val_loss, val_metric = evaluate(model, task, val_index, cfg.loss)
        history.records.append(EpochRecord(epoch=epoch, train_loss=loss, val_metric=val_metric))
        if epoch % cfg.log_every == 0:
            logger.debug(f"epoch {epoch}: train_loss={loss:.6g}, val_metric={val_metric:.6g}")

        # larger key is better
        key = (val_metric, -val_loss) if maximize else (-val_metric, 0.0)
        if best_key is None or key > best_key:
            best_key = key
            best_model = model.copy()
            history.best_epoch = epoch
            history.best_val_metric = val_metric
            stale = 0
        else:
            stale += 1
            if stale > cfg.patience:
                history.stopped_early = True
                logger.info(
                    f"Early stop at epoch {epoch} (best epoch {history.best_epoch}, "
                    f"val_metric={history.best_val_metric:.6g})"
                )
                break

    return best_model, history
