"""
Node-classification harness and the model ablation suite.

Every repeat draws a fresh 60/20/20 split from default_rng([seed, repeat]),
so runs with the same seed share their splits across model variants.
"""

import hashlib
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from spectral_filter_lab.config import config_hash
from spectral_filter_lab.errors import ValidationError
from spectral_filter_lab.graph.core import Graph, normalized_adjacency
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.model.core import model_from_config, predict
from spectral_filter_lab.model.training import TrainTask, accuracy, train
from spectral_filter_lab.storage.checkpoints import save_checkpoint
from spectral_filter_lab.types import (
    AblationReport,
    BasisFamily,
    ClassificationReport,
    ClassificationRun,
    ModelConfig,
    TrainConfig,
)

logger = get_logger(__name__)

DEFAULT_SPLITS = (0.6, 0.2, 0.2)
MAX_SPLIT_TRIES = 100
Z_95 = 1.96


def split_hash(train: np.ndarray, val: np.ndarray, test: np.ndarray) -> str:
    """Short sha256 fingerprint of a (train, val, test) split."""
    digest = hashlib.sha256()
    for part in (train, val, test):
        digest.update(np.asarray(part, dtype=np.int64).tobytes())
        digest.update(b"|")
    return digest.hexdigest()[:16]


def random_split(
    labels: np.ndarray,
    fractions: tuple[float, float, float],
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Random train/validation/test split with every class present in train.

    Splits missing a class in train are redrawn (logged) up to 100 times.

    Raises:
        ValidationError: INVALID_SPLITS for fractions not summing to 1,
            SPLIT_FAILED when no draw covers every class
    """
    if any(f < 0 for f in fractions) or not np.isclose(sum(fractions), 1.0):
        raise ValidationError(
            message=f"Split fractions must be >= 0 and sum to 1, got {fractions}",
            error_code="INVALID_SPLITS",
            details={"fractions": list(fractions)},
        )
    n = labels.size
    n_train = int(round(fractions[0] * n))
    n_val = int(round(fractions[1] * n))
    classes = np.unique(labels)

    for attempt in range(MAX_SPLIT_TRIES):
        order = rng.permutation(n)
        train = np.sort(order[:n_train])
        if np.unique(labels[train]).size == classes.size:
            val = np.sort(order[n_train : n_train + n_val])
            return train, val, np.sort(order[n_train + n_val :])
        logger.warning(f"Split draw {attempt + 1} misses a class in train; resampling")

    raise ValidationError(
        message=f"No split with every class in train after {MAX_SPLIT_TRIES} draws",
        error_code="SPLIT_FAILED",
        details={"classes": int(classes.size), "n_train": n_train},
        suggestions=["Increase the train fraction"],
    )


def run_node_classification(
    g: Graph,
    model_cfg: ModelConfig,
    train_cfg: TrainConfig,
    splits: tuple[float, float, float] = DEFAULT_SPLITS,
    repeats: int = 10,
    seed: int = 0,
    dataset: str = "graph",
    variant: str = "jacobiconv",
    checkpoint_dir: Optional[Union[str, Path]] = None,
) -> ClassificationReport:
    """
    Mean test accuracy of a model trained with softmax cross-entropy over repeats.

    Args:
        g: Graph carrying features and labels
        model_cfg: Basis, PCD, UniFilter and bias settings
        train_cfg: Optimizer and stopping settings (loss is forced to softmax_ce)
        splits: Train/validation/test fractions
        repeats: Number of fresh splits
        seed: Seed for splits and initializations
        dataset: Name recorded in the report
        variant: Model name recorded in the report
        checkpoint_dir: When given, each repeat's best model is saved there as
            <dataset>_<variant>_repeat<r>.json

    Returns:
        ClassificationReport with mean accuracy and 1.96 * std / sqrt(repeats)

    Raises:
        ValidationError: MISSING_LABELS / MISSING_FEATURES when g lacks them
    """
    if g.labels is None:
        raise ValidationError(
            message="Node classification needs labels", error_code="MISSING_LABELS"
        )
    if g.features is None:
        raise ValidationError(
            message="Node classification needs features", error_code="MISSING_FEATURES"
        )

    config = {
        "model": model_cfg.model_dump(mode="json"),
        "train": train_cfg.model_dump(mode="json"),
        "splits": list(splits),
        "repeats": repeats,
        "seed": seed,
    }
    hashed_config = config_hash(config)
    labels = np.asarray(g.labels)
    n_classes = int(labels.max()) + 1
    A_hat = normalized_adjacency(g)
    runs: list[ClassificationRun] = []

    for repeat in range(repeats):
        split_rng = np.random.default_rng([seed, repeat])
        train_idx, val_idx, test_idx = random_split(labels, splits, split_rng)
        run_seed = seed * 1_000 + repeat
        cfg = train_cfg.model_copy(update={"loss": "softmax_ce", "seed": run_seed})
        model = model_from_config(g.features.shape[1], n_classes, model_cfg, seed=run_seed)
        task = TrainTask(A_hat, g.features, labels, train_idx, val_idx, test_idx)
        best, history = train(model, task, cfg)

        test_accuracy = accuracy(predict(best, A_hat, g.features), labels, test_idx)
        hashed = split_hash(train_idx, val_idx, test_idx)
        saved = None
        if checkpoint_dir is not None:
            path = Path(checkpoint_dir) / f"{dataset}_{variant}_repeat{repeat}.json"
            saved = str(save_checkpoint(best, path, config_hash=hashed_config))
        logger.debug(
            f"{dataset}/{variant} repeat {repeat}: split {hashed}, test acc {test_accuracy:.4f}"
        )
        runs.append(
            ClassificationRun(
                repeat=repeat,
                seed=run_seed,
                split_hash=hashed,
                test_accuracy=test_accuracy,
                best_val_metric=history.best_val_metric,
                best_epoch=history.best_epoch,
                test_index=test_idx.tolist(),
                checkpoint=saved,
            )
        )

    scores = np.array([r.test_accuracy for r in runs])
    ci95 = Z_95 * float(np.std(scores, ddof=1)) / np.sqrt(repeats) if repeats > 1 else 0.0
    logger.info(
        f"{dataset}/{variant}: accuracy {scores.mean():.4f} +- {ci95:.4f} over {repeats} repeats"
    )
    return ClassificationReport(
        dataset=dataset,
        variant=variant,
        runs=runs,
        mean_accuracy=float(scores.mean()),
        ci95=ci95,
        config=config,
        config_hash=hashed_config,
    )


def _with_basis(family: BasisFamily) -> Callable[[ModelConfig], ModelConfig]:
    def variant(cfg: ModelConfig) -> ModelConfig:
        basis = cfg.basis.model_copy(update={"family": family})
        return cfg.model_copy(update={"basis": basis, "pcd": False})

    return variant


ABLATION_VARIANTS: dict[str, Callable[[ModelConfig], ModelConfig]] = {
    "jacobiconv": lambda cfg: cfg.model_copy(
        update={"basis": cfg.basis.model_copy(update={"family": BasisFamily.JACOBI}), "pcd": True}
    ),
    "unifilter": lambda cfg: cfg.model_copy(
        update={
            "basis": cfg.basis.model_copy(update={"family": BasisFamily.JACOBI}),
            "pcd": True,
            "unifilter": True,
        }
    ),
    "no_pcd": lambda cfg: cfg.model_copy(
        update={"basis": cfg.basis.model_copy(update={"family": BasisFamily.JACOBI}), "pcd": False}
    ),
    "monomial": _with_basis(BasisFamily.MONOMIAL),
    "chebyshev": _with_basis(BasisFamily.CHEBYSHEV),
    "bernstein": _with_basis(BasisFamily.BERNSTEIN),
}


def ablation_suite(
    graphs: dict[str, Graph],
    model_cfg: ModelConfig,
    train_cfg: TrainConfig,
    repeats: int = 10,
    seed: int = 0,
    variants: Optional[list[str]] = None,
) -> AblationReport:
    """
    Run each model variant on each dataset with shared splits and seeds.

    Variants: jacobiconv, unifilter, no_pcd, monomial, chebyshev, bernstein.
    Rows are ordered by dataset, then variant.
    """
    names = variants or list(ABLATION_VARIANTS)
    unknown = [v for v in names if v not in ABLATION_VARIANTS]
    if unknown:
        raise ValidationError(
            message=f"Unknown ablation variant(s): {', '.join(unknown)}",
            error_code="UNKNOWN_VARIANT",
            details={"variants": unknown},
            suggestions=[f"Known variants: {', '.join(ABLATION_VARIANTS)}"],
        )

    rows = [
        run_node_classification(
            g,
            ABLATION_VARIANTS[name](model_cfg),
            train_cfg,
            repeats=repeats,
            seed=seed,
            dataset=dataset,
            variant=name,
        )
        for dataset, g in graphs.items()
        for name in names
    ]
    return AblationReport(rows=rows)
