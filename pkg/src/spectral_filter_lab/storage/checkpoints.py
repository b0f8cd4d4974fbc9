"""
Model checkpoints as JSON.

Layout:
    {
      "format": "spectral-filter-lab/checkpoint",
      "version": 1,
      "spec": {...BasisSpec...},
      "d_in": 3, "d_out": 2, "seed": 0,
      "gamma_prime": 1.0, "unifilter": false, "learn_coeffs": true,
      "config_hash": "...",
      "parameters": {"W": {"shape": [3, 2], "data": [...row-major...]}, ...}
    }

Floats are written with repr precision, so a reloaded model reproduces
predictions bit for bit.
"""

from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from spectral_filter_lab.errors import ValidationError, file_not_found_error
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.model.core import LinearGnnModel
from spectral_filter_lab.types import BasisSpec

logger = get_logger(__name__)

CHECKPOINT_FORMAT = "spectral-filter-lab/checkpoint"


class ParameterArray(BaseModel):
    shape: list[int]
    data: list[float] = Field(..., description="Row-major values")

    @classmethod
    def from_array(cls, array: np.ndarray) -> "ParameterArray":
        return cls(shape=list(array.shape), data=np.asarray(array, dtype=float).ravel().tolist())

    def to_array(self) -> np.ndarray:
        return np.asarray(self.data, dtype=float).reshape(self.shape)


class CheckpointFile(BaseModel):
    """Serialized LinearGnnModel."""

    format: Literal["spectral-filter-lab/checkpoint"] = CHECKPOINT_FORMAT
    version: int = 1
    spec: BasisSpec
    d_in: int
    d_out: int
    seed: int
    gamma_prime: float
    unifilter: bool
    learn_coeffs: bool
    config_hash: Optional[str] = None
    parameters: dict[str, ParameterArray]


def save_checkpoint(
    m: LinearGnnModel, path: Union[str, Path], config_hash: Optional[str] = None
) -> Path:
    """Write every parameter array (W, bias, coeffs, eta) with the basis and metadata."""
    arrays = {"W": m.W, "coeffs": m.coeffs}
    if m.bias is not None:
        arrays["bias"] = m.bias
    if m.eta is not None:
        arrays["eta"] = m.eta
    checkpoint = CheckpointFile(
        spec=m.spec,
        d_in=m.d_in,
        d_out=m.d_out,
        seed=m.seed,
        gamma_prime=m.gamma_prime,
        unifilter=m.unifilter,
        learn_coeffs=m.learn_coeffs,
        config_hash=config_hash,
        parameters={name: ParameterArray.from_array(a) for name, a in arrays.items()},
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(checkpoint.model_dump_json(indent=2) + "\n")
    logger.info(f"Saved checkpoint {path} ({m.spec.label()}, K={m.spec.K})")
    return path


def load_checkpoint(path: Union[str, Path]) -> tuple[LinearGnnModel, CheckpointFile]:
    """
    Rebuild a model from a checkpoint file.

    Raises:
        NotFoundError: If the file does not exist
        ValidationError: CHECKPOINT_PARSE_ERROR for malformed content or shapes
    """
    path = Path(path)
    if not path.exists():
        raise file_not_found_error(str(path), "checkpoint")
    try:
        checkpoint = CheckpointFile.model_validate_json(path.read_text())
        params = {name: p.to_array() for name, p in checkpoint.parameters.items()}
    except (PydanticValidationError, ValueError) as e:
        raise ValidationError(
            message=f"Malformed checkpoint {path}: {e}",
            error_code="CHECKPOINT_PARSE_ERROR",
            details={"path": str(path)},
        ) from e

    if "W" not in params or "coeffs" not in params:
        raise ValidationError(
            message=f"Checkpoint {path} lacks W or coeffs",
            error_code="CHECKPOINT_PARSE_ERROR",
            details={"path": str(path), "parameters": sorted(params)},
        )
    if params["W"].shape != (checkpoint.d_in, checkpoint.d_out):
        raise ValidationError(
            message=f"Checkpoint W has shape {params['W'].shape}, "
            f"expected ({checkpoint.d_in}, {checkpoint.d_out})",
            error_code="CHECKPOINT_PARSE_ERROR",
            details={"path": str(path)},
        )

    model = LinearGnnModel(
        W=params["W"],
        bias=params.get("bias"),
        coeffs=params["coeffs"],
        spec=checkpoint.spec,
        eta=params.get("eta"),
        gamma_prime=checkpoint.gamma_prime,
        unifilter=checkpoint.unifilter,
        learn_coeffs=checkpoint.learn_coeffs,
        seed=checkpoint.seed,
    )
    logger.debug(f"Loaded checkpoint {path}")
    return model, checkpoint
