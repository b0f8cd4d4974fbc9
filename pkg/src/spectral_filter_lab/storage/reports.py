"""
Report writers.

JSON for structured reports, CSV for tables and curves. Writers create
parent directories and return the path written.
"""

import json
import re
from pathlib import Path
from typing import Any, TypeVar, Union

import pandas as pd
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from spectral_filter_lab.errors import ValidationError, file_not_found_error
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.types import BenchReport

logger = get_logger(__name__)

ReportT = TypeVar("ReportT", bound=BaseModel)


def _prepare(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json_report(report: Union[BaseModel, dict[str, Any]], path: Union[str, Path]) -> Path:
    """Write a pydantic report (or plain dict) as indented JSON."""
    path = _prepare(path)
    if isinstance(report, BaseModel):
        text = report.model_dump_json(indent=2)
    else:
        text = json.dumps(report, indent=2, sort_keys=True, default=str)
    path.write_text(text + "\n")
    logger.info(f"Wrote {path}")
    return path


def load_json_report(path: Union[str, Path], model: type[ReportT]) -> ReportT:
    """Parse a JSON report back into its pydantic model.

    Raises:
        NotFoundError: If the file does not exist
        ValidationError: REPORT_PARSE_ERROR when the content does not match the model
    """
    path = Path(path)
    if not path.exists():
        raise file_not_found_error(str(path), "report")
    try:
        return model.model_validate_json(path.read_text())
    except PydanticValidationError as e:
        raise ValidationError(
            message=f"{path} is not a valid {model.__name__}: {e.error_count()} error(s)",
            error_code="REPORT_PARSE_ERROR",
            details={"path": str(path)},
        ) from e


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a table without the index."""
    path = _prepare(path)
    frame.to_csv(path, index=False)
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.-]+", "_", text).strip("_")


def write_bench_report(report: BenchReport, out_dir: Union[str, Path]) -> dict[str, Path]:
    """
    Write bench_report.json, bench_rows.csv, bench_summary.csv and one curve CSV per run.

    Curves go to curves/<basis>__<filter>__<task>.csv with columns epoch, sse.
    """
    out_dir = Path(out_dir)
    paths = {
        "report": write_json_report(report, out_dir / "bench_report.json"),
        "rows": write_csv(report.to_frame(), out_dir / "bench_rows.csv"),
        "summary": write_csv(
            pd.DataFrame([s.model_dump() for s in report.summary]), out_dir / "bench_summary.csv"
        ),
    }
    for row in report.rows:
        if row.curve:
            name = f"{_slug(row.basis)}__{row.filter_id}__{row.task_index}.csv"
            curve = pd.DataFrame({"epoch": range(1, len(row.curve) + 1), "sse": row.curve})
            write_csv(curve, out_dir / "curves" / name)
    paths["curves"] = out_dir / "curves"
    return paths
