"""Report and checkpoint files (JSON and CSV)."""

from spectral_filter_lab.storage.checkpoints import (
    CheckpointFile,
    ParameterArray,
    load_checkpoint,
    save_checkpoint,
)
from spectral_filter_lab.storage.reports import (
    load_json_report,
    write_bench_report,
    write_csv,
    write_json_report,
)

__all__ = [
    # Reports
    "write_json_report",
    "load_json_report",
    "write_csv",
    "write_bench_report",
    # Checkpoints
    "ParameterArray",
    "CheckpointFile",
    "save_checkpoint",
    "load_checkpoint",
]
