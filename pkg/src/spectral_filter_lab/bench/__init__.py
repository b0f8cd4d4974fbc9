"""Filter-learning benchmark and node-classification harness."""

from spectral_filter_lab.bench.classification import (
    ABLATION_VARIANTS,
    ablation_suite,
    random_split,
    run_node_classification,
    split_hash,
)
from spectral_filter_lab.bench.filter_bench import (
    DEFAULT_AB_GRID,
    FilterTask,
    build_filter_task,
    fit_filter_task,
    make_filter_tasks,
    run_filter_bench,
    select_jacobi_parameters,
    smooth_field,
    summarize_rows,
)

__all__ = [
    # Filter benchmark
    "FilterTask",
    "DEFAULT_AB_GRID",
    "smooth_field",
    "build_filter_task",
    "make_filter_tasks",
    "fit_filter_task",
    "select_jacobi_parameters",
    "summarize_rows",
    "run_filter_bench",
    # Node classification
    "random_split",
    "split_hash",
    "run_node_classification",
    "ablation_suite",
    "ABLATION_VARIANTS",
]
