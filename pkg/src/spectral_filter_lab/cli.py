"""Command-line interface for Spectral Filter Lab.

Subcommands:
    diagnose     Missing-component and multiplicity diagnostics of a graph
    filterbench  Synthetic filter-learning benchmark over polynomial bases
    train        Node classification (optionally the model ablation table)
    theory       Executable theory checks
    basisplot    Basis and weight-function curves as CSV

Exit codes:
    0: Success
    1: Unexpected internal error
    2: Input error (parse, bounds, missing file, bad config)
    3: Numeric failure (eigensolver, divergence, singular solve)
    4: A theory or property check failed

Errors are reported as a JSON document on stderr; logs also go to stderr.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from spectral_filter_lab import __version__
from spectral_filter_lab.bench.classification import (
    ABLATION_VARIANTS,
    DEFAULT_SPLITS,
    ablation_suite,
    run_node_classification,
)
from spectral_filter_lab.bench.filter_bench import (
    DEFAULT_AB_GRID,
    make_filter_tasks,
    run_filter_bench,
)
from spectral_filter_lab.bases.scalar import basis_curves_frame
from spectral_filter_lab.config import (
    config_hash,
    load_config_file,
    load_config_from_env,
    merge_config,
)
from spectral_filter_lab.errors import (
    PropertyCheckError,
    SpectralLabError,
    ValidationError,
    build_error_response,
    build_generic_error_response,
)
from spectral_filter_lab.graph.core import normalized_laplacian
from spectral_filter_lab.graph.loader import load_edge_list, load_features_csv, load_labels_csv
from spectral_filter_lab.logging import configure_logging, get_logger
from spectral_filter_lab.spectral.diagnostics import (
    DEFAULT_BINS,
    DEFAULT_TOL,
    diagnose,
    signal_density,
)
from spectral_filter_lab.spectral.eigen import eigendecompose
from spectral_filter_lab.storage.reports import write_bench_report, write_csv, write_json_report
from spectral_filter_lab.theory.suite import THEORY_CHECKS, run_theory_check
from spectral_filter_lab.types import BasisFamily, BasisSpec, RunConfig

logger = get_logger(__name__)

PLOTTABLE_FAMILIES = [f.value for f in BasisFamily if f != BasisFamily.ORTHO_FITTED]
BENCH_BASES = "monomial,chebyshev,bernstein,jacobi"
SELECTION_SEED_OFFSET = 10_000

# theory flag -> keyword of the underlying check
THEORY_FLAGS: dict[str, dict[str, str]] = {
    "universality": {"graphs": "graphs"},
    "wl": {"graphs": "graphs", "nmax": "n_max", "trials": "trials", "degree": "K_max"},
    "automorphism": {"nmax": "n_max"},
    "randfeat": {"seeds": "seeds"},
    "spectrum": {"samples": "samples", "sigma": "sigma"},
    "bias": {"n": "n", "draws": "draws"},
    "interp": {"filter": "filter_id", "degree": "degree"},
    "degree": {"n": "n"},
    "unifilter": {"degree": "K"},
}
INTERP_DEFAULTS = {"filter_id": "cos", "degree": 4}


# =============================================================================
# Argument Parsing
# =============================================================================


def _split_fractions(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three fractions, got {len(parts)}")
    return parts  # type: ignore[return-value]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; explicit flags take precedence")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR (env SFL_LOG_LEVEL)")
    common.add_argument("--log-file", help="Also write logs to this file")
    common.add_argument("--jobs", type=int, help="Worker threads (default 1)")
    common.add_argument("--seed", type=int, help="Global seed (env SFL_SEED overrides)")
    return common


def _optimizer_parser() -> argparse.ArgumentParser:
    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--degree", type=int, help="Polynomial degree K")
    opt.add_argument("--a", type=float, help="Jacobi exponent a")
    opt.add_argument("--b", type=float, help="Jacobi exponent b")
    opt.add_argument("--lr-w", type=float, help="Learning rate of W and bias")
    opt.add_argument("--lr-alpha", type=float, help="Learning rate of filter coefficients")
    opt.add_argument("--lr-pcd", type=float, help="Learning rate of PCD parameters")
    opt.add_argument("--wd-w", type=float, help="Weight decay of W and bias")
    opt.add_argument("--wd-alpha", type=float, help="Weight decay of filter coefficients")
    opt.add_argument("--wd-pcd", type=float, help="Weight decay of PCD parameters")
    opt.add_argument("--epochs", type=int, help="Maximum epochs")
    opt.add_argument("--patience", type=int, help="Early-stopping patience")
    return opt


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    common = _common_parser()
    optimizer = _optimizer_parser()
    parser = argparse.ArgumentParser(
        prog="spectral-filter-lab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagnose", parents=[common], help="Spectral diagnostics of a graph")
    p.add_argument("--graph", required=True, help="Edge-list file")
    p.add_argument("--features", help="Feature CSV (row i = node i)")
    p.add_argument("--tol-eig", type=float, help=f"Eigenvalue gap tolerance ({DEFAULT_TOL:g})")
    p.add_argument("--tol-miss", type=float, help=f"Missing-component tolerance ({DEFAULT_TOL:g})")
    p.add_argument("--bins", type=int, help=f"Density bins on [0, 2] ({DEFAULT_BINS})")
    p.add_argument("--out", required=True, help="Diagnostics JSON; density goes to *.density.csv")

    p = sub.add_parser(
        "filterbench", parents=[common, optimizer], help="Synthetic filter-learning benchmark"
    )
    p.add_argument("--side", type=int, help="Grid side (default 32)")
    p.add_argument("--count", type=int, help="Signals per filter (default 10)")
    p.add_argument("--bases", help=f"Comma-separated families (default {BENCH_BASES})")
    p.add_argument("--pcd", action="store_true", default=None, help="PCD for Jacobi bases")
    p.add_argument(
        "--select", action="store_true", default=None, help="Select Jacobi (a, b) per filter"
    )
    p.add_argument("--selection-count", type=int, help="Selection signals per filter (default 2)")
    p.add_argument("--sse-threshold", type=float, help="SSE level for epochs-to-threshold")
    p.add_argument("--out", required=True, help="Output directory")

    p = sub.add_parser("train", parents=[common, optimizer], help="Node classification")
    p.add_argument("--graph", required=True, help="Edge-list file")
    p.add_argument("--features", required=True, help="Feature CSV")
    p.add_argument("--labels", required=True, help="Label CSV")
    p.add_argument("--basis", choices=PLOTTABLE_FAMILIES, help="Filter basis (default jacobi)")
    p.add_argument("--alpha", type=float, help="APPNP teleport scalar")
    p.add_argument(
        "--pcd", action=argparse.BooleanOptionalAction, default=None, help="Use PCD (Jacobi only)"
    )
    p.add_argument("--gamma-prime", type=float, help="PCD gamma cap")
    p.add_argument("--unifilter", action="store_true", default=None, help="Share one filter")
    p.add_argument("--no-bias", action="store_true", default=None, help="Drop the bias")
    p.add_argument("--dropout-x", type=float, help="Dropout on X")
    p.add_argument("--dropout-h", type=float, help="Dropout on XW + b")
    p.add_argument("--split", type=_split_fractions, help="Train,val,test fractions")
    p.add_argument("--repeats", type=int, help="Random splits (default 10)")
    p.add_argument(
        "--ablation",
        nargs="?",
        const="all",
        help=f"Run ablation variants (all or a subset of {','.join(ABLATION_VARIANTS)})",
    )
    p.add_argument("--out", required=True, help="Output directory")

    p = sub.add_parser("theory", parents=[common], help="Executable theory checks")
    p.add_argument("--check", required=True, choices=list(THEORY_CHECKS))
    p.add_argument("--nmax", type=int, help="Largest graph size (automorphism, wl)")
    p.add_argument("--filter", help="Filter response (interp)")
    p.add_argument(
        "--degree", type=int, help="Interpolation degree (interp), K_max (wl) or K (unifilter)"
    )
    p.add_argument("--graphs", type=int, help="Number of random graphs (universality, wl)")
    p.add_argument("--trials", type=int, help="Coefficient draws per graph (wl)")
    p.add_argument("--seeds", type=int, help="Seeds per graph (randfeat)")
    p.add_argument("--samples", type=int, help="Monte Carlo samples (spectrum)")
    p.add_argument("--sigma", type=float, help="Feature standard deviation (spectrum)")
    p.add_argument("--n", type=int, help="Graph size (bias, degree)")
    p.add_argument("--draws", type=int, help="Random (W, b) draws (bias)")
    p.add_argument("--out", help="Report JSON (stdout when omitted)")

    p = sub.add_parser("basisplot", parents=[common], help="Basis curves as CSV")
    p.add_argument("--basis", required=True, choices=PLOTTABLE_FAMILIES)
    p.add_argument("--degree", type=int, help="Maximum degree K (default 10)")
    p.add_argument("--a", type=float, help="Jacobi exponent a")
    p.add_argument("--b", type=float, help="Jacobi exponent b")
    p.add_argument("--alpha", type=float, help="APPNP teleport scalar")
    p.add_argument("--normalize", action="store_true", help="Divide each curve by g_k(0)")
    p.add_argument("--out", required=True, help="CSV path")
    return parser


def _basis_overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "family": getattr(args, "basis", None),
        "K": getattr(args, "degree", None),
        "a": getattr(args, "a", None),
        "b": getattr(args, "b", None),
        "alpha": getattr(args, "alpha", None),
    }


def _train_overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "lr_linear": getattr(args, "lr_w", None),
        "lr_coeffs": getattr(args, "lr_alpha", None),
        "lr_pcd": getattr(args, "lr_pcd", None),
        "wd_linear": getattr(args, "wd_w", None),
        "wd_coeffs": getattr(args, "wd_alpha", None),
        "wd_pcd": getattr(args, "wd_pcd", None),
        "dropout_x": getattr(args, "dropout_x", None),
        "dropout_h": getattr(args, "dropout_h", None),
        "max_epochs": getattr(args, "epochs", None),
        "patience": getattr(args, "patience", None),
    }


def cli_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Nested RunConfig overrides from parsed flags; None means "not given"."""
    overrides: dict[str, Any] = {
        "seed": args.seed,
        "jobs": args.jobs,
        "paths": {
            name: getattr(args, name, None) for name in ("graph", "features", "labels", "out")
        },
        "model": {"basis": _basis_overrides(args)},
        "train": _train_overrides(args),
        "params": {},
    }
    if args.command == "train":
        overrides["model"].update(
            {
                "pcd": args.pcd,
                "gamma_prime": args.gamma_prime,
                "unifilter": args.unifilter,
                "bias": False if args.no_bias else None,
            }
        )
        overrides["params"] = {
            "splits": None if args.split is None else list(args.split),
            "repeats": args.repeats,
            "ablation": args.ablation,
        }
    elif args.command == "filterbench":
        overrides["params"] = {
            "side": args.side,
            "count": args.count,
            "bases": args.bases,
            "pcd": args.pcd,
            "select": args.select,
            "selection_count": args.selection_count,
            "sse_threshold": args.sse_threshold,
        }
    elif args.command == "diagnose":
        overrides["params"] = {
            "tol_eig": args.tol_eig,
            "tol_missing": args.tol_miss,
            "bins": args.bins,
        }
    elif args.command == "theory":
        flags = THEORY_FLAGS.get(args.check, {})
        params = {kw: getattr(args, flag) for flag, kw in flags.items()}
        ignored = [
            flag
            for flag in {f for table in THEORY_FLAGS.values() for f in table}
            if flag not in flags and getattr(args, flag) is not None
        ]
        if ignored:
            logger.warning(f"Flags not used by --check {args.check}: {', '.join(sorted(ignored))}")
        overrides["params"] = {"check": args.check, **params}
    elif args.command == "basisplot":
        overrides["params"] = {"normalize": args.normalize}
    return overrides


# =============================================================================
# Commands
# =============================================================================


def _embed(run: RunConfig, payload: dict[str, Any]) -> dict[str, Any]:
    return {"run_config": run.model_dump(mode="json"), "config_hash": config_hash(run), **payload}


def cmd_diagnose(run: RunConfig) -> int:
    """Write diagnostics JSON and, with features, a density CSV sidecar."""
    params = run.params
    g = load_edge_list(run.paths["graph"])
    X = None
    if run.paths.get("features"):
        X = load_features_csv(run.paths["features"], n=g.n)

    s = eigendecompose(normalized_laplacian(g))
    diagnostics = diagnose(
        s,
        X,
        tol_missing=params.get("tol_missing", DEFAULT_TOL),
        tol_eig=params.get("tol_eig", DEFAULT_TOL),
    )
    out = Path(run.paths["out"])
    payload = diagnostics.model_dump(mode="json", exclude_none=True)
    write_json_report(_embed(run, {"diagnostics": payload}), out)
    if X is not None:
        density = signal_density(s, X, bins=params.get("bins", DEFAULT_BINS))
        write_csv(density.to_frame(), out.with_suffix(".density.csv"))
    return 0


def _bench_bases(run: RunConfig) -> list[BasisSpec]:
    names = [n.strip() for n in run.params.get("bases", BENCH_BASES).split(",") if n.strip()]
    known = {f.value for f in BasisFamily}
    unknown = [n for n in names if n not in known or n == BasisFamily.ORTHO_FITTED.value]
    if unknown or not names:
        raise ValidationError(
            message=f"Unknown or unsupported bases: {', '.join(unknown) or '(none given)'}",
            error_code="UNKNOWN_BASIS",
            details={"bases": names},
            suggestions=[f"Choose from {', '.join(PLOTTABLE_FAMILIES)}"],
        )
    return [run.model.basis.model_copy(update={"family": BasisFamily(n)}) for n in names]


def cmd_filterbench(run: RunConfig) -> int:
    """Run the filter benchmark and write report, rows, summary and curves."""
    params = run.params
    bases = _bench_bases(run)
    side = params.get("side", 32)
    tasks = make_filter_tasks(side, params.get("count", 10), run.seed)

    hyper_grid = selection_tasks = None
    if params.get("select"):
        hyper_grid = DEFAULT_AB_GRID
        selection_tasks = make_filter_tasks(
            side, params.get("selection_count", 2), run.seed + SELECTION_SEED_OFFSET
        )

    report = run_filter_bench(
        tasks,
        bases,
        run.train.model_copy(update={"seed": run.seed}),
        hyper_grid=hyper_grid,
        selection_tasks=selection_tasks,
        pcd=bool(params.get("pcd", False)),
        jobs=run.jobs,
        sse_threshold=params.get("sse_threshold"),
    )
    report.config["run"] = run.model_dump(mode="json")
    write_bench_report(report, run.paths["out"])
    return 0


def cmd_train(run: RunConfig) -> int:
    """Node classification over repeated splits; checkpoints every repeat's best model."""
    params = run.params
    g = load_edge_list(run.paths["graph"])
    g = g.with_data(
        features=load_features_csv(run.paths["features"], n=g.n),
        labels=load_labels_csv(run.paths["labels"], n=g.n),
    )
    out = Path(run.paths["out"])
    dataset = Path(run.paths["graph"]).stem
    model_cfg = run.model
    if model_cfg.basis.family != BasisFamily.JACOBI and model_cfg.pcd:
        logger.info(f"PCD disabled for the {model_cfg.basis.family.value} basis")
        model_cfg = model_cfg.model_copy(update={"pcd": False})
    splits = tuple(params.get("splits", DEFAULT_SPLITS))
    repeats = params.get("repeats", 10)

    ablation = params.get("ablation")
    if ablation:
        variants = None if ablation == "all" else [v.strip() for v in ablation.split(",")]
        report = ablation_suite(
            {dataset: g}, run.model, run.train, repeats=repeats, seed=run.seed, variants=variants
        )
        for row in report.rows:
            row.config["run"] = run.model_dump(mode="json")
        write_json_report(report, out / "ablation_report.json")
        write_csv(report.to_frame(), out / "ablation.csv")
        return 0

    report = run_node_classification(
        g,
        model_cfg,
        run.train,
        splits=splits,
        repeats=repeats,
        seed=run.seed,
        dataset=dataset,
        variant="unifilter" if model_cfg.unifilter else model_cfg.basis.label(),
        checkpoint_dir=out / "checkpoints",
    )
    report.config["run"] = run.model_dump(mode="json")
    write_json_report(report, out / "classification_report.json")
    return 0


def cmd_theory(run: RunConfig) -> int:
    """Run one theory check; a failed check exits with code 4 after the report is written."""
    params = dict(run.params)
    check = params.pop("check")
    if check == "interp":
        params = {**INTERP_DEFAULTS, **params}
    report = run_theory_check(check, seed=run.seed, **params)
    document = _embed(run, {"report": report.model_dump(mode="json")})
    if run.paths.get("out"):
        write_json_report(document, run.paths["out"])
    else:
        sys.stdout.write(json.dumps(document, indent=2, sort_keys=True) + "\n")

    if not report.passed:
        raise PropertyCheckError(
            message=f"Theory check '{check}' failed",
            error_code="THEORY_CHECK_FAILED",
            details={"check": check, "seed": report.seed},
        )
    logger.info(f"Theory check '{check}' passed")
    return 0


def cmd_basisplot(run: RunConfig) -> int:
    """Write long-format basis curves (lambda, k, value, weight)."""
    frame = basis_curves_frame(run.model.basis, normalize=bool(run.params.get("normalize")))
    write_csv(frame, run.paths["out"])
    return 0


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "diagnose": cmd_diagnose,
    "filterbench": cmd_filterbench,
    "train": cmd_train,
    "theory": cmd_theory,
    "basisplot": cmd_basisplot,
}


# =============================================================================
# Entry Point
# =============================================================================


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, merge configuration and dispatch; returns the exit code."""
    args = build_parser().parse_args(argv)

    try:
        configure_logging(level=args.log_level, log_file=args.log_file)
        file_config = load_config_file(args.config) if args.config else None
        run = merge_config(args.command, file_config, cli_overrides(args), load_config_from_env())
        logger.debug(f"Effective config hash {config_hash(run)}")
        return COMMANDS[args.command](run)
    except SpectralLabError as e:
        logger.error(f"{args.command} failed: {e.message}")
        response = build_error_response(e, args.command)
    except Exception as e:
        logger.error(f"{args.command} failed unexpectedly: {e}", exc_info=True)
        response = build_generic_error_response(e, args.command)

    sys.stderr.write(json.dumps(response, indent=2, default=str) + "\n")
    return response["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
