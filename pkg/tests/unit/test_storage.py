"""Unit tests for checkpoint and report files."""

import json

import numpy as np
import pandas as pd
import pytest

from spectral_filter_lab.errors import NotFoundError, ValidationError
from spectral_filter_lab.graph import normalized_adjacency, path_graph
from spectral_filter_lab.model.core import init_model, predict
from spectral_filter_lab.storage import (
    CheckpointFile,
    load_checkpoint,
    load_json_report,
    save_checkpoint,
    write_bench_report,
    write_csv,
    write_json_report,
)
from spectral_filter_lab.types import (
    BasisSpec,
    BenchReport,
    BenchRow,
    BenchSummary,
    BiasReport,
)


def _trained_like_model(pcd: bool = True, bias: bool = True):
    rng = np.random.default_rng(4)
    spec = BasisSpec(family="jacobi", K=3, a=0.5, b=1.5)
    m = init_model(3, 2, spec, pcd=pcd, seed=4, gamma_prime=1.5, bias=bias)
    m.W[...] = rng.normal(size=m.W.shape)
    m.coeffs[...] = rng.normal(size=m.coeffs.shape)
    if m.bias is not None:
        m.bias[...] = rng.normal(size=m.bias.shape)
    if m.eta is not None:
        m.eta[...] = rng.normal(size=m.eta.shape)
    return m


# =============================================================================
# Checkpoint Tests
# =============================================================================


class TestCheckpoints:
    """Tests for save_checkpoint / load_checkpoint."""

    @pytest.mark.parametrize("pcd,bias", [(True, True), (False, False)])
    def test_reload_reproduces_predictions(self, tmp_path, pcd, bias):
        """Every parameter survives, so predictions match bit for bit."""
        m = _trained_like_model(pcd=pcd, bias=bias)
        A_hat = normalized_adjacency(path_graph(5))
        X = np.random.default_rng(0).normal(size=(5, 3))

        path = save_checkpoint(m, tmp_path / "ckpt" / "model.json", config_hash="abc")
        loaded, meta = load_checkpoint(path)

        assert np.array_equal(predict(loaded, A_hat, X), predict(m, A_hat, X))
        assert loaded.spec == m.spec
        assert loaded.gamma_prime == 1.5
        assert (loaded.eta is None) == (not pcd)
        assert (loaded.bias is None) == (not bias)
        assert meta.config_hash == "abc"
        assert meta.format == "spectral-filter-lab/checkpoint"

    def test_layout(self, tmp_path):
        m = _trained_like_model()
        path = save_checkpoint(m, tmp_path / "model.json")

        data = json.loads(path.read_text())

        assert data["d_in"] == 3
        assert data["d_out"] == 2
        assert data["parameters"]["W"]["shape"] == [3, 2]
        assert set(data["parameters"]) == {"W", "bias", "coeffs", "eta"}

    def test_missing_file(self, tmp_path):
        with pytest.raises(NotFoundError):
            load_checkpoint(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")

        with pytest.raises(ValidationError) as exc_info:
            load_checkpoint(path)

        assert exc_info.value.error_code == "CHECKPOINT_PARSE_ERROR"

    def test_missing_weights(self, tmp_path):
        path = save_checkpoint(_trained_like_model(), tmp_path / "model.json")
        data = json.loads(path.read_text())
        del data["parameters"]["W"]
        path.write_text(json.dumps(data))

        with pytest.raises(ValidationError) as exc_info:
            load_checkpoint(path)

        assert exc_info.value.error_code == "CHECKPOINT_PARSE_ERROR"
        assert "W" not in exc_info.value.details["parameters"]

    def test_wrong_weight_shape(self, tmp_path):
        path = save_checkpoint(_trained_like_model(), tmp_path / "model.json")
        data = json.loads(path.read_text())
        data["d_in"] = 4
        path.write_text(json.dumps(data))

        with pytest.raises(ValidationError) as exc_info:
            load_checkpoint(path)

        assert exc_info.value.error_code == "CHECKPOINT_PARSE_ERROR"

    def test_inconsistent_data_length(self, tmp_path):
        """A shape that does not match the data length fails to reshape."""
        path = save_checkpoint(_trained_like_model(), tmp_path / "model.json")
        data = json.loads(path.read_text())
        data["parameters"]["coeffs"]["shape"] = [7, 7]
        path.write_text(json.dumps(data))

        with pytest.raises(ValidationError):
            load_checkpoint(path)

    def test_wrong_format_tag(self, tmp_path):
        path = save_checkpoint(_trained_like_model(), tmp_path / "model.json")
        data = json.loads(path.read_text())
        data["format"] = "something-else"
        path.write_text(json.dumps(data))

        with pytest.raises(ValidationError):
            load_checkpoint(path)

    def test_checkpoint_model_validates(self, tmp_path):
        path = save_checkpoint(_trained_like_model(), tmp_path / "model.json")

        meta = CheckpointFile.model_validate_json(path.read_text())

        assert meta.spec.label() == "jacobi(a=0.5,b=1.5)"


# =============================================================================
# Report Tests
# =============================================================================


def _bench_report() -> BenchReport:
    rows = [
        BenchRow(
            basis="chebyshev",
            filter_id="low",
            task_index=0,
            seed=0,
            sse=0.5,
            epochs_run=3,
            curve=[2.0, 1.0, 0.5],
        ),
        BenchRow(
            basis="jacobi(a=1,b=1)",
            filter_id="low",
            task_index=0,
            seed=0,
            sse=0.25,
            epochs_run=2,
            curve=[1.0, 0.25],
            a=1.0,
            b=1.0,
        ),
        BenchRow(
            basis="jacobi(a=1,b=1)",
            filter_id="comb",
            task_index=1,
            seed=1,
            failed=True,
            error="TRAINING_DIVERGED",
        ),
    ]
    summary = [
        BenchSummary(
            basis="chebyshev", filter_id="low", count=1, failures=0, mean_sse=0.5, median_sse=0.5
        ),
    ]
    return BenchReport(rows=rows, summary=summary, config={"seed": 0}, config_hash="h")


class TestReports:
    """Tests for JSON and CSV report writers."""

    def test_json_roundtrip_model(self, tmp_path):
        report = BiasReport(
            check="bias",
            passed=True,
            seed=1,
            n=4,
            draws=10,
            max_projection=0.0,
            witness_eigenvalue=0.0,
            tolerance=1e-8,
        )

        path = write_json_report(report, tmp_path / "nested" / "bias.json")

        assert load_json_report(path, BiasReport) == report

    def test_json_plain_dict_sorted(self, tmp_path):
        path = write_json_report({"b": 1, "a": 2}, tmp_path / "d.json")

        assert path.read_text().index('"a"') < path.read_text().index('"b"')

    def test_load_wrong_model(self, tmp_path):
        path = write_json_report({"unrelated": True}, tmp_path / "d.json")

        with pytest.raises(ValidationError) as exc_info:
            load_json_report(path, BiasReport)

        assert exc_info.value.error_code == "REPORT_PARSE_ERROR"

    def test_load_missing(self, tmp_path):
        with pytest.raises(NotFoundError):
            load_json_report(tmp_path / "none.json", BiasReport)

    def test_write_csv_no_index(self, tmp_path):
        path = write_csv(pd.DataFrame({"x": [1, 2]}), tmp_path / "t.csv")

        assert path.read_text().splitlines() == ["x", "1", "2"]

    def test_write_bench_report(self, tmp_path):
        paths = write_bench_report(_bench_report(), tmp_path / "bench")

        assert paths["report"].name == "bench_report.json"
        rows = pd.read_csv(paths["rows"])
        assert list(rows.columns) == ["basis", "filter", "task", "seed", "metric"]
        assert len(rows) == 3
        assert rows["metric"].isna().sum() == 1
        summary = pd.read_csv(paths["summary"])
        assert summary.loc[0, "mean_sse"] == 0.5

        curves = sorted(p.name for p in paths["curves"].iterdir())
        assert curves == ["chebyshev__low__0.csv", "jacobi_a_1_b_1__low__0.csv"]
        curve = pd.read_csv(paths["curves"] / "chebyshev__low__0.csv")
        assert list(curve["epoch"]) == [1, 2, 3]
        assert list(curve["sse"]) == [2.0, 1.0, 0.5]

        reloaded = load_json_report(paths["report"], BenchReport)
        assert reloaded.rows[2].failed
