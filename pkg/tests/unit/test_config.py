"""Unit tests for configuration loading and merging.

Covers the JSON config file reader, environment overrides, the precedence
order defaults < file < flags < environment, and the config hash.
"""

import json

import pytest

from spectral_filter_lab.config import (
    _drop_unset,
    config_hash,
    load_config_file,
    load_config_from_env,
    merge_config,
)
from spectral_filter_lab.errors import NotFoundError, ValidationError
from spectral_filter_lab.types import RunConfig

# =============================================================================
# Config File Tests
# =============================================================================


class TestLoadConfigFile:
    """Tests for load_config_file."""

    def test_reads_json_object(self, tmp_path):
        """A JSON object is returned as a dict."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 7, "train": {"max_epochs": 10}}))

        data = load_config_file(str(path))

        assert data == {"seed": 7, "train": {"max_epochs": 10}}

    def test_missing_file(self, tmp_path):
        """A missing file raises NotFoundError."""
        with pytest.raises(NotFoundError) as exc_info:
            load_config_file(str(tmp_path / "nope.json"))

        assert exc_info.value.error_code == "INPUT_FILE_NOT_FOUND"

    def test_invalid_json(self, tmp_path):
        """Malformed JSON is reported with its line number."""
        path = tmp_path / "bad.json"
        path.write_text('{\n"seed": 1,\n}')

        with pytest.raises(ValidationError) as exc_info:
            load_config_file(str(path))

        assert exc_info.value.error_code == "CONFIG_PARSE_ERROR"
        assert exc_info.value.details["line"] == 3

    def test_non_object_root(self, tmp_path):
        """A JSON list is rejected."""
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")

        with pytest.raises(ValidationError) as exc_info:
            load_config_file(str(path))

        assert exc_info.value.error_code == "CONFIG_PARSE_ERROR"
        assert exc_info.value.details["type"] == "list"


# =============================================================================
# Environment Tests
# =============================================================================


class TestLoadConfigFromEnv:
    """Tests for environment overrides."""

    def test_defaults_without_variables(self, monkeypatch):
        monkeypatch.delenv("SFL_SEED", raising=False)
        monkeypatch.delenv("SFL_JOBS", raising=False)
        monkeypatch.delenv("SFL_LOG_LEVEL", raising=False)

        env = load_config_from_env()

        assert env == {"log_level": "INFO"}

    def test_integer_overrides(self, monkeypatch):
        monkeypatch.setenv("SFL_SEED", "42")
        monkeypatch.setenv("SFL_JOBS", "3")
        monkeypatch.setenv("SFL_LOG_LEVEL", "DEBUG")

        env = load_config_from_env()

        assert env["seed"] == 42
        assert env["jobs"] == 3
        assert env["log_level"] == "DEBUG"

    def test_invalid_integer_is_ignored(self, monkeypatch):
        """A non-integer SFL_SEED is skipped, not fatal."""
        monkeypatch.setenv("SFL_SEED", "abc")
        monkeypatch.delenv("SFL_JOBS", raising=False)

        env = load_config_from_env()

        assert "seed" not in env


# =============================================================================
# Merge Tests
# =============================================================================


class TestMergeConfig:
    """Tests for merge_config precedence."""

    def test_defaults(self):
        cfg = merge_config("train")

        assert isinstance(cfg, RunConfig)
        assert cfg.command == "train"
        assert cfg.seed == 0
        assert cfg.jobs == 1
        assert cfg.model.basis.family.value == "jacobi"
        assert cfg.train.max_epochs == 1000

    def test_file_overrides_defaults(self):
        cfg = merge_config("train", file_config={"seed": 5, "train": {"lr_linear": 0.2}})

        assert cfg.seed == 5
        assert cfg.train.lr_linear == 0.2
        assert cfg.train.lr_coeffs == 0.01

    def test_flags_override_file(self):
        cfg = merge_config(
            "train",
            file_config={"seed": 5, "train": {"max_epochs": 50, "patience": 10}},
            cli_overrides={"seed": 9, "train": {"max_epochs": 20, "patience": None}},
        )

        assert cfg.seed == 9
        assert cfg.train.max_epochs == 20
        assert cfg.train.patience == 10

    def test_env_overrides_flags(self):
        cfg = merge_config(
            "filterbench",
            file_config={"jobs": 2},
            cli_overrides={"seed": 9, "jobs": 4},
            env={"seed": 11, "log_level": "INFO"},
        )

        assert cfg.seed == 11
        assert cfg.jobs == 4

    def test_command_cannot_be_overridden(self):
        cfg = merge_config("theory", file_config={"command": "train"})

        assert cfg.command == "theory"

    def test_nested_basis_merge(self):
        cfg = merge_config(
            "train",
            file_config={"model": {"basis": {"family": "jacobi", "a": 0.5}}},
            cli_overrides={"model": {"basis": {"K": 4, "b": None}}},
        )

        assert cfg.model.basis.a == 0.5
        assert cfg.model.basis.b == 1.0
        assert cfg.model.basis.K == 4

    def test_invalid_values(self):
        """Out-of-range values surface as INVALID_CONFIG with field paths."""
        with pytest.raises(ValidationError) as exc_info:
            merge_config("train", cli_overrides={"jobs": 0, "train": {"dropout_x": 1.5}})

        assert exc_info.value.error_code == "INVALID_CONFIG"
        problems = exc_info.value.details["errors"]
        assert any(p.startswith("jobs") for p in problems)
        assert any(p.startswith("train.dropout_x") for p in problems)


class TestDropUnset:
    """Tests for _drop_unset."""

    def test_removes_none_and_empty_nested(self):
        cleaned = _drop_unset({"seed": None, "jobs": 2, "train": {"lr_pcd": None}, "p": {"x": 0}})

        assert cleaned == {"jobs": 2, "p": {"x": 0}}

    def test_keeps_falsy_values(self):
        cleaned = _drop_unset({"seed": 0, "pcd": False, "name": ""})

        assert cleaned == {"seed": 0, "pcd": False, "name": ""}


# =============================================================================
# Config Hash Tests
# =============================================================================


class TestConfigHash:
    """Tests for config_hash."""

    def test_key_order_does_not_matter(self):
        assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})

    def test_model_and_dump_agree(self):
        cfg = merge_config("train", cli_overrides={"seed": 3})

        assert config_hash(cfg) == config_hash(cfg.model_dump(mode="json"))
        assert len(config_hash(cfg)) == 64

    def test_changes_with_values(self):
        assert config_hash(merge_config("train")) != config_hash(
            merge_config("train", cli_overrides={"seed": 1})
        )
