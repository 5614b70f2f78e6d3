from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from orbisymp.utils.env import load_env_file
from orbisymp.utils.logging import (
    StructuredJsonFormatter,
    bind_log_context,
    clear_log_context,
    get_log_context,
    log_context,
)
from orbisymp.utils.settings import get_settings


def test_settings_defaults() -> None:
    settings = get_settings()
    assert settings.threads == 1
    assert settings.rank_tol == 1e-8
    assert settings.newton_accept_tol == 1e-10
    assert settings.residual_tol == 1e-10
    assert settings.newton_max_step == 1.0
    assert settings.newton_backtrack_limit == 30
    assert settings.newton_floor_factor == 32.0


def test_settings_read_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ORBISYMP_THREADS", "4")
    monkeypatch.setenv("ORBISYMP_EIGEN_GAP_TOL", "1e-6")
    settings = get_settings()
    assert settings.threads == 4
    assert settings.eigen_gap_tol == 1e-6


def test_settings_read_yaml_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    config = tmp_path / "orbisymp.yaml"
    config.write_text("newton_max_iter: 12\nparabolic_tol: 1.0e-7\n", encoding="utf-8")
    monkeypatch.setenv("ORBISYMP_CONFIG", str(config))
    settings = get_settings()
    assert settings.newton_max_iter == 12
    assert settings.parabolic_tol == 1e-7


def test_environment_overrides_yaml_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    config = tmp_path / "orbisymp.yaml"
    config.write_text("threads: 2\n", encoding="utf-8")
    monkeypatch.setenv("ORBISYMP_CONFIG", str(config))
    monkeypatch.setenv("ORBISYMP_THREADS", "3")
    assert get_settings().threads == 3


def test_env_file_does_not_override_exported_values(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    env_file = tmp_path / "custom.env"
    env_file.write_text("ORBISYMP_THREADS=6\n", encoding="utf-8")
    monkeypatch.setenv("ORBISYMP_ENV", str(env_file))
    monkeypatch.setenv("ORBISYMP_THREADS", "2")
    assert load_env_file() == env_file
    assert get_settings().threads == 2


def test_formatter_emits_json_with_extra_fields() -> None:
    record = logging.LogRecord("orbisymp.test", logging.INFO, __file__, 10, "Check finished", None, None)
    record.check = "fox.mean_value"
    record.max_error = 0.0
    payload = json.loads(StructuredJsonFormatter().format(record))
    assert payload["message"] == "Check finished"
    assert payload["level"] == "INFO"
    assert payload["extra"] == {"check": "fox.mean_value", "max_error": 0.0}


def test_log_context_is_scoped() -> None:
    clear_log_context()
    with log_context(suite="flows", seed=4, check=None):
        assert get_log_context() == {"suite": "flows", "seed": 4}
        token = bind_log_context(check="flows.group_law.genus2_pants")
        assert get_log_context()["check"] == "flows.group_law.genus2_pants"
        clear_log_context(token)
        assert "check" not in get_log_context()
    assert get_log_context() == {}
