import argparse
from pathlib import Path

import pytest
import yaml

from src.config.settings import DEFAULT_SUITE, CheckConfig, RunConfig, Settings

EXAMPLE_SUITE = Path(__file__).parent.parent / "config" / "verify.example.yaml"


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("POLYPART_LOG_LEVEL", "POLYPART_OUTPUT_DIR", "POLYPART_SUITE"):
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


def test_load_uses_default_suite_when_file_missing(tmp_path, clean_env):
    settings = Settings.load(env_path=str(tmp_path / "missing.env"), suite_path=str(tmp_path / "none.yaml"))
    assert [c.kind for c in settings.checks] == [c["kind"] for c in DEFAULT_SUITE["checks"]]
    assert settings.log_level == "INFO"
    assert settings.output_dir == "."
    assert settings.validate() == []


def test_load_reads_env_and_yaml(tmp_path, clean_env):
    env = tmp_path / ".env"
    env.write_text(f"POLYPART_LOG_LEVEL=debug\nPOLYPART_OUTPUT_DIR={tmp_path}\n")
    suite = tmp_path / "verify.yaml"
    suite.write_text(
        "checks:\n"
        "  - kind: oracle\n"
        "    params:\n"
        "      n_max: 12\n"
        "  - kind: saddle\n"
        "    enabled: false\n"
    )
    settings = Settings.load(env_path=str(env), suite_path=str(suite))
    assert settings.log_level == "DEBUG"
    assert settings.output_dir == str(tmp_path)
    assert settings.get_check("ORACLE").params == {"n_max": 12}
    assert settings.get_check("saddle").enabled is False
    assert settings.get_check("vanishing") is None


def test_example_suite_matches_default():
    with open(EXAMPLE_SUITE) as f:
        assert yaml.safe_load(f) == DEFAULT_SUITE


def test_validate_reports_problems():
    settings = Settings(
        log_level="LOUD",
        output_dir=".",
        suite_path="verify.yaml",
        checks=[CheckConfig(kind="nonsense"), CheckConfig(kind="oracle", enabled=False)],
    )
    errors = settings.validate()
    assert len(errors) == 3
    assert any("POLYPART_LOG_LEVEL" in e for e in errors)
    assert any("Unknown check kind 'nonsense'" in e for e in errors)
    assert any("No enabled checks" in e for e in errors)


def test_check_config_from_dict():
    config = CheckConfig.from_dict({"kind": "complete_sum", "params": None})
    assert config == CheckConfig(kind="complete_sum", enabled=True, params={})


def test_run_config_from_namespace():
    args = argparse.Namespace(
        command="equi-ratio", poly="rat:0,0,1", N=5000, k=2, delta=1, a=None, env=None, suite=None
    )
    config = RunConfig.from_namespace(args)
    assert config.command == "equi-ratio"
    assert config.N == 5000
    assert config.a is None
    assert config.format == "csv"
