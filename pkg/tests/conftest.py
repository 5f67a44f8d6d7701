"""Shared polynomials for the test suite."""

import pytest

from src.config.settings import CheckConfig, Settings
from src.models.polynomial import parse_poly


@pytest.fixture
def linear():
    """f = x (ordinary partitions)."""
    return parse_poly("rat:0,1")


@pytest.fixture
def square():
    return parse_poly("rat:0,0,1")


@pytest.fixture
def odd():
    """f = 2x + 1; Π_f = 2."""
    return parse_poly("binom:1,2")


@pytest.fixture
def triangular():
    return parse_poly("rat:0,1/2,1/2")


@pytest.fixture
def six_x_five():
    """f = 6x + 5; Π_f = 6."""
    return parse_poly("binom:5,6")


@pytest.fixture
def small_settings(tmp_path):
    """Settings with a fast suite and output under tmp_path."""
    checks = [
        CheckConfig(kind="oracle", params={"n_max": 20}),
        CheckConfig(kind="residue_consistency", params={"n_max": 40, "k_max": 3}),
        CheckConfig(kind="vanishing", params={"n_max": 60, "k_max": 3}),
        CheckConfig(kind="filter_identity", params={"N": 60, "k_values": [2]}),
        CheckConfig(kind="complete_sum", params={"h_max": 20}),
        CheckConfig(kind="f_crosscheck", params={"draws": 5}),
        CheckConfig(kind="saddle", params={"n_values": [200, 400]}),
    ]
    return Settings(
        log_level="INFO",
        output_dir=str(tmp_path),
        suite_path=str(tmp_path / "verify.yaml"),
        checks=checks,
    )
