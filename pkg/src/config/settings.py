"""Settings management - loads from .env and the verification-suite YAML."""

import argparse
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import yaml
from dotenv import load_dotenv

CHECK_KINDS = (
    "oracle",
    "residue_consistency",
    "vanishing",
    "filter_identity",
    "complete_sum",
    "f_crosscheck",
    "saddle",
)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# Used when no suite file exists; mirrors config/verify.example.yaml.
DEFAULT_SUITE = {
    "checks": [
        {"kind": "oracle", "params": {"n_max": 40}},
        {"kind": "residue_consistency", "params": {"n_max": 120, "k_max": 4}},
        {"kind": "vanishing", "params": {"n_max": 300, "k_max": 4}},
        {"kind": "filter_identity", "params": {"N": 200, "a": 1, "k_values": [2, 3], "tolerance": 1e-6}},
        {"kind": "complete_sum", "params": {"h_max": 60}},
        {"kind": "f_crosscheck", "params": {"draws": 20, "seed": 20, "tolerance": 1e-8}},
        {"kind": "saddle", "params": {"n_values": [500, 1000, 2000, 4000], "tol": 1e-9}},
    ]
}


@dataclass
class CheckConfig:
    """Configuration for a single verification check."""

    kind: str
    enabled: bool = True
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "CheckConfig":
        return cls(
            kind=data["kind"],
            enabled=data.get("enabled", True),
            params=data.get("params", {}) or {},
        )


@dataclass
class Settings:
    """Application settings loaded from environment and config files."""

    log_level: str
    output_dir: str
    suite_path: str
    checks: list[CheckConfig] = field(default_factory=list)

    @classmethod
    def load(cls, env_path: str | None = None, suite_path: str | None = None) -> "Settings":
        """Load settings from .env file and the suite YAML."""
        if env_path:
            load_dotenv(env_path)
        else:
            load_dotenv()

        suite_file = Path(suite_path or os.getenv("POLYPART_SUITE", "config/verify.yaml"))
        suite_data = DEFAULT_SUITE
        if suite_file.exists():
            with open(suite_file) as f:
                suite_data = yaml.safe_load(f) or {}
        checks = [CheckConfig.from_dict(c) for c in suite_data.get("checks", [])]

        return cls(
            log_level=os.getenv("POLYPART_LOG_LEVEL", "INFO").upper(),
            output_dir=os.getenv("POLYPART_OUTPUT_DIR", "."),
            suite_path=str(suite_file),
            checks=checks,
        )

    def get_check(self, kind: str) -> CheckConfig | None:
        """Get a check config by kind (case-insensitive)."""
        kind_lower = kind.lower()
        for check in self.checks:
            if check.kind.lower() == kind_lower:
                return check
        return None

    def validate(self) -> list[str]:
        """Validate settings and return list of errors."""
        errors = []
        if self.log_level not in LOG_LEVELS:
            errors.append(f"POLYPART_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")
        for check in self.checks:
            if check.kind not in CHECK_KINDS:
                errors.append(f"Unknown check kind '{check.kind}' in {self.suite_path}")
        if not any(check.enabled and check.kind in CHECK_KINDS for check in self.checks):
            errors.append(f"No enabled checks in {self.suite_path}")
        return errors


@dataclass
class RunConfig:
    """One CLI invocation; identical configs produce byte-identical output."""

    command: str
    poly: str
    N: int | None = None
    L: int | None = None
    h_max: int | None = None
    k: int = 2
    delta: int = 1
    a: list[int] | None = None
    x: float | None = None
    grid: int = 1000
    out: str | None = None
    format: Literal["csv", "json"] = "csv"
    store: str | None = None
    tamper: bool = False

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        return cls(**values)
