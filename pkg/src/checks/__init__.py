"""Verification checks run by the ``verify`` command."""

from src.checks.base import BaseCheck, CheckResult
from src.checks.suite import CHECKS, create_check, run_suite

__all__ = ["BaseCheck", "CheckResult", "CHECKS", "create_check", "run_suite"]
