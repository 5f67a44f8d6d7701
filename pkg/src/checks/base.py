"""Base check interface."""

from abc import ABC, abstractmethod
from dataclasses import dataclass

from src.config.settings import CheckConfig
from src.models.polynomial import IntegerValuedPoly


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    kind: str
    passed: bool
    detail: str
    metric: float | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "detail": self.detail,
            "metric": self.metric,
        }


class BaseCheck(ABC):
    """Abstract base class for all verification checks."""

    kind: str = ""

    def __init__(self, poly: IntegerValuedPoly, config: CheckConfig, tamper: bool = False):
        self.poly = poly
        self.config = config
        self.tamper = tamper

    @abstractmethod
    def run(self) -> CheckResult:
        """Run the check and return its result.

        Returns:
            CheckResult with pass/fail and a one-line detail.
        """
        pass

    def _param(self, name: str, default):
        return self.config.params.get(name, default)

    def _result(self, passed: bool, detail: str, metric: float | None = None) -> CheckResult:
        return CheckResult(kind=self.kind, passed=passed, detail=detail, metric=metric)

    def _maybe_tamper(self, values: list[int]) -> list[int]:
        """Fault injection: bump the last entry when tampering is requested."""
        if self.tamper and values:
            values = list(values)
            values[-1] += 1
        return values
