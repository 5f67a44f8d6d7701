"""Exception hierarchy shared by every module.

Each class carries the process exit code the CLI uses when the error
escapes a command: 2 for bad input, 3 for a failed computation or check.
"""


class PolypartError(Exception):
    """Base class for all polypart errors."""

    exit_code = 1


class ValidationError(PolypartError):
    """Input rejected before any mathematics ran."""

    exit_code = 2


class PolynomialParseError(ValidationError):
    """Polynomial text could not be parsed or is not integer-valued."""


class InadmissiblePolynomialError(ValidationError):
    """Polynomial violates the fixed-divisor, sign or positivity hypothesis."""


class HypothesisError(ValidationError):
    """Parameters violate a divisibility or range hypothesis (e.g. δ ∤ Π_f)."""


class TruncationError(ValidationError):
    """A truncated series would not be accurate for the requested (N, x)."""


class ComputationError(PolypartError):
    """A numerical routine failed or a mathematical check did not hold."""

    exit_code = 3


class SolverError(ComputationError):
    """Root bracketing or refinement failed."""


class CheckFailedError(ComputationError):
    """A hard verification check failed."""
