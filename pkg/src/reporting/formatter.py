"""Format command results as CSV, JSON or plain text."""

import csv
import io
import json
import math
from fractions import Fraction

from src.checks.base import CheckResult
from src.errors import PolypartError
from src.models.polynomial import (
    IntegerValuedPoly,
    admissibility_problems,
    f_hat_inverse,
    fixed_divisor,
    pi_f,
    prime_power_factors,
    valid_deltas,
)

SCHEMA = "polypart/1"


def format_cell(value) -> str:
    """Render one value deterministically.

    Args:
        value: int, Fraction, float, bool or None

    Returns:
        The cell text; floats use 12 significant digits, None is empty
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def format_csv(header: list[str], rows: list[tuple], summary: list[str] | None = None) -> str:
    """Format rows as CSV with an optional trailing block of ``# ...`` summary lines.

    Args:
        header: Column names
        rows: Data rows
        summary: Lines appended after the data, each prefixed with "# "

    Returns:
        CSV text ending in a newline
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    for line in summary or []:
        buffer.write(f"# {line}\n")
    return buffer.getvalue()


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def format_json(command: str, payload: dict) -> str:
    """Versioned JSON document with sorted keys."""
    document = {"schema": SCHEMA, "command": command, **_jsonable(payload)}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def format_table(header: list[str], rows: list[tuple], fmt: str, command: str, extra: dict | None = None) -> str:
    """CSV or JSON for a rectangular result; JSON keys rows by column name."""
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = [dict(zip(header, row)) for row in rows]
        return format_json(command, payload)
    summary = [f"{key}={format_cell(value)}" for key, value in (extra or {}).items()]
    return format_csv(header, rows, summary)


def format_check_summary(poly: IntegerValuedPoly, results: list[CheckResult]) -> str:
    """Format a verification run.

    Args:
        poly: Polynomial the suite ran on
        results: One result per enabled check

    Returns:
        One line per check plus a final PASS/FAIL line
    """
    lines = [f"verify {poly.canonical}"]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{status} {result.kind}: {result.detail}")
    failed = sum(1 for result in results if not result.passed)
    if failed:
        lines.append(f"FAIL {failed} of {len(results)} checks failed")
    else:
        lines.append(f"PASS all {len(results)} checks")
    return "\n".join(lines) + "\n"


def poly_info(f: IntegerValuedPoly) -> dict:
    """Structural facts about f: canonical forms, Π_f and admissible δ."""
    pi = pi_f(f)
    deltas = []
    for delta in valid_deltas(f):
        try:
            deltas.append({"delta": delta, "h_hat": f_hat_inverse(f, delta)})
        except PolypartError:
            deltas.append({"delta": delta, "h_hat": None})
    return {
        "canonical": f.canonical,
        "display": f.display,
        "degree": f.degree,
        "leading_coeff": str(f.leading_coeff),
        "f0": f.f0,
        "fixed_divisor": fixed_divisor(f),
        "pi_f": pi,
        "pi_f_factors": {str(p): s for p, s in sorted(prime_power_factors(pi).items())},
        "problems": admissibility_problems(f),
        "deltas": deltas,
    }


def format_poly_info(f: IntegerValuedPoly) -> str:
    """Plain-text rendering of :func:`poly_info`."""
    info = poly_info(f)
    factors = " · ".join(
        f"{p}^{s}" if s > 1 else p for p, s in info["pi_f_factors"].items()
    ) or "1"
    lines = [
        f"polynomial: {info['display']}",
        f"degree: {info['degree']}",
        f"leading coefficient: {info['leading_coeff']}",
        f"f(0): {info['f0']}",
        f"fixed divisor: {info['fixed_divisor']}",
        f"Pi_f: {info['pi_f']} = {factors}",
    ]
    if info["problems"]:
        lines.append("admissible: no")
        lines.extend(f"  - {problem}" for problem in info["problems"])
    else:
        lines.append("admissible: yes")
    lines.append("valid delta (h_hat):")
    for entry in info["deltas"]:
        h_hat = "n/a" if entry["h_hat"] is None else entry["h_hat"]
        lines.append(f"  {entry['delta']} ({h_hat})")
    return "\n".join(lines) + "\n"
