"""Concrete verification checks and the suite runner."""

import logging

import numpy as np

from src.analysis.expsum import F_value, check_complete_sum_bound
from src.analysis.filter import verify_filter_identity
from src.analysis.saddle import solve_saddle
from src.checks.base import BaseCheck, CheckResult
from src.config.settings import CheckConfig
from src.counting.dp import build_parts_matrix, build_residue_table, build_table
from src.counting.oracle import brute_force_upto
from src.errors import PolypartError
from src.models.polynomial import IntegerValuedPoly, valid_deltas

logger = logging.getLogger(__name__)


class OracleCheck(BaseCheck):
    """DP tables against brute-force enumeration."""

    kind = "oracle"

    def run(self) -> CheckResult:
        n_max = self._param("n_max", 40)
        oracle = brute_force_upto(self.poly, n_max)
        table = self._maybe_tamper(list(build_table(self.poly, n_max, check_monotone=True).values))
        matrix = build_parts_matrix(self.poly, n_max, n_max)
        mismatches = 0
        for n, expected in enumerate(oracle):
            if table[n] != expected.total:
                mismatches += 1
            for m in range(n_max + 1):
                if matrix.entry(m, n) != expected.by_parts.get(m, 0):
                    mismatches += 1
        return self._result(mismatches == 0, f"n ≤ {n_max}: {mismatches} mismatches", mismatches)


class ResidueConsistencyCheck(BaseCheck):
    """Residue-tracking DP against m-summed p_f(m, n)."""

    kind = "residue_consistency"

    def run(self) -> CheckResult:
        n_max = self._param("n_max", 120)
        k_max = self._param("k_max", 4)
        matrix = build_parts_matrix(self.poly, n_max, n_max)
        mismatches = 0
        for K in range(1, k_max + 1):
            residue = build_residue_table(self.poly, K, n_max)
            for n in range(n_max + 1):
                for a in range(K):
                    if residue.entry(a, n) != matrix.residue_sum(a, K, n):
                        mismatches += 1
                if sum(residue.column(n)) != matrix.column_sum(n):
                    mismatches += 1
        return self._result(mismatches == 0, f"n ≤ {n_max}, K ≤ {k_max}: {mismatches} mismatches", mismatches)


class VanishingCheck(BaseCheck):
    """p_f(a,δk;n) = 0 off n ≡ a·f(0) (mod δ); p_f(a,δ;n) = p_f(n) on it."""

    kind = "vanishing"

    def run(self) -> CheckResult:
        n_max = self._param("n_max", 300)
        k_max = self._param("k_max", 4)
        totals = self._maybe_tamper(list(build_table(self.poly, n_max).values))
        f0 = self.poly.f0
        violations = 0
        for delta in valid_deltas(self.poly):
            for k in range(1, k_max + 1):
                residue = build_residue_table(self.poly, delta * k, n_max)
                for a in range(1, delta * k + 1):
                    for n in range(n_max + 1):
                        on_progression = (n - a * f0) % delta == 0
                        value = residue.entry(a, n)
                        if not on_progression and value != 0:
                            violations += 1
                        elif on_progression and k == 1 and value != totals[n]:
                            violations += 1
        deltas = ",".join(str(d) for d in valid_deltas(self.poly))
        return self._result(
            violations == 0, f"δ ∈ {{{deltas}}}, k ≤ {k_max}, n ≤ {n_max}: {violations} violations", violations
        )


class FilterIdentityCheck(BaseCheck):
    """Exact LHS against the twisted-series RHS."""

    kind = "filter_identity"

    def run(self) -> CheckResult:
        N = self._param("N", 200)
        a = self._param("a", 1)
        tolerance = self._param("tolerance", 1e-6)
        worst = 0.0
        passed = True
        for delta in valid_deltas(self.poly):
            for k in self._param("k_values", [2, 3]):
                report = verify_filter_identity(self.poly, a, k, delta, N)
                worst = max(worst, report.max_rel_error)
                passed = passed and report.passed(tolerance)
        return self._result(passed, f"N = {N}, a = {a}: max relative error {worst:.3e}", worst)


class CompleteSumCheck(BaseCheck):
    """|S/h|² ≤ 1 - (4/h²)sin²(π/h) for h ∤ Π_f."""

    kind = "complete_sum"

    def run(self) -> CheckResult:
        h_max = self._param("h_max", 60)
        report = check_complete_sum_bound(self.poly, h_max)
        margin = min((row.margin for row in report.rows), default=0.0)
        return self._result(
            report.passed,
            f"h ≤ {h_max}: {len(report.rows)} pairs, {len(report.violations)} violations, "
            f"{len(report.excluded)} moduli excluded, min margin {margin:.3e}",
            margin,
        )


class FCrossCheck(BaseCheck):
    """Series and product forms of F on deterministic random draws."""

    kind = "f_crosscheck"

    def run(self) -> CheckResult:
        draws = self._param("draws", 20)
        tolerance = self._param("tolerance", 1e-8)
        rng = np.random.default_rng(self._param("seed", 20))
        deltas = valid_deltas(self.poly)
        worst = 0.0
        for _ in range(draws):
            delta = int(rng.choice(deltas))
            k = int(rng.integers(2, 6))
            j = int(rng.integers(1, k))
            ell = int(rng.integers(0, delta))
            x = float(rng.uniform(0.05, 0.5))
            y = float(rng.uniform(-0.5, 0.5))
            series = F_value(self.poly, k, delta, j, ell, x, y, form="series")
            product = F_value(self.poly, k, delta, j, ell, x, y, form="product")
            worst = max(worst, abs(series - product) / max(1.0, abs(series)))
        return self._result(worst <= tolerance, f"{draws} draws: max discrepancy {worst:.3e}", worst)


class SaddleCheck(BaseCheck):
    """Residual ≤ tol·n and x decreasing along the schedule."""

    kind = "saddle"

    def run(self) -> CheckResult:
        tol = self._param("tol", 1e-9)
        previous = float("inf")
        worst = 0.0
        monotone = True
        for n in sorted(self._param("n_values", [500, 1000, 2000, 4000])):
            point = solve_saddle(self.poly, n, tol=tol)
            worst = max(worst, point.residual / n)
            monotone = monotone and point.x < previous
            previous = point.x
        return self._result(
            worst <= tol and monotone, f"max residual/n {worst:.3e}, x decreasing: {monotone}", worst
        )


CHECKS: dict[str, type[BaseCheck]] = {
    cls.kind: cls
    for cls in (
        OracleCheck,
        ResidueConsistencyCheck,
        VanishingCheck,
        FilterIdentityCheck,
        CompleteSumCheck,
        FCrossCheck,
        SaddleCheck,
    )
}


def create_check(config: CheckConfig, poly: IntegerValuedPoly, tamper: bool = False) -> BaseCheck:
    """Create the appropriate check for a config entry."""
    return CHECKS[config.kind](poly, config, tamper=tamper)


def run_suite(
    poly: IntegerValuedPoly, checks: list[CheckConfig], tamper: bool = False
) -> list[CheckResult]:
    """Run every enabled check in order; a check that raises counts as failed."""
    results = []
    for config in checks:
        if not config.enabled:
            continue
        logger.info(f"Running {config.kind} check for {poly.canonical}...")
        try:
            result = create_check(config, poly, tamper=tamper).run()
        except PolypartError as e:
            logger.error(f"Error in {config.kind} check: {e}")
            result = CheckResult(kind=config.kind, passed=False, detail=str(e))
        if not result.passed:
            logger.error(f"{config.kind} check failed: {result.detail}")
        results.append(result)
    return results
