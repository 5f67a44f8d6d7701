"""Route CLI subcommands to the counting and analysis modules."""

import logging
from dataclasses import dataclass

from src.analysis.expsum import check_complete_sum_bound, f_scan_rows, min_F_scan, weyl_bound_scan
from src.analysis.filter import verify_filter_identity
from src.analysis.saddle import asymptotic_rows, growth_profile, hardy_ramanujan_log
from src.checks.suite import run_suite
from src.config.settings import RunConfig, Settings
from src.counting.dp import build_residue_table, build_table
from src.counting.ratios import equi_ratio, geometric_schedule
from src.errors import HypothesisError, ValidationError
from src.models.polynomial import IntegerValuedPoly, f_hat_inverse, parse_poly, require_admissible
from src.models.storage import TableStore
from src.reporting.formatter import (
    format_check_summary,
    format_json,
    format_poly_info,
    format_table,
    poly_info,
)

logger = logging.getLogger(__name__)

ADVISORY_N = 100_000

# Commands whose --k and --delta feed the residue modulus or the twist
TWISTED_COMMANDS = frozenset({"mod-table", "verify-filter", "equi-ratio", "f-scan", "verify"})


@dataclass(frozen=True)
class CommandOutput:
    text: str
    exit_code: int = 0


class CommandHandler:
    """Run one subcommand and return its rendered output."""

    HELP_TEXT = """Available commands:

- count        p_f(n) for n ≤ N
- mod-table    p_f(a, K; n) with K = δ·k
- verify-filter  both sides of the roots-of-unity filter identity
- equi-ratio   k·p_f(a,δk;n)/p_f(a,δ;n) on a geometric n-schedule
- asym         saddle point and leading asymptotic against exact p_f(n)
- weyl-check   complete-sum bound scan (and Weyl-bound crossover with --L)
- f-scan       F(y) over the scan grid with its minimum
- pi-f         structural facts about f
- verify       run the configured verification suite"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self._commands = {
            "count": self.count,
            "mod-table": self.mod_table,
            "verify-filter": self.verify_filter,
            "equi-ratio": self.equi_ratio,
            "asym": self.asym,
            "weyl-check": self.weyl_check,
            "f-scan": self.f_scan,
            "pi-f": self.pi_f,
            "verify": self.verify,
        }

    def handle(self, config: RunConfig) -> CommandOutput:
        """Parse the polynomial and dispatch.

        Args:
            config: The parsed invocation

        Returns:
            Output text and the exit code it implies
        """
        logger.info(f"Handling command: {config.command} {config.poly}")
        command = self._commands.get(config.command)
        if command is None:
            raise ValidationError(f"Unknown command: '{config.command}'\n\n{self.HELP_TEXT}")
        f = parse_poly(config.poly)
        if config.command in TWISTED_COMMANDS:
            self._check_twist_parameters(f, config)
        return command(f, config)

    @staticmethod
    def _check_twist_parameters(f: IntegerValuedPoly, config: RunConfig) -> None:
        """Reject k < 1 and any δ that does not divide Π_f before computing anything."""
        if config.k < 1:
            raise HypothesisError(f"--k must be positive, got {config.k}")
        f_hat_inverse(f, config.delta)

    @staticmethod
    def _listing(values: list[int], fmt: str) -> str | list[int]:
        return values if fmt == "json" else " ".join(str(v) for v in values)

    @staticmethod
    def _require_N(config: RunConfig) -> int:
        if config.N is None or config.N < 1:
            raise ValidationError(f"{config.command} needs --N ≥ 1")
        if config.N > ADVISORY_N:
            logger.warning(f"N={config.N} is above {ADVISORY_N}; exact tables may take a long time")
        return config.N

    def count(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        N = self._require_N(config)
        table = build_table(f, N)
        if config.store:
            TableStore(self.settings.output_dir).save(table, config.store)
        rows = [(n, value) for n, value in enumerate(table.values)]
        return CommandOutput(format_table(["n", "p"], rows, config.format, config.command, {"poly": f.canonical}))

    def mod_table(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        N = self._require_N(config)
        K = config.k * config.delta
        table = build_residue_table(f, K, N)
        if config.store:
            TableStore(self.settings.output_dir).save(table, config.store)
        header = ["n"] + [f"a={a}" for a in range(K)]
        rows = [(n, *table.column(n)) for n in range(N + 1)]
        extra = {"poly": f.canonical, "K": K}
        return CommandOutput(format_table(header, rows, config.format, config.command, extra))

    def verify_filter(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        N = self._require_N(config)
        rows = []
        worst = 0.0
        passed = True
        off_progression = 0
        for a in config.a or [1]:
            report = verify_filter_identity(f, a, config.k, config.delta, N)
            worst = max(worst, report.max_rel_error)
            off_progression += report.off_progression_nonzero
            passed = passed and report.passed()
            rows.extend(
                (a, row.n, row.lhs, row.rhs.real, row.rhs.imag, row.abs_error, row.rel_error)
                for row in report.rows
            )
        extra = {
            "poly": f.canonical,
            "k": config.k,
            "delta": config.delta,
            "max_rel_error": worst,
            "off_progression_nonzero": off_progression,
            "passed": passed,
        }
        header = ["a", "n", "lhs", "rhs_re", "rhs_im", "abs_error", "rel_error"]
        text = format_table(header, rows, config.format, config.command, extra)
        return CommandOutput(text, 0 if passed else 3)

    def equi_ratio(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        N = self._require_N(config)
        report = equi_ratio(f, config.k, config.delta, N, a_values=config.a)
        rows = [
            (
                row.n,
                row.a,
                row.ratio,
                report.max_deviation(row.n),
                row.zero_support,
                report.observed_rate(row.n),
            )
            for row in report.rows
        ]
        extra = {"poly": f.canonical, "k": config.k, "delta": config.delta}
        header = ["n", "a", "ratio", "max_deviation", "zero_support", "observed_rate"]
        return CommandOutput(format_table(header, rows, config.format, config.command, extra))

    def asym(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        N = self._require_N(config)
        ns = geometric_schedule(N)
        table = build_table(f, N)
        growth = {n: (scaled, change) for n, scaled, change in growth_profile(table, ns)}
        classical = f.canonical == "binom:0,1"
        rows = [
            (
                row.n,
                row.x,
                row.residual,
                row.a2,
                row.log_gf,
                row.log_asym,
                row.log_exact,
                row.ratio,
                hardy_ramanujan_log(row.n) if classical else None,
                *growth[row.n],
            )
            for row in asymptotic_rows(f, ns, table)
        ]
        header = [
            "n", "x", "residual", "a2", "log_gf", "log_asym", "log_exact", "ratio",
            "log_hardy_ramanujan", "scaled_log", "scaled_log_change",
        ]
        return CommandOutput(format_table(header, rows, config.format, config.command, {"poly": f.canonical}))

    def weyl_check(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        h_max = config.h_max or 60
        if h_max < 2:
            raise HypothesisError(f"--h-max must be at least 2, got {h_max}")
        if config.L:
            report = weyl_bound_scan(f, config.L, h_max)
            rows = [(row.h, row.d, row.modulus, row.bound, row.passed) for row in report.rows]
            extra = {"poly": f.canonical, "L": config.L, "crossover": report.crossover}
            header = ["h", "d", "modulus", "bound", "passed"]
            return CommandOutput(format_table(header, rows, config.format, config.command, extra))

        report = check_complete_sum_bound(f, h_max)
        rows = [(row.h, row.d, row.modulus_sq, row.bound, row.margin) for row in report.rows]
        extra = {
            "poly": f.canonical,
            "skipped_h": self._listing(report.skipped, config.format),
            "excluded_h": self._listing(report.excluded, config.format),
            "violations": len(report.violations),
        }
        header = ["h", "d", "modulus_sq", "bound", "margin"]
        text = format_table(header, rows, config.format, config.command, extra)
        return CommandOutput(text, 0 if report.passed else 3)

    def f_scan(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        if config.x is None:
            raise ValidationError("f-scan needs --x")
        require_admissible(f)
        best = min_F_scan(f, config.k, config.delta, config.x, config.grid)
        rows = f_scan_rows(f, config.k, config.delta, config.x, config.grid)
        extra = {
            "poly": f.canonical,
            "min_F": best.min_value,
            "min_y": best.y,
            "min_j": best.j,
            "min_ell": best.ell,
            "ratio": best.ratio,
        }
        return CommandOutput(format_table(["y", "j", "ell", "F"], rows, config.format, config.command, extra))

    def pi_f(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        if config.format == "json":
            return CommandOutput(format_json(config.command, poly_info(f)))
        return CommandOutput(format_poly_info(f))

    def verify(self, f: IntegerValuedPoly, config: RunConfig) -> CommandOutput:
        errors = self.settings.validate()
        if errors:
            raise ValidationError("; ".join(errors))
        require_admissible(f)
        results = run_suite(f, self.settings.checks, tamper=config.tamper)
        passed = all(result.passed for result in results)
        if config.format == "json":
            payload = {"poly": f.canonical, "passed": passed, "checks": [r.to_dict() for r in results]}
            text = format_json(config.command, payload)
        else:
            text = format_check_summary(f, results)
        return CommandOutput(text, 0 if passed else 3)
