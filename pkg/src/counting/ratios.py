"""Equidistribution ratios k·p_f(a,δk;n)/p_f(a,δ;n) over a geometric n-schedule."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from src.counting.dp import build_residue_table
from src.errors import HypothesisError
from src.models.polynomial import IntegerValuedPoly, check_k_hypothesis, f_hat_inverse, pi_f
from src.models.tables import ResidueTable

logger = logging.getLogger(__name__)

SCHEDULE_START = 500


@dataclass(frozen=True)
class RatioRow:
    n: int
    a: int
    ratio: float | None  # None off the progression n ≡ a·f(0) (mod δ)

    @property
    def zero_support(self) -> bool:
        return self.ratio is None

    @property
    def deviation(self) -> float | None:
        return None if self.ratio is None else abs(self.ratio - 1.0)


@dataclass
class EquiRatioReport:
    poly: IntegerValuedPoly
    k: int
    delta: int
    N: int
    rows: list[RatioRow] = field(default_factory=list)

    def max_deviation(self, n: int) -> float | None:
        """max over supported a of |ratio - 1| at n; None when no a is supported."""
        deviations = [row.deviation for row in self.rows if row.n == n and not row.zero_support]
        return max(deviations) if deviations else None

    def observed_rate(self, n: int) -> float | None:
        """-k²·log(max deviation)/n^{1/(r+1)}; the deviation should decay like exp(-c·n^{1/(r+1)}/k²)."""
        deviation = self.max_deviation(n)
        if not deviation:
            return None
        return -self.k**2 * math.log(deviation) / n ** (1.0 / (self.poly.degree + 1))

    def deviations(self) -> list[tuple[int, float | None]]:
        ns = sorted({row.n for row in self.rows})
        return [(n, self.max_deviation(n)) for n in ns]


def geometric_schedule(N: int, start: int = SCHEDULE_START) -> list[int]:
    """start, 2·start, 4·start, ... below N, then N itself."""
    if N < 1:
        raise HypothesisError(f"N must be positive, got {N}")
    schedule = []
    n = start
    while n < N:
        schedule.append(n)
        n *= 2
    schedule.append(N)
    return schedule


def progression_ratio(fine: ResidueTable, coarse: ResidueTable, a: int, k: int, n: int) -> float | None:
    """k·p_f(a, δk; n) / p_f(a, δ; n), or None when the denominator vanishes."""
    denominator = coarse.entry(a, n)
    if denominator == 0:
        return None
    return float(Fraction(k * fine.entry(a, n), denominator))


def k_range_limit(f: IntegerValuedPoly, n: int) -> float:
    """n^{1/(2+2r)}/√log n, the size k should stay well below."""
    return n ** (1.0 / (2 + 2 * f.degree)) / math.sqrt(math.log(n))


def validate_equi_ratio(f: IntegerValuedPoly, k: int, delta: int) -> None:
    """Raise HypothesisError unless δ | Π_f and no prime p | k has pδ | Π_f."""
    if k < 1:
        raise HypothesisError(f"k must be positive, got {k}")
    f_hat_inverse(f, delta)
    offending = check_k_hypothesis(f, delta, k)
    if offending:
        primes = ", ".join(str(p) for p in offending)
        raise HypothesisError(
            f"prime p | k with p·δ | Π_f = {pi_f(f)} (p = {primes}); the ratio need not tend to 1"
        )


def equi_ratio(
    f: IntegerValuedPoly,
    k: int,
    delta: int,
    N: int,
    a_values: list[int] | None = None,
    schedule: list[int] | None = None,
) -> EquiRatioReport:
    """Ratios on the schedule for each residue a (all of 0..δk-1 by default)."""
    validate_equi_ratio(f, k, delta)
    schedule = schedule or geometric_schedule(N)
    N = max(schedule)
    if N > 1 and k > k_range_limit(f, N):
        logger.warning(
            f"k={k} exceeds n^(1/(2+2r))/sqrt(log n) = {k_range_limit(f, N):.3f} at n={N}; "
            "ratios are exact but need not approach 1"
        )
    if a_values is None:
        a_values = list(range(delta * k))

    fine = build_residue_table(f, delta * k, N)
    coarse = build_residue_table(f, delta, N) if delta > 1 else None
    if coarse is None:
        totals = fine.totals()
        coarse = ResidueTable(poly=f, modulus=1, N=N, entries=(totals.values,))

    report = EquiRatioReport(poly=f, k=k, delta=delta, N=N)
    for n in schedule:
        for a in a_values:
            on_progression = (n - a * f.f0) % delta == 0
            ratio = progression_ratio(fine, coarse, a, k, n) if on_progression else None
            report.rows.append(RatioRow(n=n, a=a, ratio=ratio))
        logger.info(f"n={n}: max deviation {report.max_deviation(n)}")
    return report
