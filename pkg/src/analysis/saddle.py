"""Saddle-point solution and the leading asymptotic for p_f(n).

All quantities are carried in log space; exact counts enter through
math.log on Python integers, which handles thousands of digits.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.optimize import brentq

from src.errors import ComputationError, HypothesisError, SolverError
from src.models.polynomial import IntegerValuedPoly, parts_up_to, require_admissible
from src.models.tables import PartitionTable

logger = logging.getLogger(__name__)

CUTOFF = 40.0
BRACKET_EXPANSIONS = 5


@dataclass(frozen=True)
class SaddlePoint:
    """Solution x of n = Σ f(ℓ)/(e^{f(ℓ)x} - 1) with its derived quantities."""

    n: int
    x: float
    residual: float
    a2: float
    log_gf: float
    log_asym: float


@dataclass(frozen=True)
class AsymptoticRow:
    """One row of the ``asym`` table."""

    n: int
    x: float
    residual: float
    a2: float
    log_gf: float
    log_asym: float
    log_exact: float
    ratio: float


@lru_cache(maxsize=64)
def _part_values(f: IntegerValuedPoly, limit: int) -> np.ndarray:
    values = np.array([value for _, value in parts_up_to(f, limit)], dtype=float)
    values.setflags(write=False)
    return values


def _cache_limit(bound: float) -> int:
    """Round a part-size bound up to a power of two so nearby x share a cache entry."""
    return 1 << max(0, math.ceil(math.log2(max(bound, 1.0))))


def saddle_sum(f: IntegerValuedPoly, x: float, order: int, cutoff: float = CUTOFF) -> float:
    """Derivatives of log G_f(x) = -Σ log(1 - e^{-f(ℓ)x}).

    order 0: log G_f(x); order 1: Σ f/(e^{fx} - 1) (= -d/dx log G_f);
    order 2: Σ f²e^{fx}/(e^{fx} - 1)² (= d²/dx² log G_f). Terms with
    f(ℓ)x > cutoff are dropped; see :func:`tail_bound`.
    """
    if x <= 0:
        raise HypothesisError(f"saddle sums need x > 0, got {x}")
    if order not in (0, 1, 2):
        raise HypothesisError(f"order must be 0, 1 or 2, got {order}")
    values = _part_values(f, _cache_limit(cutoff / x))
    values = values[values * x <= cutoff]
    u = values * x
    if order == 0:
        return float(-np.sum(np.log1p(-np.exp(-u))))
    if order == 1:
        return float(np.sum(values / np.expm1(u)))
    return float(np.sum(values**2 * np.exp(u) / np.expm1(u) ** 2))


def tail_bound(f: IntegerValuedPoly, x: float, order: int, cutoff: float = CUTOFF) -> float:
    """Geometric bound on the terms :func:`saddle_sum` drops.

    Beyond the cutoff the part sizes grow by at least 1 per step, so the
    dropped terms are at most 2·T^order·e^{-cutoff}/(1 - e^{-x(1 - order/cutoff)})
    with T = cutoff/x.
    """
    T = cutoff / x
    return 2.0 * T**order * math.exp(-cutoff) / -math.expm1(-x * (1.0 - order / cutoff))


def leading_constant(f: IntegerValuedPoly) -> float:
    """c₁(f) = ζ(1+1/r)·Γ(1+1/r)/(r·a_r^{1/r}), so that n ~ c₁(f)·x^{-1-1/r}."""
    r = f.degree
    s = 1 + mpmath.mpf(1) / r
    a_r = mpmath.mpf(f.leading_coeff.numerator) / f.leading_coeff.denominator
    return float(mpmath.zeta(s) * mpmath.gamma(s) / (r * a_r ** (mpmath.mpf(1) / r)))


def leading_order_x(f: IntegerValuedPoly, n: int) -> float:
    """First approximation x ≈ (c₁(f)/n)^{r/(r+1)}."""
    if n < 1:
        raise HypothesisError(f"n must be positive, got {n}")
    r = f.degree
    return (leading_constant(f) / n) ** (r / (r + 1))


def leading_a2(f: IntegerValuedPoly, x: float) -> float:
    """Second derivative of the leading term: c₁(f)·(1 + 1/r)·x^{-2-1/r}."""
    r = f.degree
    return leading_constant(f) * (1 + 1 / r) * x ** (-2 - 1 / r)


def solve_saddle(f: IntegerValuedPoly, n: int, tol: float = 1e-9) -> SaddlePoint:
    """Solve n = saddle_sum(f, x, 1) for x > 0.

    Brackets around the leading-order guess, widening each failing side by
    10x up to five times, then refines with Brent's method.
    """
    if n < 1:
        raise HypothesisError(f"n must be positive, got {n}")
    require_admissible(f)

    def excess(x: float) -> float:
        return saddle_sum(f, x, 1) - n

    x0 = leading_order_x(f, n)
    lo, hi = x0 / 10, x0 * 10
    for _ in range(BRACKET_EXPANSIONS + 1):
        lo_ok, hi_ok = excess(lo) > 0, excess(hi) < 0
        if lo_ok and hi_ok:
            break
        if not lo_ok:
            lo /= 10
        if not hi_ok:
            hi *= 10
    else:
        raise SolverError(f"could not bracket the saddle point for n={n} ({f.canonical})")

    x = brentq(excess, lo, hi, xtol=x0 * 1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = abs(excess(x))
    if residual > tol * n:
        raise SolverError(f"saddle residual {residual:.3e} exceeds {tol:.1e}·n for n={n}")

    a2 = saddle_sum(f, x, 2)
    log_gf = saddle_sum(f, x, 0)
    log_asym = log_gf + n * x - 0.5 * math.log(2 * math.pi * a2)
    return SaddlePoint(n=n, x=x, residual=residual, a2=a2, log_gf=log_gf, log_asym=log_asym)


def asymptotic_log_pf(f: IntegerValuedPoly, n: int) -> float:
    """log of G_f(x)e^{nx}/√(2πA₂(n)) at the solved saddle point."""
    return solve_saddle(f, n).log_asym


def log_exact(value: int) -> float:
    """Natural log of an exact (possibly huge) count; -inf for 0."""
    return math.log(value) if value > 0 else float("-inf")


def hardy_ramanujan_log(n: int) -> float:
    """log of e^{π√(2n/3)}/(4√3·n), the classical leading term for p(n)."""
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * math.sqrt(3) * n)


def asymptotic_rows(
    f: IntegerValuedPoly, ns: list[int], table: PartitionTable
) -> list[AsymptoticRow]:
    """Saddle points for each n with the exact comparison; x must decrease in n."""
    rows = []
    previous_x = math.inf
    for n in sorted(ns):
        point = solve_saddle(f, n)
        if point.x >= previous_x:
            raise ComputationError(f"saddle point not decreasing at n={n}")
        previous_x = point.x
        exact = log_exact(table[n])
        rows.append(
            AsymptoticRow(
                n=n,
                x=point.x,
                residual=point.residual,
                a2=point.a2,
                log_gf=point.log_gf,
                log_asym=point.log_asym,
                log_exact=exact,
                ratio=math.exp(point.log_asym - exact),
            )
        )
        logger.debug(f"n={n}: x={point.x:.6g}, ratio={rows[-1].ratio:.6f}")
    return rows


def growth_profile(table: PartitionTable, ns: list[int]) -> list[tuple[int, float, float]]:
    """(n, log p_f(n)/n^{1/(r+1)}, change from the previous n) for the exponent check."""
    r = table.poly.degree
    profile = []
    previous = None
    for n in sorted(ns):
        scaled = log_exact(table[n]) / n ** (1 / (r + 1))
        profile.append((n, scaled, math.nan if previous is None else scaled - previous))
        previous = scaled
    return profile
