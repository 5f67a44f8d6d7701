"""Exponential sums over polynomial values and the functionals built from them.

Bounds with explicit constants (the complete-sum inequality) are checked
as hard pass/fail. Lower bounds whose constants are not effective are
reported as ratios against their predicted scale.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp

from src.analysis.phases import TWO_PI, reduced_phases, unit_circle
from src.analysis.saddle import log_exact, saddle_sum
from src.counting.dp import build_residue_table
from src.errors import HypothesisError, TruncationError
from src.models.polynomial import IntegerValuedPoly, parts_up_to, pi_f, require_admissible

logger = logging.getLogger(__name__)

CUTOFF = 40.0
FAREY_ORDER = 20
_GRID_CHUNK = 256


@dataclass(frozen=True)
class WeylReport:
    poly: IntegerValuedPoly
    y: float | Fraction
    L: int
    value: complex
    normalized_modulus: float
    approx: tuple[int, int] | None = None


@dataclass(frozen=True)
class CompleteSumRow:
    h: int
    d: int
    modulus_sq: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.modulus_sq

    @property
    def passed(self) -> bool:
        return self.modulus_sq <= self.bound + 1e-12


@dataclass
class CompleteSumReport:
    poly: IntegerValuedPoly
    h_max: int
    rows: list[CompleteSumRow] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)
    excluded: list[int] = field(default_factory=list)

    @property
    def violations(self) -> list[CompleteSumRow]:
        return [row for row in self.rows if not row.passed]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Sin2Integral:
    value: float
    ratio: float  # value·a²/L


@dataclass(frozen=True)
class FScan:
    min_value: float
    y: float
    j: int
    ell: int
    scale: float  # k^-2·x^(-1/r)

    @property
    def ratio(self) -> float:
        return self.min_value / self.scale


@dataclass(frozen=True)
class MeanSquare:
    """E_{f,k,δ,a}(x) and the comparison G_f(x)²·exp(-2k⁻²x^{-1/r}), in logs."""

    log_value: float
    log_g_squared: float
    log_comparison: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @property
    def contraction(self) -> float:
        """E / G_f(x)²."""
        return math.exp(self.log_value - self.log_g_squared)


@dataclass(frozen=True)
class DefectScan:
    min_value: float
    y: float
    j: int
    ell: int
    L: int
    k: int

    @property
    def ratio(self) -> float:
        """min / (k⁻²L)."""
        return self.min_value * self.k**2 / self.L


@dataclass(frozen=True)
class WeylBoundRow:
    h: int
    d: int
    modulus: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.modulus <= self.bound


@dataclass
class WeylBoundReport:
    poly: IntegerValuedPoly
    L: int
    rows: list[WeylBoundRow] = field(default_factory=list)

    @property
    def crossover(self) -> int | None:
        """Smallest h0 such that every scanned h ≥ h0 satisfies the bound."""
        failing = [row.h for row in self.rows if not row.passed]
        if not failing:
            return min((row.h for row in self.rows), default=None)
        last = max(failing)
        later = [row.h for row in self.rows if row.h > last]
        return min(later) if later else None


def _check_twist(f: IntegerValuedPoly, k: int, delta: int, j: int, ell: int) -> None:
    if delta < 1 or pi_f(f) % delta:
        raise HypothesisError(f"δ = {delta} does not divide Π_f = {pi_f(f)}")
    if not 1 <= j < k:
        raise HypothesisError(f"need 1 ≤ j < k, got j={j}, k={k}")
    if not 0 <= ell < delta:
        raise HypothesisError(f"need 0 ≤ ℓ < δ, got ℓ={ell}, δ={delta}")


def weyl_sum(f: IntegerValuedPoly, y: float | Fraction, L: int) -> complex:
    """Σ_{1≤n≤L} e(f(n)·y) with f(n)·y reduced mod 1 exactly."""
    if L < 1:
        raise HypothesisError(f"L must be at least 1, got {L}")
    phases = reduced_phases(f.values(1, L + 1), y)
    return complex(np.sum(unit_circle(phases)))


def weyl_report(
    f: IntegerValuedPoly, y: float | Fraction, L: int, approx: tuple[int, int] | None = None
) -> WeylReport:
    value = weyl_sum(f, y, L)
    return WeylReport(poly=f, y=y, L=L, value=value, normalized_modulus=abs(value) / L, approx=approx)


def complete_sum(f: IntegerValuedPoly, d: int, h: int) -> complex:
    """(1/h)·Σ_{1≤j≤h} e(f(j)·d/h)."""
    if h < 1 or math.gcd(d, h) != 1:
        raise HypothesisError(f"need h ≥ 1 and gcd(d, h) = 1, got d={d}, h={h}")
    residues = np.array([(value * d) % h for value in f.values(1, h + 1)], dtype=float)
    return complex(np.mean(unit_circle(residues / h)))


def complete_sum_bound(h: int) -> float:
    """1 - (4/h²)·sin²(π/h)."""
    return 1.0 - 4.0 / h**2 * math.sin(math.pi / h) ** 2


def _bound_applies(values: list[int], f0: int, h: int) -> bool:
    if (values[h - 1] - f0) % h:
        return False
    return any((v - f0) % h for v in values[: h - 1])


def check_complete_sum_bound(f: IntegerValuedPoly, h_max: int) -> CompleteSumReport:
    """Scan 2 ≤ h ≤ h_max with h ∤ Π_f and every d coprime to h.

    The bound is derived for moduli with f(h) ≡ f(0) (mod h) and some
    0 < j < h with f(j) ≢ f(0) (mod h). Every h ∤ Π_f is still scanned;
    only a modulus that violates the bound and lacks that structure
    (h = 2 for x(x+1)/2) goes to ``excluded`` instead of ``violations``.
    """
    require_admissible(f)
    pi = pi_f(f)
    values = list(f.values(1, h_max + 1))
    report = CompleteSumReport(poly=f, h_max=h_max)
    for h in range(2, h_max + 1):
        if pi % h == 0:
            report.skipped.append(h)
            continue
        residues = np.array([v % h for v in values[:h]], dtype=np.int64)
        bound = complete_sum_bound(h)
        rows = []
        for d in range(1, h):
            if math.gcd(d, h) != 1:
                continue
            mean = np.mean(unit_circle(((residues * d) % h) / h))
            rows.append(CompleteSumRow(h=h, d=d, modulus_sq=float(abs(mean) ** 2), bound=bound))
        if not all(row.passed for row in rows) and not _bound_applies(values, f.f0, h):
            report.excluded.append(h)
            continue
        report.rows.extend(rows)
    if report.violations:
        logger.error(f"Complete-sum bound violated {len(report.violations)} times for {f.canonical}")
    return report


def sin2_integral(
    f: IntegerValuedPoly, a: int, b: int, y: float, L: float, rel_tol: float = 1e-6
) -> Sin2Integral:
    """∫_0^L sin²(π(b/a - f(u)y)) du by composite midpoint, doubling panels until stable."""
    if not 1 <= b < a:
        raise HypothesisError(f"need 1 ≤ b < a, got a={a}, b={b}")
    if L < 1:
        raise HypothesisError(f"L must be at least 1, got {L}")

    def midpoint(panels: int) -> float:
        width = L / panels
        u = (np.arange(panels) + 0.5) * width
        phase = b / a - np.mod(f.real_values(u) * y, 1.0)
        return float(np.sum(np.sin(math.pi * phase) ** 2) * width)

    panels = 1024
    previous = midpoint(panels)
    while panels < 1 << 22:
        panels *= 2
        current = midpoint(panels)
        if abs(current - previous) <= rel_tol * max(abs(current), 1e-300):
            previous = current
            break
        previous = current
    return Sin2Integral(value=previous, ratio=previous * a**2 / L)


def _theta(f: IntegerValuedPoly, k: int, delta: int, j: int, ell: int, values, y) -> np.ndarray:
    """(j + kℓ)/(δk) - f(n)·y mod 1 for the given exact values."""
    base = float(Fraction(j + k * ell, delta * k) % 1)
    return np.mod(base - reduced_phases(values, y), 1.0)


def F_value(
    f: IntegerValuedPoly,
    k: int,
    delta: int,
    j: int,
    ell: int,
    x: float,
    y: float | Fraction,
    form: str = "series",
    cutoff: float = CUTOFF,
) -> float:
    """F_{f,k,δ,j,ℓ}(x, y) = -log|G_f(ζ_{δk}^j, ζ_δ^ℓ e^{-x-2πiy})/G_f(x)|².

    ``form="series"`` sums 2Σ_{n,c}(e^{-f(n)cx}/c)·(1 - cos 2πcθ_n);
    ``form="product"`` sums 2Σ_n[log|1 - e^{-f(n)x}e(θ_n)| - log(1 - e^{-f(n)x})].
    Both drop parts with f(n)x > cutoff.
    """
    if x <= 0:
        raise HypothesisError(f"x must be positive, got {x}")
    _check_twist(f, k, delta, j, ell)
    exact = [value for _, value in parts_up_to(f, math.floor(cutoff / x))]
    if not exact:
        return 0.0
    theta = _theta(f, k, delta, j, ell, exact, y)
    values = np.array(exact, dtype=float)
    if form == "product":
        q = np.exp(-values * x)
        return float(2.0 * np.sum(np.log(np.abs(1.0 - q * unit_circle(theta))) - np.log1p(-q)))
    if form != "series":
        raise HypothesisError(f"unknown form {form!r}")
    total = 0.0
    c = 1
    while True:
        mask = values * (c * x) <= cutoff
        if not mask.any():
            break
        u = values[mask] * (c * x)
        total += float(np.sum(np.exp(-u) / c * (1.0 - np.cos(TWO_PI * c * theta[mask]))))
        c += 1
    return 2.0 * total


def farey_points(order: int = FAREY_ORDER) -> np.ndarray:
    """Rationals d/h in [-1/2, 1/2] with h ≤ order."""
    points = {Fraction(d, h) for h in range(1, order + 1) for d in range(-(h // 2), h // 2 + 1)}
    return np.array(sorted(float(p) for p in points))


def _scan_grid(grid_size: int) -> np.ndarray:
    return np.unique(np.concatenate([np.linspace(-0.5, 0.5, grid_size), farey_points()]))


def _f_on_grid(values: np.ndarray, base: float, x: float, ys: np.ndarray) -> np.ndarray:
    """Product form of F over many y at once (float phases; f(n)·|y| stays small here)."""
    q = np.exp(-values * x)[:, None]
    log_norm = np.log1p(-q)
    out = np.empty(len(ys))
    for start in range(0, len(ys), _GRID_CHUNK):
        chunk = ys[start : start + _GRID_CHUNK]
        theta = np.mod(base - np.outer(values, chunk), 1.0)
        terms = np.log(np.abs(1.0 - q * unit_circle(theta))) - log_norm
        out[start : start + len(chunk)] = 2.0 * terms.sum(axis=0)
    return out


def f_scan_rows(
    f: IntegerValuedPoly, k: int, delta: int, x: float, grid_size: int = 1000
) -> list[tuple[float, int, int, float]]:
    """(y, j, ℓ, F) over the scan grid for every 1 ≤ j < k, 0 ≤ ℓ < δ."""
    values = np.array([v for _, v in parts_up_to(f, math.floor(CUTOFF / x))], dtype=float)
    ys = _scan_grid(grid_size)
    rows = []
    for j in range(1, k):
        for ell in range(delta):
            _check_twist(f, k, delta, j, ell)
            base = float(Fraction(j + k * ell, delta * k) % 1)
            for y, value in zip(ys, _f_on_grid(values, base, x, ys)):
                rows.append((float(y), j, ell, float(value)))
    return rows


def min_F_scan(f: IntegerValuedPoly, k: int, delta: int, x: float, grid_size: int = 1000) -> FScan:
    """Minimize F over y ∈ [-1/2, 1/2], 1 ≤ j < k, 0 ≤ ℓ < δ.

    Uniform grid plus Farey points d/h (h ≤ 20), then a bounded local
    refinement around the best grid point.
    """
    if not 0 < x <= 0.5:
        raise HypothesisError(f"min_F_scan expects 0 < x ≤ 0.5, got {x}")
    if grid_size < 1000:
        raise HypothesisError(f"grid_size must be at least 1000, got {grid_size}")
    if k < 2:
        raise HypothesisError("min_F_scan needs k ≥ 2 (the j-range 1 ≤ j < k is empty)")
    values = np.array([v for _, v in parts_up_to(f, math.floor(CUTOFF / x))], dtype=float)
    ys = _scan_grid(grid_size)
    step = 1.0 / (grid_size - 1)
    best: FScan | None = None
    scale = k**-2 * x ** (-1.0 / f.degree)
    for j in range(1, k):
        for ell in range(delta):
            _check_twist(f, k, delta, j, ell)
            base = float(Fraction(j + k * ell, delta * k) % 1)
            grid = _f_on_grid(values, base, x, ys)
            index = int(np.argmin(grid))
            y0, value = float(ys[index]), float(grid[index])
            local = minimize_scalar(
                lambda y: float(_f_on_grid(values, base, x, np.array([y]))[0]),
                bounds=(max(-0.5, y0 - step), min(0.5, y0 + step)),
                method="bounded",
                options={"xatol": 1e-10},
            )
            if local.success and local.fun < value:
                y0, value = float(local.x), float(local.fun)
            if best is None or value < best.min_value:
                best = FScan(min_value=value, y=y0, j=j, ell=ell, scale=scale)
    logger.info(f"min F for {f.canonical} (k={k}, δ={delta}, x={x}): {best.min_value:.6g}, ratio {best.ratio:.4f}")
    return best


def mean_square_E(
    f: IntegerValuedPoly,
    k: int,
    delta: int,
    a: int,
    x: float,
    N: int,
    tail_tolerance: float = 1e-30,
) -> MeanSquare:
    """Σ_{n ≤ N, n ≡ a·f(0) (δ)} |p_f(a,δk;n) - p_f(n)/k|²·e^{-2nx} from exact tables.

    Rejects (N, x) unless Σ_{n>N} p_f(n)e^{-nx} ≤ e^{-Nx/2}·G_f(x/2) puts the
    dropped part of E below tail_tolerance·G_f(x)².
    """
    require_admissible(f)
    if delta < 1 or pi_f(f) % delta:
        raise HypothesisError(f"δ = {delta} does not divide Π_f = {pi_f(f)}")
    if k < 1 or x <= 0:
        raise HypothesisError(f"need k ≥ 1 and x > 0, got k={k}, x={x}")

    log_g = saddle_sum(f, x, 0)
    log_tail = -N * x / 2 + saddle_sum(f, x / 2, 0)
    if 2 * log_tail > 2 * log_g + math.log(tail_tolerance):
        raise TruncationError(f"N={N} is too small for x={x}: tail term is not negligible")

    residue = build_residue_table(f, delta * k, N)
    totals = residue.totals()

    log_terms = []
    for n in range(N + 1):
        if (n - a * f.f0) % delta:
            continue
        diff = Fraction(k * residue.entry(a, n) - totals[n], k)
        if diff == 0:
            continue
        log_terms.append(2 * (log_exact(abs(diff.numerator)) - math.log(diff.denominator)) - 2 * n * x)
    log_value = float(logsumexp(log_terms)) if log_terms else float("-inf")
    log_comparison = 2 * log_g - 2 * k**-2 * x ** (-1.0 / f.degree)
    return MeanSquare(log_value=log_value, log_g_squared=2 * log_g, log_comparison=log_comparison)


def defect_sum(
    f: IntegerValuedPoly, k: int, delta: int, j: int, ell: int, y: float | Fraction, L: int
) -> float:
    """Re Σ_{1≤n≤L} [1 - e((kℓ + j)/(δk) - f(n)y)]."""
    _check_twist(f, k, delta, j, ell)
    theta = _theta(f, k, delta, j, ell, f.values(1, L + 1), y)
    return float(np.sum(1.0 - np.cos(TWO_PI * theta)))


def min_defect_scan(
    f: IntegerValuedPoly, k: int, delta: int, L: int, grid_size: int = 1000
) -> DefectScan:
    """Minimum of :func:`defect_sum` over the scan grid and all (j, ℓ)."""
    values = np.array(list(f.values(1, L + 1)), dtype=float)
    ys = _scan_grid(grid_size)
    best: DefectScan | None = None
    for j in range(1, k):
        for ell in range(delta):
            _check_twist(f, k, delta, j, ell)
            base = float(Fraction(j + k * ell, delta * k) % 1)
            sums = np.empty(len(ys))
            for start in range(0, len(ys), _GRID_CHUNK):
                chunk = ys[start : start + _GRID_CHUNK]
                theta = np.mod(base - np.mod(np.outer(values, chunk), 1.0), 1.0)
                sums[start : start + len(chunk)] = np.sum(1.0 - np.cos(TWO_PI * theta), axis=0)
            index = int(np.argmin(sums))
            if best is None or sums[index] < best.min_value:
                best = DefectScan(min_value=float(sums[index]), y=float(ys[index]), j=j, ell=ell, L=L, k=k)
    return best


def weyl_bound(f: IntegerValuedPoly, L: int, h: int) -> float:
    """L^{1-2^{-r-1}} + L·h^{-2^{-r-1}}."""
    exponent = 2.0 ** (-f.degree - 1)
    return L ** (1 - exponent) + L * h ** (-exponent)


def weyl_bound_scan(f: IntegerValuedPoly, L: int, h_max: int) -> WeylBoundReport:
    """|weyl_sum(d/h)| against the Weyl-type bound for 1 ≤ h ≤ h_max (data only)."""
    values = list(f.values(1, L + 1))
    report = WeylBoundReport(poly=f, L=L)
    for h in range(1, h_max + 1):
        residues = np.array([v % h for v in values], dtype=np.int64)
        bound = weyl_bound(f, L, h)
        for d in range(h):
            if math.gcd(d, h) != 1:
                continue
            total = np.sum(unit_circle(((residues * d) % h) / h))
            report.rows.append(WeylBoundRow(h=h, d=d, modulus=float(abs(total)), bound=bound))
    return report
