"""Twisted generating functions and the roots-of-unity filter identity."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src.analysis.phases import root_of_unity
from src.counting.dp import build_residue_table, multiply_geometric
from src.errors import HypothesisError
from src.models.polynomial import (
    IntegerValuedPoly,
    f_hat_inverse,
    parts_up_to,
    pi_f,
    require_admissible,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwistedSeries:
    """Coefficients of G_f(ζ_{δk}^j, ζ_δ^ℓ q) up to q^N (double precision)."""

    poly: IntegerValuedPoly
    twist_num: int
    twist_den: int
    q_twist: int
    delta: int
    N: int
    coefficients: np.ndarray

    def __getitem__(self, n: int) -> complex:
        return complex(self.coefficients[n])


@dataclass(frozen=True)
class FilterRow:
    n: int
    lhs: Fraction
    rhs: complex
    abs_error: float
    rel_error: float


@dataclass
class FilterReport:
    """Per-n comparison of both sides of the filter identity."""

    poly: IntegerValuedPoly
    a: int
    k: int
    delta: int
    N: int
    rows: list[FilterRow] = field(default_factory=list)
    max_rel_error: float = 0.0
    max_rel_imag: float = 0.0
    off_progression_nonzero: int = 0

    def passed(self, tolerance: float = 1e-6) -> bool:
        return (
            self.max_rel_error <= tolerance
            and self.max_rel_imag <= 1e-8
            and self.off_progression_nonzero == 0
        )


def _require_delta(f: IntegerValuedPoly, delta: int) -> None:
    if delta < 1 or pi_f(f) % delta:
        raise HypothesisError(f"δ = {delta} does not divide Π_f = {pi_f(f)}")


def twisted_series(
    f: IntegerValuedPoly, j: int, k: int, ell: int, delta: int, N: int
) -> TwistedSeries:
    """∏_{parts v ≤ N} 1/(1 - u·q^v) with u = e(j/(δk))·e(ℓv/δ)."""
    _require_delta(f, delta)
    den = delta * k
    if not 0 <= j < den:
        raise HypothesisError(f"twist j = {j} outside [0, {den})")
    if not 0 <= ell < delta:
        raise HypothesisError(f"q-twist ℓ = {ell} outside [0, {delta})")
    coefficients = np.zeros(N + 1, dtype=complex)
    coefficients[0] = 1.0
    base = Fraction(j, den)
    for _, value in parts_up_to(f, N):
        weight = root_of_unity(base + Fraction(ell * value, delta))
        multiply_geometric(coefficients, value, weight)
    return TwistedSeries(
        poly=f,
        twist_num=j,
        twist_den=den,
        q_twist=ell,
        delta=delta,
        N=N,
        coefficients=coefficients,
    )


def assemble_rhs(
    f: IntegerValuedPoly,
    a: int,
    k: int,
    delta: int,
    N: int,
    permuted: bool = False,
    max_workers: int | None = None,
) -> np.ndarray:
    """(1/(kδ))·Σ_{1≤j<k, 0≤ℓ<δ} ζ_{δk}^{-ja-kℓa·f(0)}·[q^n] G_f(ζ_{δk}^j, ζ_δ^ℓ q).

    With ``permuted`` the ℓ-sum is taken as Σ_ℓ ζ_δ^{-ℓa}·G_f(ζ_{δk}^j, ζ_δ^{ĥℓ} q),
    ĥ = ĥ_δ; both forms must agree because ℓ ↦ ĥℓ permutes residues mod δ.
    Series may be built on a thread pool; they are summed in (j, ℓ) order.
    """
    _require_delta(f, delta)
    den = delta * k
    f_hat = f_hat_inverse(f, delta)
    terms = []
    for j in range(1, k):
        for ell in range(delta):
            if permuted:
                coeff = root_of_unity(Fraction(-j * a, den) + Fraction(-ell * a, delta))
                terms.append((coeff, j, (f_hat * ell) % delta))
            else:
                coeff = root_of_unity(Fraction(-j * a - k * ell * a * f.f0, den))
                terms.append((coeff, j, ell))

    def build(term):
        _, j, ell = term
        return twisted_series(f, j, k, ell, delta, N).coefficients

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            series = list(pool.map(build, terms))
    else:
        series = [build(term) for term in terms]

    total = np.zeros(N + 1, dtype=complex)
    for (coeff, _, _), coefficients in zip(terms, series):
        total += coeff * coefficients
    return total / den


def verify_filter_identity(
    f: IntegerValuedPoly, a: int, k: int, delta: int, N: int, permuted: bool = False
) -> FilterReport:
    """Compare exact p_f(a,δk;n) - p_f(n)/k with the twisted-series sum.

    Only n ≡ a·f(0) (mod δ) enter the comparison; off that progression the
    report counts any nonzero p_f(a,δk;n), which must not occur.
    """
    require_admissible(f)
    _require_delta(f, delta)
    if k < 1 or a < 1:
        raise HypothesisError(f"need a ≥ 1 and k ≥ 1, got a={a}, k={k}")

    residue = build_residue_table(f, delta * k, N)
    totals = residue.totals()
    rhs = assemble_rhs(f, a, k, delta, N, permuted=permuted)
    report = FilterReport(poly=f, a=a, k=k, delta=delta, N=N)

    for n in range(N + 1):
        if (n - a * f.f0) % delta:
            if residue.entry(a, n):
                report.off_progression_nonzero += 1
            continue
        lhs = Fraction(residue.entry(a, n)) - Fraction(totals[n], k)
        scale = totals[n] + 1
        abs_error = abs(complex(float(lhs)) - rhs[n])
        row = FilterRow(n=n, lhs=lhs, rhs=complex(rhs[n]), abs_error=abs_error, rel_error=abs_error / scale)
        report.rows.append(row)
        report.max_rel_error = max(report.max_rel_error, row.rel_error)
        report.max_rel_imag = max(report.max_rel_imag, abs(rhs[n].imag) / scale)

    logger.info(
        f"Filter identity for {f.canonical} (a={a}, k={k}, δ={delta}, N={N}): "
        f"max relative error {report.max_rel_error:.3e}"
    )
    return report


def full_filter(f: IntegerValuedPoly, a: int, K: int, N: int) -> np.ndarray:
    """(1/K)·Σ_{0≤j<K} ζ_K^{-ja}·G_f(ζ_K^j, q); reproduces p_f(a, K; n)."""
    total = np.zeros(N + 1, dtype=complex)
    for j in range(K):
        total += root_of_unity(Fraction(-j * a, K)) * twisted_series(f, j, K, 0, 1, N).coefficients
    return total / K
