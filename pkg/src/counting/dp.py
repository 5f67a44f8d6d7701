"""Exact dynamic-programming tables for p_f(n), p_f(m, n) and p_f(a, K; n)."""

import logging

import numpy as np

from src.errors import ComputationError, HypothesisError
from src.models.polynomial import IntegerValuedPoly, parts_up_to, require_admissible
from src.models.tables import PartitionTable, PartsMatrix, ResidueTable

logger = logging.getLogger(__name__)


def multiply_geometric(series: np.ndarray, size: int, weight=None, shift_axis: int | None = None):
    """Multiply a truncated series in place by 1/(1 - weight·q^size).

    Updates run block by block: ``series[s:s+size] += weight * series[s-size:s]``
    for s = size, 2·size, ... . Each block reads the block already updated in
    this pass, so the part may be used any number of times.

    With ``shift_axis`` set, each block is rolled by one position along that
    axis before the addition; a residue-tracking table uses this to move
    counts from part count m-1 to m (mod K).
    """
    length = series.shape[0]
    for start in range(size, length, size):
        stop = min(start + size, length)
        block = series[start - size : stop - size]
        if shift_axis is not None:
            block = np.roll(block, 1, axis=shift_axis)
        series[start:stop] += block if weight is None else weight * block


def _exact_tuple(values: np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in values)


def build_table(
    f: IntegerValuedPoly,
    N: int,
    parts: list[tuple[int, int]] | None = None,
    check_monotone: bool = False,
) -> PartitionTable:
    """p_f(0..N): coefficients of ∏ 1/(1 - q^f(ℓ)), one pass per index ℓ.

    Args:
        f: Admissible polynomial
        N: Largest n to tabulate
        parts: Optional subset of parts_up_to(f, N) (used to check that
            adding part types never lowers an entry)
        check_monotone: Compare the table before and after every pass and
            raise ComputationError if an entry drops
    """
    require_admissible(f)
    if parts is None:
        parts = parts_up_to(f, N)
    table = np.zeros(N + 1, dtype=object)
    table[0] = 1
    for _, value in parts:
        previous = table.copy() if check_monotone else None
        multiply_geometric(table, value)
        if previous is not None and (table < previous).any():
            raise ComputationError(
                f"adding part {value} lowered an entry of the p_f table for {f.canonical}"
            )
    logger.debug(f"Built p_f table for {f.canonical}: N={N}, {len(parts)} part types")
    return PartitionTable(poly=f, N=N, values=_exact_tuple(table))


def build_parts_matrix(f: IntegerValuedPoly, N: int, M: int) -> PartsMatrix:
    """p_f(m, n) for m ≤ M, n ≤ N (O(M·N) big integers)."""
    require_admissible(f)
    parts = parts_up_to(f, N)
    matrix = np.zeros((M + 1, N + 1), dtype=object)
    matrix[0, 0] = 1
    if parts:
        top = min(M, N // min(value for _, value in parts))
        for _, value in parts:
            # row m-1 is already final for this part when row m reads it
            for m in range(1, top + 1):
                matrix[m, value:] += matrix[m - 1, : N + 1 - value]
    entries = tuple(_exact_tuple(row) for row in matrix)
    return PartsMatrix(poly=f, N=N, M=M, entries=entries)


def build_residue_table(f: IntegerValuedPoly, K: int, N: int) -> ResidueTable:
    """p_f(a, K; n) tracking the part count modulo K (O(K·N) big integers)."""
    require_admissible(f)
    if K < 1:
        raise HypothesisError(f"modulus K must be positive, got {K}")
    parts = parts_up_to(f, N)
    columns = np.zeros((N + 1, K), dtype=object)
    columns[0, 0] = 1
    for _, value in parts:
        multiply_geometric(columns, value, shift_axis=1)
    logger.debug(f"Built residue table for {f.canonical}: K={K}, N={N}")
    entries = tuple(_exact_tuple(columns[:, a]) for a in range(K))
    return ResidueTable(poly=f, modulus=K, N=N, entries=entries)
