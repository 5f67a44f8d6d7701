"""Brute-force enumeration of partitions into indexed polynomial parts.

Exponential in n; only for cross-checking the DP tables at small sizes.
"""

from collections import Counter
from typing import NamedTuple

from src.models.polynomial import IntegerValuedPoly, parts_up_to


class OracleCount(NamedTuple):
    """p_f(n) and the histogram m -> p_f(m, n)."""

    total: int
    by_parts: dict[int, int]


def brute_force_upto(f: IntegerValuedPoly, N: int) -> list[OracleCount]:
    """Enumerate every multiset of indexed parts with sum ≤ N, binned by sum.

    Each multiset is visited once, as a non-decreasing sequence of part
    indices, so the work is Σ_{n ≤ N} p_f(n).
    """
    parts = sorted(value for _, value in parts_up_to(f, N))
    totals = [0] * (N + 1)
    histograms = [Counter() for _ in range(N + 1)]
    stack = [(0, 0, 0)]  # (first allowed part index, sum, part count)
    while stack:
        first, total, used = stack.pop()
        totals[total] += 1
        histograms[total][used] += 1
        for i in range(first, len(parts)):
            following = total + parts[i]
            if following > N:
                break
            stack.append((i, following, used + 1))
    return [OracleCount(total=totals[n], by_parts=dict(histograms[n])) for n in range(N + 1)]


def brute_force(f: IntegerValuedPoly, n: int) -> OracleCount:
    """Exact p_f(n) and p_f(m, n) for every m, by enumeration."""
    return brute_force_upto(f, n)[n]
