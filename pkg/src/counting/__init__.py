"""Exact counting: DP tables, brute-force oracle and equidistribution ratios."""

from src.counting.dp import build_parts_matrix, build_residue_table, build_table
from src.counting.oracle import brute_force, brute_force_upto
from src.counting.ratios import equi_ratio, geometric_schedule, progression_ratio

__all__ = [
    "build_table",
    "build_parts_matrix",
    "build_residue_table",
    "brute_force",
    "brute_force_upto",
    "equi_ratio",
    "geometric_schedule",
    "progression_ratio",
]
