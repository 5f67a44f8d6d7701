"""Polynomials, exact tables and table storage."""

from src.models.polynomial import IntegerValuedPoly, parse_poly
from src.models.storage import TableStore
from src.models.tables import PartitionTable, PartsMatrix, ResidueTable

__all__ = ["IntegerValuedPoly", "parse_poly", "PartitionTable", "PartsMatrix", "ResidueTable", "TableStore"]
