"""Versioned flat-file storage for exact tables."""

import csv
import logging
from pathlib import Path

from src.errors import ValidationError
from src.models.polynomial import parse_poly
from src.models.tables import PartitionTable, ResidueTable

logger = logging.getLogger(__name__)

FORMAT_NAME = "polypart-table"
FORMAT_VERSION = 1


class TableStore:
    """Read and write tables as a header block followed by decimal rows.

    Layout::

        # polypart-table 1
        # poly: binom:0,1
        # N: 10
        # K: 2
        n,a=0,a=1
        0,1,0
        ...

    A PartitionTable is stored as K = 1 with a single column ``p``.
    """

    def __init__(self, root: str | Path = "."):
        self.root = Path(root)

    def _resolve(self, path: str | Path) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.root / path

    @staticmethod
    def _header(table: PartitionTable | ResidueTable) -> tuple[int, list[str]]:
        if isinstance(table, ResidueTable):
            return table.modulus, ["n"] + [f"a={a}" for a in range(table.modulus)]
        return 1, ["n", "p"]

    @staticmethod
    def _rows(table: PartitionTable | ResidueTable) -> list[list[int]]:
        if isinstance(table, ResidueTable):
            return [[n, *table.column(n)] for n in range(table.N + 1)]
        return [[n, value] for n, value in enumerate(table.values)]

    def save(self, table: PartitionTable | ResidueTable, path: str | Path) -> Path:
        """Write a table file and return its path."""
        target = self._resolve(path)
        K, columns = self._header(table)
        with open(target, "w", newline="") as f:
            f.write(f"# {FORMAT_NAME} {FORMAT_VERSION}\n")
            f.write(f"# poly: {table.poly.canonical}\n")
            f.write(f"# N: {table.N}\n")
            f.write(f"# K: {K}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(self._rows(table))
        logger.info(f"Saved table for {table.poly.canonical} (N={table.N}, K={K}) to {target}")
        return target

    def load(self, path: str | Path) -> PartitionTable | ResidueTable:
        """Read a table file written by :meth:`save`."""
        source = self._resolve(path)
        meta: dict[str, str] = {}
        with open(source, newline="") as f:
            lines = f.read().splitlines()
        body_start = 0
        for body_start, line in enumerate(lines):
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            if value:
                meta[key.strip()] = value.strip()
            else:
                meta["format"] = key.strip()
        name, _, version = meta.get("format", "").partition(" ")
        if name != FORMAT_NAME or version != str(FORMAT_VERSION):
            raise ValidationError(f"{source}: unsupported table format {meta.get('format')!r}")

        try:
            poly = parse_poly(meta["poly"])
            N = int(meta["N"])
            K = int(meta["K"])
            rows = [[int(cell) for cell in row] for row in csv.reader(lines[body_start + 1 :])]
        except KeyError as e:
            raise ValidationError(f"{source}: missing header field {e.args[0]!r}") from e
        except ValueError as e:
            raise ValidationError(f"{source}: corrupt table ({e})") from e
        if len(rows) != N + 1:
            raise ValidationError(f"{source}: expected {N + 1} rows, found {len(rows)}")
        if any(len(row) != K + 1 for row in rows):
            raise ValidationError(f"{source}: expected {K + 1} columns in every row")

        if K == 1 and lines[body_start].strip() == "n,p":
            return PartitionTable(poly=poly, N=N, values=tuple(row[1] for row in rows))
        entries = tuple(tuple(row[1 + a] for row in rows) for a in range(K))
        return ResidueTable(poly=poly, modulus=K, N=N, entries=entries)

    def export_csv(self, table: PartitionTable | ResidueTable, path: str | Path) -> Path:
        """Plain CSV (header row plus data rows) for spreadsheets."""
        target = self._resolve(path)
        _, columns = self._header(table)
        with open(target, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(self._rows(table))
        return target
