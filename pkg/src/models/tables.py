"""Exact partition-count tables."""

from dataclasses import dataclass

from src.models.polynomial import IntegerValuedPoly, parse_poly


@dataclass(frozen=True)
class PartitionTable:
    """p_f(0..N) as exact integers."""

    poly: IntegerValuedPoly
    N: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        return {
            "poly": self.poly.canonical,
            "N": self.N,
            "values": list(self.values),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PartitionTable":
        return cls(
            poly=parse_poly(data["poly"]),
            N=int(data["N"]),
            values=tuple(int(v) for v in data["values"]),
        )


@dataclass(frozen=True)
class PartsMatrix:
    """p_f(m, n) for 0 ≤ m ≤ M, 0 ≤ n ≤ N; entries[m][n]."""

    poly: IntegerValuedPoly
    N: int
    M: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, m: int, n: int) -> int:
        return self.entries[m][n]

    def column_sum(self, n: int) -> int:
        return sum(row[n] for row in self.entries)

    def residue_sum(self, a: int, K: int, n: int) -> int:
        """Σ_{m ≡ a (mod K), m ≤ M} p_f(m, n)."""
        return sum(self.entries[m][n] for m in range(a % K, self.M + 1, K))


@dataclass(frozen=True)
class ResidueTable:
    """p_f(a, K; n) for 0 ≤ a < K, 0 ≤ n ≤ N; entries[a][n]."""

    poly: IntegerValuedPoly
    modulus: int
    N: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, a: int, n: int) -> int:
        return self.entries[a % self.modulus][n]

    def column(self, n: int) -> tuple[int, ...]:
        return tuple(row[n] for row in self.entries)

    def totals(self) -> PartitionTable:
        """Column sums, which are p_f(0..N)."""
        values = tuple(sum(row[n] for row in self.entries) for n in range(self.N + 1))
        return PartitionTable(poly=self.poly, N=self.N, values=values)

    def to_dict(self) -> dict:
        return {
            "poly": self.poly.canonical,
            "K": self.modulus,
            "N": self.N,
            "entries": [list(row) for row in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResidueTable":
        return cls(
            poly=parse_poly(data["poly"]),
            modulus=int(data["K"]),
            N=int(data["N"]),
            entries=tuple(tuple(int(v) for v in row) for row in data["entries"]),
        )
