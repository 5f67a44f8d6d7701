import pytest

from src.counting.dp import build_residue_table, build_table
from src.errors import ValidationError
from src.models.storage import TableStore
from src.models.tables import PartitionTable, ResidueTable


def test_save_and_load_partition_table(tmp_path, linear):
    store = TableStore(tmp_path)
    table = build_table(linear, 50)
    path = store.save(table, "p.txt")
    assert path == tmp_path / "p.txt"
    assert path.read_text().startswith("# polypart-table 1\n# poly: binom:0,1\n# N: 50\n# K: 1\nn,p\n0,1\n")
    assert store.load("p.txt") == table


def test_save_and_load_residue_table(tmp_path, odd):
    store = TableStore(tmp_path)
    table = build_residue_table(odd, 4, 40)
    store.save(table, "r.txt")
    loaded = store.load("r.txt")
    assert isinstance(loaded, ResidueTable)
    assert loaded == table


def test_load_rejects_unknown_version(tmp_path):
    (tmp_path / "bad.txt").write_text("# polypart-table 2\n# poly: binom:0,1\n# N: 0\n# K: 1\nn,p\n0,1\n")
    with pytest.raises(ValidationError, match="unsupported table format"):
        TableStore(tmp_path).load("bad.txt")


def test_load_rejects_truncated_file(tmp_path):
    (tmp_path / "short.txt").write_text("# polypart-table 1\n# poly: binom:0,1\n# N: 3\n# K: 1\nn,p\n0,1\n1,1\n")
    with pytest.raises(ValidationError, match="expected 4 rows"):
        TableStore(tmp_path).load("short.txt")


def test_export_csv(tmp_path, square):
    table = build_residue_table(square, 2, 4)
    path = TableStore(tmp_path).export_csv(table, "r.csv")
    assert path.read_text() == "n,a=0,a=1\n0,1,0\n1,0,1\n2,1,0\n3,0,1\n4,1,1\n"


def test_table_dict_round_trip(triangular):
    table = build_table(triangular, 20)
    assert PartitionTable.from_dict(table.to_dict()) == table
    residue = build_residue_table(triangular, 3, 20)
    assert ResidueTable.from_dict(residue.to_dict()) == residue


def test_load_rejects_missing_header_field(tmp_path):
    (tmp_path / "nok.txt").write_text("# polypart-table 1\n# poly: binom:0,1\n# N: 1\nn,p\n0,1\n1,1\n")
    with pytest.raises(ValidationError, match="missing header field 'K'"):
        TableStore(tmp_path).load("nok.txt")


@pytest.mark.parametrize(
    "body",
    ["n,p\n0,1\n1,one\n", "n,p\n0,1\n1\n"],
)
def test_load_rejects_corrupt_rows(tmp_path, body):
    (tmp_path / "bad.txt").write_text("# polypart-table 1\n# poly: binom:0,1\n# N: 1\n# K: 1\n" + body)
    with pytest.raises(ValidationError):
        TableStore(tmp_path).load("bad.txt")
