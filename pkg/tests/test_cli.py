import json

import pytest

from src.cli import build_parser, main
from src.config.settings import RunConfig
from src.errors import HypothesisError
from src.handlers.commands import CommandHandler


@pytest.fixture
def handler(small_settings):
    return CommandHandler(small_settings)


def run(handler, command, poly, **kwargs):
    return handler.handle(RunConfig(command=command, poly=poly, **kwargs))


def test_count_csv(handler):
    output = run(handler, "count", "rat:0,1", N=10)
    lines = output.text.splitlines()
    assert lines[0] == "n,p"
    assert lines[11] == "10,42"
    assert lines[12] == "# poly=binom:0,1"
    assert output.exit_code == 0


def test_count_square(handler):
    assert "10,4" in run(handler, "count", "rat:0,0,1", N=10).text.splitlines()


def test_count_json(handler):
    document = json.loads(run(handler, "count", "rat:0,1", N=5, format="json").text)
    assert document["schema"] == "polypart/1"
    assert document["command"] == "count"
    assert document["rows"][5] == {"n": 5, "p": 7}


def test_count_store(handler, tmp_path):
    run(handler, "count", "rat:0,1", N=10, store="p.txt")
    assert (tmp_path / "p.txt").read_text().startswith("# polypart-table 1\n")


def test_inadmissible_polynomial_exit_code():
    assert main(["count", "--poly", "rat:2,1,1", "--N", "10"]) == 2


def test_count_requires_N():
    assert main(["count", "--poly", "rat:0,1"]) == 2


def test_mod_table(handler):
    lines = run(handler, "mod-table", "rat:0,1", N=5, k=2).text.splitlines()
    assert lines[0] == "n,a=0,a=1"
    assert lines[6] == "5,3,4"


def test_verify_filter(handler):
    output = run(handler, "verify-filter", "binom:1,2", N=80, k=3, delta=2, a=[1])
    assert output.exit_code == 0
    assert "# passed=true" in output.text.splitlines()


def test_verify_filter_bad_delta():
    assert main(["verify-filter", "--poly", "binom:1,2", "--N", "20", "--delta", "3"]) == 2


def test_equi_ratio_k_one(handler):
    output = run(handler, "equi-ratio", "rat:0,1", N=300, k=1)
    rows = output.text.splitlines()
    assert rows[0] == "n,a,ratio,max_deviation,zero_support,observed_rate"
    assert rows[1] == "300,0,1,0,false,"


def test_equi_ratio_zero_support(handler):
    rows = run(handler, "equi-ratio", "binom:1,2", N=300, k=3, delta=2, a=[1]).text.splitlines()
    assert rows[1] == "300,1,,,true,"


def test_equi_ratio_hypothesis_violation():
    assert main(["equi-ratio", "--poly", "binom:1,2", "--N", "100", "--k", "2"]) == 2


def test_asym(handler):
    lines = run(handler, "asym", "rat:0,1", N=600).text.splitlines()
    assert lines[0].startswith("n,x,residual,a2,log_gf,log_asym,log_exact,ratio,log_hardy_ramanujan")
    assert [line.split(",")[0] for line in lines[1:3]] == ["500", "600"]


def test_weyl_check(handler):
    output = run(handler, "weyl-check", "binom:1,2", h_max=10)
    lines = output.text.splitlines()
    assert lines[0] == "h,d,modulus_sq,bound,margin"
    assert "# skipped_h=2" in lines
    assert "# violations=0" in lines
    assert output.exit_code == 0


def test_weyl_check_crossover(handler):
    output = run(handler, "weyl-check", "rat:0,0,1", h_max=10, L=500, format="json")
    document = json.loads(output.text)
    assert document["L"] == 500
    assert "crossover" in document


def test_f_scan(handler):
    output = run(handler, "f-scan", "binom:1,2", k=3, delta=2, x=0.1)
    lines = output.text.splitlines()
    assert lines[0] == "y,j,ell,F"
    assert any(line.startswith("# ratio=") for line in lines)


def test_f_scan_requires_x():
    assert main(["f-scan", "--poly", "rat:0,1"]) == 2


def test_pi_f(handler):
    text = run(handler, "pi-f", "binom:5,6").text
    assert "Pi_f: 6 = 2 · 3" in text
    assert "admissible: yes" in text
    assert "valid delta (h_hat):" in text


def test_pi_f_reports_problems(handler):
    document = json.loads(run(handler, "pi-f", "rat:2,1,1", format="json").text)
    assert document["problems"] == ["fixed divisor 2 ≠ 1"]


def test_verify_passes(handler):
    output = run(handler, "verify", "rat:0,1")
    assert output.exit_code == 0
    assert output.text.splitlines()[-1] == "PASS all 7 checks"


def test_verify_tamper_fails(handler):
    output = run(handler, "verify", "rat:0,1", tamper=True)
    assert output.exit_code == 3
    assert "FAIL oracle" in output.text


def test_verify_is_deterministic(handler):
    first = run(handler, "verify", "binom:1,2", format="json").text
    second = run(handler, "verify", "binom:1,2", format="json").text
    assert first == second


def test_main_writes_out_file(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYPART_OUTPUT_DIR", str(tmp_path))
    assert main(["count", "--poly", "rat:0,1", "--N", "10", "--out", "p.csv"]) == 0
    assert "10,42" in (tmp_path / "p.csv").read_text().splitlines()


def test_main_tamper_exit_code(tmp_path):
    suite = tmp_path / "suite.yaml"
    suite.write_text("checks:\n  - kind: oracle\n    params:\n      n_max: 10\n")
    assert main(["--suite", str(suite), "verify", "--poly", "rat:0,1"]) == 0
    assert main(["--suite", str(suite), "verify", "--poly", "rat:0,1", "--tamper"]) == 3


def test_tamper_flag_is_hidden():
    assert "--tamper" not in build_parser().format_help()


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--poly", "rat:0,1", "--delta", "3"],
        ["mod-table", "--poly", "rat:0,1", "--N", "10", "--delta", "3"],
        ["mod-table", "--poly", "rat:0,1", "--N", "10", "--k", "0"],
        ["f-scan", "--poly", "binom:1,2", "--x", "0.1", "--k", "3", "--delta", "4"],
    ],
)
def test_twist_parameters_rejected_before_computing(argv):
    assert main(argv) == 2


def test_verify_rejects_delta_not_dividing_pi(handler):
    with pytest.raises(HypothesisError, match="does not divide"):
        run(handler, "verify", "rat:0,1", delta=3)
