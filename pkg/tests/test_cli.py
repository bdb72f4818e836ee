import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from hulthen.cli import main, parse_range
from hulthen.grid import GridFunction
from hulthen.wavefunction import make_state


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,3, 5") == [1, 3, 5]
    assert parse_range("7") == [7]


def test_spectrum_paper(capsys):
    code, out, _ = run(capsys, "spectrum", "--mode", "paper", "--n", "1..4", "--format", "csv")
    assert code == 0
    table = rows(out)
    assert [r["E_over_V0_exact"] for r in table] == ["0", "-9/16", "-16/9", "-225/64"]
    assert table[0]["spacing"] == ""
    assert float(table[1]["spacing"]) != float(table[2]["spacing"])


def test_spectrum_generalized(capsys):
    code, out, _ = run(capsys, "spectrum", "--mode", "generalized", "--beta", "4", "--n", "1..3", "--format", "csv")
    assert code == 0
    assert [r["bound"] for r in rows(out)] == ["true", "false", "false"]
    assert rows(out)[0]["epsilon"] == "-2.25"


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "2", "--format", "json")
    assert code == 0 and json.loads(out)[0]["s_exact"] == "3/4"


@pytest.mark.parametrize("argv", [
    ["spectrum", "--mode", "paper", "--n", "0"],
    ["spectrum", "--beta", "4"],
    ["spectrum", "--mode", "generalized"],
    ["spectrum", "--n", "x"],
    ["wavefunction", "--n", "1"],
    ["wavefunction", "--n", "1..2", "--s", "0.5"],
    ["wavefunction", "--s", "-1"],
    ["wavefunction", "--grid", "3", "--s", "1"],
    ["verify", "--tol", "nonsense=1"],
    ["verify", "--suite", "nope"],
    ["bogus"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_spectrum_n_zero_message(capsys):
    with pytest.raises(SystemExit):
        main(["spectrum", "--n", "0"])
    assert "n must be >= 1" in capsys.readouterr().err


def test_wavefunction_dump(capsys, tmp_path):
    path = tmp_path / "psi.csv"
    code, _, _ = run(capsys, "wavefunction", "--n", "1", "--s", "0.75", "--grid", "11", "-o", str(path))
    assert code == 0
    gf = GridFunction.from_csv(path)
    assert gf.values[0] == 0.0 and gf.values[-1] == 0.0
    assert gf.values[5] == make_state(0.75, 1)(0.5)
    assert gf.meta["s"] == "0.75" and gf.meta["n"] == "1"
    header = path.read_text().splitlines()
    assert "y,x,psi" in header


def test_normalization_table(capsys):
    code, out, _ = run(capsys, "normalization", "--n", "1..5", "--format", "csv")
    assert code == 0
    table = rows(out)
    for r in table[:4]:
        assert float(r["rel_diff"]) < 1e-10
        assert abs(float(r["N_published"]) - float(r["N_symbolic"])) / float(r["N_symbolic"]) < 1e-12
    assert table[0]["s"] == "0"
    assert float(table[0]["N_symbolic"]) == pytest.approx(3**0.5, rel=1e-14)
    assert table[4]["N_published"] == "absent"
    code, out, _ = run(capsys, "normalization", "--n", "1", "--s", "0", "--format", "csv")
    assert float(rows(out)[0]["N_quadrature"]) == pytest.approx(3**0.5, rel=1e-12)


def test_ladder_table(capsys):
    code, out, _ = run(capsys, "ladder", "--s", "0.75", "--n", "1..3", "--format", "csv")
    assert code == 0
    table = rows(out)
    assert table[0]["l_zero"] == "1.75" and table[0]["l_minus"] == ""
    assert all(float(r["raise_residual"]) < 1e-9 for r in table)


def test_verify_su2(capsys):
    code, out, err = run(capsys, "verify", "--suite", "su2", "--n", "2..6", "--s", "0.75", "-q")
    assert code == 0
    checks = json.loads(out)["data"]["checks"]
    plain = [c for c in checks if not c.get("expected_failure")]
    assert plain and max(c["residual"] for c in plain if "grid" not in c["case"]) < 1e-10
    assert set(checks[0]) >= {"suite", "case", "residual", "tolerance", "pass"}


def test_verify_paper_ode_expected_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ode", "--mode", "paper", "-q")
    assert code == 0
    checks = json.loads(out)["data"]["checks"]
    assert checks and all(c["expected_failure"] and c["residual"] > 0.1 for c in checks)


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ode", "--mode", "generalized", "--beta", "9",
                       "--tol", "ode=1e-30", "-q")
    assert code == 1
    assert json.loads(out)["data"]["summary"]["failed"] >= 1


def test_verify_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "-q", "--suite", "contiguous", "--suite", "table1", "-o", str(a)]) == 0
    assert main(["verify", "-q", "--suite", "contiguous", "--suite", "table1", "-o", str(b)]) == 0
    assert json.loads(a.read_text())["data"] == json.loads(b.read_text())["data"]
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hulthen", "spectrum", "--n", "2", "--format", "csv"],
                         capture_output=True, text=True, check=True)
    assert "-9/16" in out.stdout
