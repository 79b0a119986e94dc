import csv
import io
import json
import subprocess
import sys

import pytest

from meanorder.cli import main


def run(*argv, capsys=None):
    code = main(list(argv))
    out = capsys.readouterr() if capsys else None
    return code, out


def test_eval_examples(capsys):
    assert main(["eval", "gini(2,0)", "3", "4"]) == 0
    assert capsys.readouterr().out == "3.5355339059327378\n"
    assert main(["eval", "invariant(arith,harm)", "2", "8"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(4.0, abs=1e-13)
    assert main(["eval", "log", "1", "1"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_eval_json(capsys):
    assert main(["eval", "geom", "4", "9", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 6.0


@pytest.mark.parametrize("argv", [
    ["eval", "gini(1 2)", "1", "2"],
    ["eval", "geom", "-1", "2"],
    ["eval", "geom", "0", "2"],
    ["eval", "foo", "1", "2"],
    ["eval", "geom", "one", "2"],
    ["order", "geom", "--points", "3"],
    ["order", "geom", "--u-start", "1"],
    ["frobnicate"],
    ["eval", "geom", "1", "2", "--bogus"],
    ["gini-table", "--p-list", "a,b"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_order_text(capsys):
    assert main(["order", "log"]) == 0
    out = capsys.readouterr().out
    assert "gpg       true" in out and "pg        false" in out


def test_order_json_e2(capsys):
    assert main(["order", "env(e2)", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert abs(d["estimate"]["lower"] - 0.5) <= 0.05
    assert abs(d["estimate"]["upper"] - 1.0) <= 0.05
    assert main(["order", "env(e2)", "--probes=0", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["estimate"]["upper"] <= 0.6


def test_order_geom_constant(capsys):
    assert main(["order", "gini(0,0)", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["is_pg"] and d["constant"] == pytest.approx(1.0)
    assert d["order"] == pytest.approx(0.5)


def test_order_csv_dump(capsys):
    assert main(["order", "geom", "--format", "csv", "--points", "32"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["u", "phi"] and len(rows) == 33
    assert all(float(r[1]) == 0.5 for r in rows[1:])


def test_invariant_command(capsys):
    assert main(["invariant", "arith", "geom", "1", "2"]) == 0
    assert "1.4567910310469" in capsys.readouterr().out


def test_verify_exit_codes(capsys):
    assert main(["verify", "geom", "arith"]) == 0
    assert "pass" in capsys.readouterr().out
    assert main(["verify", "harm", "geom", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["prediction"] == pytest.approx(1.0, abs=0.02)
    assert main(["verify", "min", "max"]) == 3
    assert "did not converge" in capsys.readouterr().err
    # too tight a tolerance turns the estimator's tail bias into a failure
    assert main(["verify", "geom", "arith", "--tol", "1e-9"]) == 1


def test_gini_table(capsys):
    assert main(["gini-table", "--p-list=-1,2", "--q-list=0,1"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    by = {(float(r["p"]), float(r["q"])): r for r in rows}
    assert float(by[(-1, 1)]["closed_form"]) == 0.5
    assert float(by[(-1, 0)]["closed_form"]) == 1
    assert float(by[(2, 1)]["closed_form"]) == 0
    assert all(float(r["abs_error"]) <= 0.01 for r in rows)
    assert main(["gini-table", "--p-list=-1", "--q-list=1", "--tol", "1e-30", "--points", "64"]) == 1


def test_compare(capsys):
    assert main(["compare", "1", "-3", "1", "-1", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["pales_leq"] is True and d["dl_leq"] is True
    assert main(["compare", "2", "0", "1", "0"]) == 0
    assert "pales_leq  false" in capsys.readouterr().out


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "geom", "arith", "--format", "json", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()
    json.loads(a.read_text())


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "meanorder", "eval", "rms", "3", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "3.5355339059327378\n"
    res = subprocess.run([sys.executable, "-m", "meanorder", "eval", "gini(", "3", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 2
