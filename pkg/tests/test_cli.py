import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from padic_loggrowth.cli import main
from padic_loggrowth.newton import NewtonPolygon
from padic_loggrowth.series import SparseValSeries

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_table(capsys):
    code, out, _ = run(capsys, "family", "--p", "2", "--sigma", "1/2", "--sigma-prime", "0",
                       "--rmax", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["r"], r["n"], r["a_valuation"]) for r in rows] == [
        ("0", "2", "0"), ("1", "9", "0"), ("2", "35", "0"), ("3", "135", "0")]
    assert "\r" not in out


def test_family_json_round_trips(capsys):
    code, out, _ = run(capsys, "family", "--sigma", "1/2", "--sigma-prime", "1/4", "--rmax", "6")
    assert code == 0
    data = json.loads(out)
    f = SparseValSeries.from_record(data["f"])
    assert f.terms[0].exponent == 2 and f.exact
    assert data["params"]["delta"] == "1/2"


def test_family_degenerate_accepted(capsys):
    code, out, _ = run(capsys, "family", "--sigma", "1/2", "--sigma-prime", "1/2", "--rmax", "3")
    assert code == 0
    assert json.loads(out)["params"]["delta"] == "0/1"


@pytest.mark.parametrize("argv", [
    ["family", "--sigma", "1/2", "--sigma-prime", "3/4"],
    ["verify", "--p", "4"],
    ["family", "--sigma", "x"],
    ["family", "--format", "svg"],
    ["solve", "--nmax", "10000000"],
    ["bogus"],
])
def test_invalid_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_invalid_message_names_constraint(capsys):
    _, _, err = run(capsys, "family", "--sigma", "1/2", "--sigma-prime", "3/4")
    assert "sigma'" in err and "sigma" in err


def test_verify_golden(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--sigma", "1/2", "--sigma-prime", "1/4", "--rmax", "40")
    assert code == 0
    assert out == (GOLDEN / "verify_p2_1-2_1-4.json").read_text()
    data = json.loads(out)
    assert data["endpoint_gap"] == "1/4"
    assert NewtonPolygon.from_record(data["special_polygon"]).vertices[0] == (0, Fraction(-1, 2))


def test_verify_is_byte_stable_in_subprocess(tmp_path):
    target = tmp_path / "report.json"
    cmd = [sys.executable, "-m", "padic_loggrowth", "verify", "--p", "2", "--sigma", "1/2",
           "--sigma-prime", "1/4", "--rmax", "40", "--out", str(target)]
    done = subprocess.run(cmd, capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    assert target.read_bytes() == (GOLDEN / "verify_p2_1-2_1-4.json").read_bytes()


def test_verify_unconverged_exit_1(capsys):
    code, _, err = run(capsys, "verify", "--tolerance", "1e-9", "--rmax", "10")
    assert code == 1
    assert "special_estimate" in err


def test_verify_p5(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--sigma", "3/4", "--sigma-prime", "1/2", "--rmax", "40")
    assert code == 0
    assert json.loads(out)["endpoint_gap"] == "1/4"


def test_verify_version_header(capsys):
    _, out, _ = run(capsys, "verify", "--rmax", "20", "--tolerance", "0.2", "--version-header")
    assert json.loads(out)["generator"].startswith("padic_loggrowth ")


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and all(r["passed"] == "PASS" for r in rows)


def test_polygon_svg(capsys):
    code, out, _ = run(capsys, "polygon", "--sigma", "1/2", "--sigma-prime", "1/4", "--format", "svg")
    assert code == 0
    assert out.count("<polyline") == 2
    # left endpoints at sigma - 1 and sigma' - 1
    assert 'class="endpoint-special"' in out and 'data-y="-1/2"' in out
    assert 'class="endpoint-generic"' in out and 'data-y="-3/4"' in out


def test_polygon_json_and_csv(capsys):
    _, out, _ = run(capsys, "polygon")
    data = json.loads(out)
    assert data["special"]["vertices"] == [[0, "-1/2"], [1, "-1/2"], [2, "0/1"]]
    _, out, _ = run(capsys, "polygon", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "x,y_special,y_generic"
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "1", "2"]


def test_polygon_io_error_exit_3(capsys, tmp_path):
    code, _, _ = run(capsys, "polygon", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 3


def test_solve_example(capsys):
    code, out, err = run(capsys, "solve", "--p", "2", "--sigma", "1/2", "--sigma-prime", "0", "--nmax", "10")
    assert code == 0 and "PASS" in err
    data = json.loads(out)
    e1_coord = data["columns"][1][0]
    assert e1_coord[3] == "1/3" and e1_coord[10] == "1/10"
    assert sum(c != "0/1" for c in e1_coord) == 2
    assert data["columns"][1][1][0] == "1/1"
    assert data["residual"] == "PASS"


def test_solve_identity_when_no_support(capsys):
    code, out, _ = run(capsys, "solve", "--nmax", "1")
    data = json.loads(out)
    assert code == 0
    assert data["columns"] == [[["1/1", "0/1", "0/1"], ["0/1", "0/1", "0/1"]],
                               [["0/1", "0/1", "0/1"], ["1/1", "0/1", "0/1"]]]


def test_loggrowth_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "loggrowth", "--rmax", "40")
    data = json.loads(out)
    assert code == 0
    assert abs(data["estimates"]["special"] - 0.5) <= 0.05
    assert abs(data["estimates"]["generic"] - 0.75) <= 0.05
    code, out, _ = run(capsys, "loggrowth", "--rmax", "20", "--format", "svg")
    assert code == 0 and out.startswith("<svg") and out.count("<polyline") == 2


def test_loggrowth_lambda_checks(capsys):
    code, out, _ = run(capsys, "loggrowth", "--rmax", "40", "--lambda", "3/4", "--nmax", "300")
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert code == 0
    assert checks["special_bounded"]["passed"] and checks["generic_bounded"]["passed"]
    code, out, _ = run(capsys, "loggrowth", "--rmax", "40", "--lambda", "1/4", "--bound", "3")
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert code == 0 and {"special_unbounded", "generic_unbounded"} <= set(checks)
    code, _, _ = run(capsys, "loggrowth", "--rmax", "5", "--lambda", "0", "--bound", "100")
    assert code == 1


def test_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("PADIC_LOGGROWTH_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--nmax", "4000")
    assert code == 0
    monkeypatch.delenv("PADIC_LOGGROWTH_THREADS")
    code, out2, _ = run(capsys, "verify", "--nmax", "4000")
    assert out == out2
