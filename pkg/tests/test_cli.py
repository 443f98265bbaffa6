import csv
import io
import json
import subprocess
import sys

import pytest

from tridensity.cli import main
from tridensity.verify import run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "0.7", "0.7", "0.7")
    assert code == 0
    assert out.startswith("region=R2 delta=-0.098 tmin=0.166812")


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "0.5", "0.5", "0.5", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == 1
    assert doc["region"] == "OutsideR" and doc["tmin"] == 0


@pytest.mark.parametrize("argv", [
    ["classify", "1.2", "0", "0"],
    ["classify", "x", "0", "0"],
    ["search", "--profile", "2,2,4"],
    ["search", "--threads", "0"],
    ["verify", "nonsense"],
    ["complement", "t[2,2]AB=1"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_bad_tri_threads_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("TRI_THREADS", "many")
    code, _, err = run(capsys, "search", "--profile", "2,2,2")
    assert code == 2 and "TRI_THREADS" in err


def test_search_smoke_and_expect(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--profile", "2,2,2", "--threads", "1")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == 1 and doc["survivor_count"] == 3
    assert {tuple(s["sizes"]) for s in doc["survivors"]} == {(2, 2, 2)}
    code, _, err = run(capsys, "search", "--profile", "2,2,2", "--expect", "14")
    assert code == 1 and "expected 14" in err
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "search", "--profile", "2,2,2", "--expect", "3", "--out", str(path))
    assert code == 0
    data = path.read_bytes()
    assert b"\r\n" not in data and json.loads(data.decode("utf-8"))["survivor_count"] == 3


def test_search_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "search", "--profile", "3,2,2", "--out", str(a), "--backend", "numpy")
    run(capsys, "search", "--profile", "2,2,3", "--out", str(b), "--threads", "2")
    assert a.read_bytes() == b.read_bytes()


def test_tmin_with_graph(capsys):
    code, out, _ = run(capsys, "tmin", "0.7", "0.7", "0.7", "--graph", "H7")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == 1
    assert doc["numeric_min"] == pytest.approx(0.1668116, abs=1e-4)
    code, out, _ = run(capsys, "tmin", "0.7", "0.7", "0.7", "--graph", "H6", "--samples", "2")
    assert code == 0 and json.loads(out)["feasible"] is False


def test_tmin_global(capsys):
    code, out, _ = run(capsys, "tmin", "0.9", "0.9", "0.9")
    doc = json.loads(out)
    assert code == 0 and doc["region"] == "R1"
    assert doc["numeric_min"] == pytest.approx(0.7, abs=1e-4)


def test_tmin_rejects_large_graph():
    with pytest.raises(SystemExit) as e:
        main(["tmin", "0.9", "0.9", "0.9", "--graph", "t[4,1,1]AB=1111;AC=1111;BC=1"])
    assert e.value.code == 2


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "g.csv"
    code, _, _ = run(capsys, "sweep", "--grid", "3", "--out", str(path), "--samples", "2")
    assert code == 0
    data = path.read_bytes()
    assert b"\r" not in data
    rows = list(csv.DictReader(io.StringIO(data.decode("utf-8"))))
    assert len(rows) == 27
    assert list(rows[0]) == ["alpha", "beta", "gamma", "region", "closed_form", "numeric_min"]
    for r in rows:
        assert abs(float(r["numeric_min"]) - float(r["closed_form"])) < 1e-3


def test_sweep_closed_only(capsys):
    code, out, _ = run(capsys, "sweep", "--grid", "2", "--closed-only")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 9
    assert lines[-1].startswith("0.75,0.75,0.75,R1,0.25,")
    assert lines[-1].endswith(",")


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--name", "H6")
    assert code == 0 and out == "H6\tt[2,2,2]AB=1101;AC=1011;BC=1101\n"
    code, out, _ = run(capsys, "catalog", "--json")
    doc = json.loads(out)
    assert doc["format"] == 1 and len(doc["graphs"]) == 8


def test_complement(capsys):
    code, out, _ = run(capsys, "complement", "t[2,2,2]AB=1101;AC=1011;BC=1101")
    assert code == 0 and out == "t[2,2,2]AB=0010;AC=0100;BC=0010\n"
    code, out, _ = run(capsys, "complement", "H6", "--json")
    doc = json.loads(out)
    assert doc["missing_edges"] == ["a2b1", "a1c2", "b2c1"]


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "formulas", "--seed", "7", "--samples", "300")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "bounds", "--json", "--samples", "200")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == 1 and doc["passed"]


def test_verify_transforms_and_conjecture():
    assert run_suite("transforms", seed=1, samples=50).passed
    res = run_suite("conjecture", seed=2, samples=10)
    assert res.passed and res.checks[0].count == 10


def test_verify_failure_exit_1(capsys, monkeypatch):
    from tridensity import verify

    def broken(seed=0, samples=1):
        res = verify.SuiteResult("bounds", seed)
        chk = verify.Check("always fails")
        chk.record(False, "example")
        res.checks.append(chk)
        return res

    monkeypatch.setattr(verify, "suite_bounds", broken)
    code, out, _ = run(capsys, "verify", "bounds")
    assert code == 1 and "first counterexample: example" in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "tridensity.cli", "classify", "0.9", "0.9", "0.9"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("region=R1")
    r = subprocess.run([sys.executable, "-m", "tridensity.cli", "classify", "2", "0", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 2
