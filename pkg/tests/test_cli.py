import csv
import io
import json

import pytest

from igusa_locus.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "6")
    assert code == 0
    assert "twisting: true" in out and "pi0: 1" in out and "rho: 1\n" in out and "irreducible: true" in out


def test_analyze_39(capsys):
    code, out, _ = run(capsys, "analyze", "39")
    assert code == 0 and "rho: 2\n" in out and "twisting: false" in out


@pytest.mark.parametrize("D", ["12", "7", "1"])
def test_analyze_inadmissible(capsys, D):
    code, _, err = run(capsys, "analyze", D)
    assert code == 2 and "igusa-locus:" in err


def test_analyze_json_round_trip(capsys):
    _, out, _ = run(capsys, "analyze", "15", "--format", "json")
    data = json.loads(out)
    assert data["twist_divisors"] == [3, 5] and data["rho_feasible"] == [2]
    assert json.dumps(data, indent=2) + "\n" == out


def test_tabulate_csv(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "tabulate", "6", "100", "--out", str(path))
    assert code == 0 and out == ""
    rows = list(csv.reader(path.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 31
    assert rows[1] == ["6", "2", "1", "true", "2;3", "1", "1", "1", "true"]


def test_tabulate_empty_range_has_header(capsys, tmp_path):
    path = tmp_path / "e.csv"
    assert run(capsys, "tabulate", "2", "5", "--out", str(path))[0] == 0
    assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_tabulate_json_single(capsys):
    _, out, _ = run(capsys, "tabulate", "6", "6", "--format", "json")
    data = json.loads(out)
    assert len(data) == 1 and data[0]["irreducible"] is True


def test_tabulate_bad_range(capsys):
    assert run(capsys, "tabulate", "10", "6")[0] == 2


def test_tabulate_unwritable(capsys):
    assert run(capsys, "tabulate", "6", "20", "--out", "/nonexistent-dir/x.csv")[0] == 3


def test_tabulate_deterministic_across_jobs(capsys):
    _, a, _ = run(capsys, "tabulate", "6", "300")
    _, b, _ = run(capsys, "tabulate", "6", "300", "--jobs", "3")
    assert a == b


def test_polarize_six(capsys):
    code, out, _ = run(capsys, "polarize", "6", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["mu"] == "3*i + j" and abs(rep["pfaffian"]) == 1 and rep["rosati_positive"] is True
    assert rep["twists"][0] == {"chi": "i + j", "nrd": "-2", "m": 2, "multiplier": "2"}


def test_polarize_ten_text(capsys):
    code, out, _ = run(capsys, "polarize", "10")
    assert code == 0 and "degree: 1" in out and "rosati positive: true" in out


def test_polarize_inadmissible(capsys):
    assert run(capsys, "polarize", "7")[0] == 2


def test_polarize_exhausted(capsys):
    code, _, err = run(capsys, "polarize", "46", "--bound", "3")
    assert code == 4 and "raise --bound" in err


def test_catalog_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("IGUSA_LOCUS_CATALOG", str(tmp_path / "missing.json"))
    assert run(capsys, "polarize", "6")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"entries": [{"D": 6}]}')
    assert run(capsys, "polarize", "6", "--catalog", str(bad))[0] == 2


def test_hm_curve(capsys):
    code, out, _ = run(capsys, "hm", "10", "2", "0")
    assert code == 0 and "P: 20" in out and "Q: 125/18" in out and "degenerate: no" in out
    _, out, _ = run(capsys, "hm", "6", "0", "sqrt(2)", "--format", "json")
    assert json.loads(out)["f"] == ["1", "2*sqrt(2)", "11/3", "2*sqrt(2)", "1", "0"]


def test_hm_points(capsys):
    _, out, _ = run(capsys, "hm", "10", "--points", "3", "--format", "json")
    pts = json.loads(out)["points"]
    assert [(p["t"], p["s"], p["degenerate"]) for p in pts] == [("-1/2", "0", True), ("0", "0", True), ("2", "0", False)]


def test_hm_errors(capsys):
    assert run(capsys, "hm", "6", "1", "2")[0] == 2
    assert run(capsys, "hm", "10", "2")[0] == 2
    assert run(capsys, "hm", "10", "--points", "0")[0] == 2


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "quick")
    assert code == 0 and out.strip().endswith("verify quick: PASS")
    assert out.count(" ok ") == 6


def test_verify_unknown_level():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "medium"])
    assert exc.value.code == 2


def test_deterministic_output(capsys):
    outs = {run(capsys, "polarize", "15")[1] for _ in range(2)}
    assert len(outs) == 1
