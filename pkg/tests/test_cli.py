import csv
import io
import json

import pytest

from cfdim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


def test_sb_shape_and_order(capsys):
    code, out, _ = run(capsys, "sb", "--B", "2", "8", "--d", "1", "--t", "0", "--Mmax", "6", "--nmax", "5",
                       "--no-timestamp")
    assert code == 0
    rows = csv_rows(out)
    for B in ("2.0", "8.0"):
        mine = [r for r in rows if r["B"] == B]
        assert sum(r["kind"] == "tableau" for r in mine) == 30
        assert sum(r["kind"] == "summary" for r in mine) == 1
    summ = {r["B"]: float(r["s"]) for r in rows if r["kind"] == "summary"}
    assert summ["2.0"] > summ["8.0"]
    assert out.startswith("# schema:") and '"Mmax": 6' in out


def test_sb_json_matches_csv(capsys):
    _, out_csv, _ = run(capsys, "sb", "--B", "4", "--no-timestamp")
    _, out_json, _ = run(capsys, "sb", "--B", "4", "--no-timestamp", "--format", "json")
    doc = json.loads(out_json)
    est = doc["result"]["estimates"][0]
    summ = [r for r in csv_rows(out_csv) if r["kind"] == "summary"][0]
    assert float(summ["s"]) == est["value"]
    assert doc["config"]["B"] == [4.0] and "timestamp" not in doc


def test_dim_cases(capsys):
    _, out, _ = run(capsys, "dim", "--psi", "dexp(5)", "--no-timestamp", "--format", "json")
    doc = json.loads(out)["result"]
    assert doc["case"] == "B-infinite-b-finite" and doc["value"] == 1 / 6
    _, out, _ = run(capsys, "dim", "--psi", "poly(1,1)", "--no-timestamp", "--format", "json")
    doc = json.loads(out)["result"]
    assert doc["case"] == "B-equals-1" and doc["value"] == 1.0
    _, out, _ = run(capsys, "dim", "--psi", "exp(3)", "--d", "2", "--no-timestamp")
    res = [r for r in csv_rows(out) if r["kind"] == "result"][0]
    assert res["case"] == "B-finite" and 0.5 <= float(res["value"]) <= 1


def test_expand_and_cover(capsys):
    code, out, _ = run(capsys, "expand", "--x", "pi-3", "--n", "4", "--no-timestamp")
    assert code == 0 and [r["a"] for r in csv_rows(out)] == ["7", "15", "1", "292"]
    code, out, _ = run(capsys, "cover", "--n", "2", "--s", "0.7", "--B", "2", "--grid", "400",
                       "--format", "json", "--no-timestamp")
    doc = json.loads(out)["result"]
    assert code == 0 and doc["grid_oracle"]["within_slack"]


def test_mc_geomean(capsys):
    code, out, _ = run(capsys, "mc", "--experiment", "geomean", "--samples", "5", "--digits", "200",
                       "--n", "200", "--no-timestamp", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["config"]["seed"] == 0 and len(doc["result"]["values"]) == 5


def test_exit_codes(capsys):
    assert run(capsys, "check", "unknown")[0] == 2
    assert run(capsys, "sb", "--B", "0.5")[0] == 2
    assert run(capsys, "cover", "--n", "3", "--s", "0.4", "--B", "2")[0] == 2
    assert run(capsys, "expand", "--x", "abc")[0] == 2
    code, _, err = run(capsys, "sb", "--B", "1.05")
    assert code == 3 and json.loads(err)["error"] == "BracketError"
    code, _, err = run(capsys, "mc", "--experiment", "lemma51", "--phi", "10", "1e6")
    assert code == 3
    assert run(capsys, "check", "lemma51", "--no-timestamp")[0] == 0
    assert run(capsys, "check", "cantor-geometry", "--no-timestamp")[0] == 4


def test_config_file_and_override(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"n": 3, "s": 0.8, "B": 4, "d": 2}))
    code, out, _ = run(capsys, "cover", "--config", str(path), "--no-timestamp", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["config"]["d"] == 2 and len(doc["result"]["logA"]) == 3
    code, out, _ = run(capsys, "cover", "--config", str(path), "--d", "1", "--no-timestamp", "--format", "json")
    assert json.loads(out)["config"]["d"] == 1
    path.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "cover", "--config", str(path))[0] == 2


def test_output_file_and_timestamp(tmp_path, capsys):
    dest = tmp_path / "out.csv"
    code, out, _ = run(capsys, "expand", "--x", "2/5", "--n", "3", "--output", str(dest))
    assert code == 0 and out == ""
    text = dest.read_text()
    assert "# timestamp:" in text and "output" not in text.split("# config:")[1].splitlines()[0]


def test_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("CFDIM_WORKERS", "2")
    a = run(capsys, "sb", "--B", "2", "--Mmax", "3", "--nmax", "3", "--no-timestamp")[1]
    monkeypatch.delenv("CFDIM_WORKERS")
    b = run(capsys, "sb", "--B", "2", "--Mmax", "3", "--nmax", "3", "--no-timestamp")[1]
    assert a == b
