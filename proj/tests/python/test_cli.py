import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("BALPAIRS_CLI", "balpairs")
DATA = Path(__file__).resolve().parent.parent / "data"


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


@pytest.mark.parametrize(
    "name,method,expected",
    [
        ("two_plus_two.txt", "auto", "6"),
        ("n_poset.txt", "forest", "5"),
        ("n_poset.txt", "dp", "5"),
        ("two_plus_one.txt", "enumerate", "3"),
        ("chain.txt", "auto", "1"),
    ],
)
def test_count(name, method, expected):
    r = run("count", DATA / name, "--method", method)
    assert r.returncode == 0
    assert r.stdout.strip() == expected


def test_prob_prints_exact_fractions():
    assert run("prob", DATA / "two_plus_one.txt", "x", "y").stdout.strip() == "2/3"
    r = run("--json", "prob", DATA / "three_plus_one.txt", "y", "t")
    assert json.loads(r.stdout)["probability"] == "1/4"


def test_pair_strategies():
    r = json.loads(run("pair", DATA / "n_poset.txt", "--json").stdout)
    assert r["provenance"] == "forest_algorithm"
    assert r["flags"]["very_good"] is True
    s = json.loads(run("pair", DATA / "two_plus_one.txt", "--strategy", "semiorder", "--json").stdout)
    assert s["probability"] == "2/3"
    assert s["step"] == "case_i_triple"
    g = json.loads(run("pair", DATA / "three_plus_one.txt", "--strategy", "good-chain", "--json").stdout)
    assert g["pair"] == ["y", "x"]
    assert g["probability"] == "1/2"
    e = json.loads(run("pair", DATA / "three_plus_one.txt", "--strategy", "exhaustive", "--json").stdout)
    assert e["probability"] == "1/2"


def test_exit_codes():
    assert run("pair", DATA / "chain.txt").returncode == 1
    assert run("count", DATA / "cycle.txt").returncode == 2
    assert run("count", DATA / "bad.txt").returncode == 2
    assert run("count", DATA / "diamond.txt", "--method", "forest").returncode == 1
    r = run("check", DATA / "diamond.txt", "--forest")
    assert r.returncode == 1
    assert "NotForest" in r.stderr
    assert run("verify", "--campaign", "nope", "--n-max", "3").returncode == 2
    assert run("no-such-command").returncode == 2


def test_verify_writes_json_lines(tmp_path):
    out = tmp_path / "report.jsonl"
    for name in ("theorem3_inequality", "corollary2_forest_equiv"):
        r = run("verify", "--campaign", name, "--n-max", 5, "--out", out, "--threads", 1)
        assert r.returncode == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert [l["campaign"] for l in lines] == ["theorem3_inequality", "corollary2_forest_equiv"]
    assert all(l["passed"] for l in lines)


def test_export_dot_is_deterministic():
    a = run("export-dot", DATA / "three_plus_one.txt").stdout
    assert a == run("export-dot", DATA / "three_plus_one.txt").stdout
    assert a.count("->") == 2
    assert run("export-dot", DATA / "diamond.txt").stdout.count("->") == 4
    assert run("export-dot", DATA / "chain.txt").stdout.count("->") == 2


def test_classify_lists_every_incomparable_pair():
    rows = json.loads(run("--json", "classify", DATA / "two_plus_one.txt").stdout)
    assert [r["pair"] for r in rows] == [["x", "y"], ["y", "x"], ["y", "z"], ["z", "y"]]
