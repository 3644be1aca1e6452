import json
from fractions import Fraction as Fr

import pytest
from click.testing import CliRunner

from wittram.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return go


def test_fgamma(run):
    r = run("fgamma", "--p", 2, "--N0", 3, "--M", 2, "--C", 3, "--gamma", 3)
    assert r.exit_code == 0
    doc = json.loads(r.output)
    kinds = {(t["kind"], tuple(t["gens"])) for t in doc["terms"]}
    assert ("linear", ("D(3,0)",)) in kinds
    assert ("quad", ("D(1,0)", "D(1,1)")) in kinds


def test_herbrand_example(run):
    r = run("herbrand", "--q", 8, "--rstar", "5/7", "--eval", 12)
    doc = json.loads(r.output)
    assert Fr(doc["values"]["12"]) == Fr(5, 7) + (12 - Fr(5, 7)) / 8


def test_herbrand_csv(run):
    r = run("herbrand", "--q", 4, "--rstar", "3/2", "--format", "csv")
    assert r.output.splitlines() == ["x,y,slope_after", "3/2,3/2,1/4"]


def test_params_and_ideal(run):
    r = run("params", "--p", 2, "--N0", 1, "--M", 1, "--C", 3, "--v", "5/2")
    assert json.loads(r.output)["conditions"]["ok"]
    r = run("ideal", "--p", 2, "--N0", 1, "--M", 1, "--C", 3, "--v", 2)
    assert r.exit_code == 0
    assert json.loads(r.output)["chain"]["basis_ok"]


def test_autact_and_tower(run, tmp_path):
    out = tmp_path / "t.csv"
    r = run("autact", "--p", 3, "--N0", 1, "--C", 4, "--seed", 5, "--format", "csv", "--out", out)
    assert r.exit_code == 0
    assert out.read_text().startswith("a,b,m,alpha\n1,1,0,")
    r = run("tower", "--p", 2, "--N0", 1, "--C", 3, "--smax", 1, "--seed", 1)
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["towers"]["automorphism"]["special_admissible"]["ok"]
    assert not doc["towers"]["frobenius"]["special_admissible"]["ok"]


@pytest.mark.parametrize(
    "args",
    [
        ("fgamma", "--p", 4, "--gamma", 1),
        ("fgamma", "--p", 2, "--M", 0, "--gamma", 1),
        ("fgamma", "--gamma", "x"),
        ("herbrand", "--q", 4),
        ("fgamma", "--gamma", 1, "--format", "csv"),
        ("verify", "99"),
    ],
)
def test_usage_errors_exit_2(run, args):
    assert run(*args).exit_code == 2


def test_verify_is_deterministic_and_reports(run, tmp_path):
    args = ["verify", "4", "11d", "--p", 2, "--N0", 4, "--M", 2, "--C", 5, "--seed", 7]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(*args, "--out", a).exit_code == 0
    assert run(*args, "--out", b).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["ok"] and doc["failed"] == []
    assert [r["criterion"] for r in doc["results"]] == ["4", "11d", "config"]


def test_verify_failure_exits_1(run):
    r = run("verify", "9")
    assert r.exit_code == 1
    assert json.loads(r.output)["failed"] == ["9"]
