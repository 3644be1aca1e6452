"""Every acceptance criterion at its time limit, one summary line each.

The suite functions live in ``wittram.verify`` so that ``wittram verify``
runs exactly the same checks.  Criterion 13 reruns all of them and compares
the serialized reports byte for byte.
"""

import json
import time

import pytest
from click.testing import CliRunner

from wittram import verify
from wittram.cli import main

SEED = 0

LIMITS = {
    "1": 5,
    "2": 10,
    "3": 10,
    "4": 20,
    "5": 20,
    "6": 5,
    "7": 30,
    "8": 30,
    "9": 30,
    "10": 60,
    "11a": 30,
    "11b": 30,
    "11c": 30,
    "11d": 30,
    "11e": 30,
    "11f": 30,
    "11g": 30,
    "12": 20,
}

KNOWN_FAILURES = {
    "9": (
        "adm2 terms p^s D(a1,0) D(a2,-1) with s >= 1 under v = c + 1/p occur in no "
        "F_gamma(v): the matching bracket has integer gamma, where F_gamma(v) has no brackets"
    ),
}

_runs = {}


def _run(cid):
    if cid not in _runs:
        t = time.perf_counter()
        r = verify.SUITE[cid](SEED)
        _runs[cid] = (r, time.perf_counter() - t)
    return _runs[cid]


def _params():
    out = []
    for cid in LIMITS:
        marks = []
        if cid in KNOWN_FAILURES:
            marks.append(pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[cid]))
        out.append(pytest.param(cid, marks=marks, id=f"criterion-{cid}"))
    return out


@pytest.mark.parametrize("cid", _params())
def test_criterion(cid, acceptance_line):
    r, dt = _run(cid)
    limit = LIMITS[cid]
    ok = r.ok and dt < limit
    detail = f"{r.cases} cases, {dt:.2f} s (limit {limit} s)"
    if r.failures:
        detail += f", {len(r.failures)} failures, first {r.failures[0]}"
    acceptance_line(f"criterion {cid:>4}: {'PASS' if ok else 'FAIL'}  {r.name}; {detail}")
    assert r.ok, r.failures[:5]
    assert dt < limit, f"took {dt:.2f} s"


def test_criterion_13_determinism(acceptance_line):
    mismatched = []
    for cid in LIMITS:
        first, _ = _run(cid)
        again = verify.SUITE[cid](SEED)
        if json.dumps(first.to_json(), sort_keys=True) != json.dumps(again.to_json(), sort_keys=True):
            mismatched.append(cid)
    runner = CliRunner()
    args = ["verify", "1", "4", "6", "--p", "2", "--N0", "4", "--M", "2", "--C", "5", "--seed", "7"]
    outs = [runner.invoke(main, args).output for _ in range(2)]
    cli_same = outs[0] == outs[1] and outs[0]
    ok = not mismatched and bool(cli_same)
    acceptance_line(
        f"criterion   13: {'PASS' if ok else 'FAIL'}  byte-identical reruns; "
        f"{len(LIMITS)} suites rerun, mismatches {mismatched}, CLI repeat identical {bool(cli_same)}"
    )
    assert not mismatched
    assert cli_same
