from __future__ import annotations

import pytest

from optensor.operad import CapacityError
from optensor.verify import (DEFAULT_BOUNDS, FAIL, PASS, SUITES, Case, UnknownSuite,
                             VerificationReport, run_verify, simplex_tree_mismatches, suite_specs)


def test_every_suite_has_defaults():
    assert set(SUITES) == set(DEFAULT_BOUNDS)


@pytest.mark.parametrize("suite", SUITES)
def test_specs_are_unique(suite):
    ids = [cid for cid, _, _ in suite_specs(suite)]
    assert ids and len(ids) == len(set(ids))


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_verify("bogus")


@pytest.mark.parametrize("suite,bounds", [
    ("binodal", {"nodes": 8}),
    ("tconstruction", {"recover": [[1, 20]]}),
    ("interchange", {"m": 4}),
])
def test_budget(suite, bounds):
    with pytest.raises(CapacityError):
        suite_specs(suite, bounds)


def test_kcomplex_suite_passes():
    rep = run_verify("kcomplex")
    assert rep.passed and rep.counts()[PASS] == 3


def test_report_is_deterministic():
    a = run_verify("words", seed=3).to_json()
    b = run_verify("words", seed=3).to_json()
    assert a == b and "wall_time" not in a


def test_report_text():
    rep = VerificationReport("x", [Case("x/a", PASS), Case("x/b", FAIL, {"n": 1})])
    assert not rep.passed
    assert rep.to_text().splitlines()[-1] == "x: 1 pass, 1 fail, 0 unstable"


def test_simplex_table_reproduced():
    assert simplex_tree_mismatches() == []


def test_laws_suite_small():
    rep = run_verify("laws", {"random": 2, "arity": 2})
    assert rep.passed
