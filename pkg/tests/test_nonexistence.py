import json

import pytest

from sodforge.golay import BudgetExceeded
from sodforge.nonexistence import candidate_rows, search_full_sh, search_sod, search_sw
from sodforge.signed_group import SR
from sodforge.verify import verify_sod


@pytest.mark.parametrize(
    "run,problem",
    [
        (lambda: search_sw(6, 3, "SR"), "SW(6,3)"),
        (lambda: search_sw(6, 3, "SC"), "SW(6,3)"),
        (lambda: search_sod(6, (2, 2, 2), "SR"), "SOD(6;2,2,2)"),
        (lambda: search_sod(6, (3, 3), "SR"), "SOD(6;3,3)"),
        (lambda: search_full_sh(3), "SH(3)"),
        (lambda: search_full_sh(5), "SH(5)"),
    ],
)
def test_exhausts_without_witness(run, problem):
    rep = run()
    assert rep.problem == problem
    assert rep.result == "none" and rep.witness is None
    assert "exhaustive" in rep.note


@pytest.mark.parametrize(
    "run",
    [lambda: search_sw(4, 4, "SR"), lambda: search_full_sh(2), lambda: search_sod(4, (1, 1, 2), "SQ"), lambda: search_sw(2, 1)],
)
def test_finds_witness(run):
    rep = run()
    assert rep.found
    assert verify_sod(rep.witness).ok


def test_hadamard_witness_shape():
    w = search_sw(4, 4).witness
    assert w.presentation == SR and w.is_full()


def test_node_counts_reproducible():
    a = search_sw(6, 3, "SC")
    b = search_sw(6, 3, "SC")
    assert a.nodes == b.nodes > 0


def test_parallel_matches_sequential():
    seq = search_sod(6, (3, 3), "SR")
    par = search_sod(6, (3, 3), "SR", jobs=2)
    assert par.result == seq.result == "none"
    assert par.nodes == seq.nodes


def test_reduction_consistency():
    # SOD(6; 3, 3) absent implies SW(6, 3) absent over the same group
    assert search_sod(6, (3, 3), "SR").result == "none"
    assert search_sw(6, 3, "SR").result == "none"


def test_candidate_rows_are_normalized():
    rows = candidate_rows(SR, 6, [3])
    assert len(rows) == 20 * 4
    for r in rows:
        first = next(e for e in r if e is not None)
        assert first[:2] == (1, 0)


def test_guards():
    with pytest.raises(BudgetExceeded):
        search_sw(6, 3, "SQ")
    with pytest.raises(BudgetExceeded):
        search_sw(6, 3, "SC", budget=5)
    with pytest.raises(ValueError):
        search_sw(9, 3)
    with pytest.raises(ValueError):
        search_sod(6, (4, 4))
    with pytest.raises(ValueError):
        search_sw(4, 2, "S3")


def test_budget_env(monkeypatch):
    monkeypatch.setenv("SODFORGE_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        search_sw(6, 3, "SR")


def test_report_json():
    d = json.loads(search_sod(4, (1, 1, 2), "SQ").to_json())
    assert d["result"] == "found"
    assert set(d) >= {"result", "nodes", "elapsed", "normalization", "witness"}
    assert len(d["witness"]) == 4
