import pytest

import dimfn


def test_eliminate_dense_order():
    assert dimfn.eliminate("E y. x1 < y & y < x2", "dlo") == "x1 < x2"


def test_dim_examples():
    assert dimfn.dim("U1(x1)", "wom:2", "w:1") == 0
    assert dimfn.dim("U2(x1)", "wom:2", "w:1") == 1
    assert dimfn.dim("U1(x2 - x1)", "wom:1") == 2
    assert dimfn.dim("U1(x2 - x1)", "wom:1", "w:1") == 1
    empty = dimfn.dim("x1 < x1", "dlo")
    assert empty.is_neg_inf and empty.value is None and str(empty) == "-inf"


def test_classify_emits_split():
    c = dimfn.classify("U1(x2 - x1)", "wom:1", "w:1")
    assert c == {"projection": "true", "x1": "false", "x0": "true"}


def test_evaluate_and_sat():
    assert dimfn.evaluate("U2(x1)", "wom:2", {1: "[0,1,0]"})
    assert not dimfn.evaluate("U2(x1)", "wom:2", {1: "[1,0,0]"})
    assert dimfn.sat("x1 > [0,0,0] & x1 < [0,1,0] & !U1(x1)", "wom:2") == ("[0,1/2,0]", "midpoint")
    assert dimfn.sat("x1 < x1", "dlo") is None


def test_census_reports():
    assert dimfn.census("concat:2")["distinct_count"] == 3
    assert dimfn.census("concat:3")["distinct_count"] == 7
    assert dimfn.census("dlo")["distinct_count"] == 4
    assert dimfn.census("wom:3")["distinct_count"] == 4


def test_small_suites_pass():
    r = dimfn.check_axioms("wom:2", "w:2", seed=3, samples=10)
    assert r["engine"] == "w:2"
    assert all(s["failed"] == 0 for s in r["suites"])
    q = dimfn.cross_check_qe("concat:2", seed=3, samples=30)
    assert all(s["failed"] == 0 for s in q["suites"])


def test_user_errors_raise():
    with pytest.raises(ValueError):
        dimfn.eliminate("U3(x1)", "wom:2")
    with pytest.raises(ValueError):
        dimfn.dim("x1 < 0", "dlo", "w:1")
