import pytest

import krsym


def test_normal_form_and_order():
    assert krsym.normal_form("Z3 x 1 x Z2") == "Z2 x Z3"
    assert krsym.order("Z2 wr Z3") == 24


def test_realize_assemble_roundtrip():
    krt = krsym.realize("(Z2 x Z2) wr Z3")
    assert krsym.assemble(krt) == "(Z2 x Z2) wr Z3"
    report = krsym.roundtrip("Z2 wr Z2", surface="cylinder")
    assert report["ok"]
    assert report["order"] == 8


def test_oracle_matches_assembly():
    krt = krsym.realize("Z2 wr Z3")
    assert krsym.oracle_order(krt) == 24
    assert krsym.oracle_agrees(krt)


def test_analyze_example():
    r = krsym.analyze("Z2 wr (Z2 x Z2)")
    assert r["verdict"] == "NotInR"
    assert r["summary"] == "NotInR: indecomposable (no unique 4th roots) and top Z2xZ2 not cyclic"


def test_jordan_and_decompose():
    star = "tree 5\nedge 0 1\nedge 0 2\nedge 0 3\nedge 0 4\n"
    assert krsym.jordan(star) == "S4"
    act = star + "gen 0 2 3 4 1\n"
    expr, labels = krsym.decompose(act)
    assert expr == "Z4"
    assert sorted(labels) == [1, 2, 3, 4]


def test_reeb_on_fixtures():
    fx = krsym.fixture("bump-disk-3")
    summary = krsym.reeb(fx["positions"], fx["triangles"], fx["values"])
    assert summary["tree"]
    assert summary["vertices"] == 5
    assert summary["group"] == "Z3"
    torus = krsym.fixture("torus")
    summary = krsym.reeb(torus["positions"], torus["triangles"], torus["values"])
    assert not summary["tree"]
    assert summary["krt"] is None


def test_errors_carry_kind():
    with pytest.raises(krsym.KrsymError) as info:
        krsym.order("Z2 wr")
    assert info.value.kind == "ParseError"
    with pytest.raises(krsym.KrsymError) as info:
        krsym.reeb([[0, 0, 0], [1, 0, 0], [0, 1, 0]], [[0, 1, 2]], [0.0, 1.0])
    assert info.value.kind == "CountMismatch"
