from specgame.ast import ArrayType, Prim, Signature
from specgame.oracle import (
    UNDEF,
    OracleDomain,
    all_assignments,
    domain_values,
    equivalent,
    holds,
    quadrant_counts,
    truth,
)

from conftest import SIG_X, compile_expr


def test_domain_values_ints():
    assert domain_values(Prim.INT) == [-2, -1, 0, 1, 2]
    assert domain_values(Prim.BOOL) == [False, True]


def test_domain_values_arrays_count():
    vals = domain_values(ArrayType(Prim.INT))
    # null + sum of 5^n for n in 0..3
    assert len(vals) == 1 + 1 + 5 + 25 + 125
    assert vals[0] is None
    assert [] in vals


def test_all_assignments_cardinality():
    sig = Signature("f", (("x", Prim.INT), ("p", Prim.BOOL)), Prim.INT)
    assert sum(1 for _ in all_assignments(sig, False)) == 10
    assert sum(1 for _ in all_assignments(sig, True)) == 50


def test_truth_three_valued():
    e = compile_expr("x / y > 0", Signature("f", (("x", Prim.INT), ("y", Prim.INT)), "void"))
    assert truth(e, {"x": 4, "y": 2}) is True
    assert truth(e, {"x": 1, "y": -1}) is False
    assert truth(e, {"x": 1, "y": 0}) is UNDEF
    assert holds(e, {"x": 1, "y": 0}) is False


def test_quadrants_strict_vs_nonstrict():
    m = compile_expr("x > 0", SIG_X)
    s = compile_expr("x >= 0", SIG_X)
    counts, total, wit = quadrant_counts(m, s, SIG_X, False, want_witness=True)
    assert total == 5
    assert counts == {"MS": 2, "MnS": 0, "nMS": 1, "nMnS": 2}
    assert wit["nMS"] == {"x": 0}


def test_equivalent_modulo_rewriting():
    sig = Signature("f", (("x", Prim.INT), ("y", Prim.INT)), "void")
    m = compile_expr("imp(x > 0, y > 0)", sig)
    s = compile_expr("!(x > 0) || y > 0", sig)
    assert equivalent(m, s, sig, False)
    t = compile_expr("y > 0", sig)
    assert not equivalent(m, t, sig, False)


def test_undef_collapses_consistently_in_quadrants():
    sig = Signature("f", (("a", ArrayType(Prim.INT)),), "void")
    m = compile_expr("a != null", sig)
    s = compile_expr("a.length > 0", sig)
    counts, total, wit = quadrant_counts(m, s, sig, False, want_witness=True)
    # a = null: M false, S undefined -> effectively false -> nMnS
    assert counts["nMnS"] == 1
    assert wit["nMnS"] == {"a": None}
    assert counts["nMS"] == 0


def test_custom_domain():
    dom = OracleDomain(ints=(0, 1), max_array_len=1, include_null=False)
    vals = domain_values(ArrayType(Prim.INT), dom)
    assert vals == [[], [0], [1]]
