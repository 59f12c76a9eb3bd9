import pytest

from specgame.ast import ArrayType, Prim, Signature
from specgame.evaluator import EvalConfig, evaluate, gen_assignment, wrap64
from specgame.oracle import UNDEF, all_assignments, truth

from conftest import SIG_XA, SIG_XYA, compile_expr

SIG_A = Signature("getMax", (("a", ArrayType(Prim.INT)),), Prim.INT)


def ev(source, assignment, sig=SIG_XYA, in_post=False, cfg=EvalConfig()):
    return evaluate(compile_expr(source, sig, in_post), assignment, cfg)


# -- assignment generation ---------------------------------------------------

def test_gen_assignment_deterministic():
    a1 = gen_assignment(SIG_A, True, EvalConfig(), seed=99)
    a2 = gen_assignment(SIG_A, True, EvalConfig(), seed=99)
    assert a1 == a2
    assert set(a1) == {"a", "retval"}


def test_gen_assignment_zero_len_arrays():
    cfg = EvalConfig(max_array_len=0, null_probability=0.0)
    for seed in range(50):
        a = gen_assignment(SIG_A, False, cfg, seed)
        assert a["a"] == []


def test_gen_assignment_null_probability_one():
    cfg = EvalConfig(null_probability=1.0)
    a = gen_assignment(SIG_A, False, cfg, 0)
    assert a["a"] is None


def test_gen_assignment_respects_ranges():
    cfg = EvalConfig(int_range=(-2, 2), max_array_len=3)
    for seed in range(200):
        a = gen_assignment(SIG_XYA, False, cfg, seed)
        assert -2 <= a["x"] <= 2 and -2 <= a["y"] <= 2
        if a["a"] is not None:
            assert len(a["a"]) <= 3
            assert all(-2 <= v <= 2 for v in a["a"])


def test_eval_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(quant_bound=0)
    with pytest.raises(ValueError):
        EvalConfig(int_range=(5, -5))
    with pytest.raises(ValueError):
        EvalConfig(null_probability=1.5)


# -- three-valued semantics --------------------------------------------------

def test_short_circuit_protects_null_deref():
    r = ev("a != null && a.length > 0", {"x": 0, "y": 0, "a": None})
    assert r.value is False and not r.undefined


def test_or_absorbs_undefined():
    r = ev("x > 0 || a[0] == 1", {"x": 5, "y": 0, "a": None})
    assert r.value is True


def test_null_deref_is_undefined():
    r = ev("a[0] == 0", {"x": 0, "y": 0, "a": None})
    assert r.undefined and r.reason == "nullDeref"
    assert r.as_bool() is False


def test_index_out_of_bounds():
    r = ev("a[5] == 0", {"x": 0, "y": 0, "a": [1, 2]})
    assert r.undefined and r.reason == "indexOOB"
    r = ev("a[-1] == 0", {"x": 0, "y": 0, "a": [1, 2]})
    assert r.reason == "indexOOB"


def test_integer_division_by_zero():
    r = ev("x / y == 1", {"x": 3, "y": 0, "a": []})
    assert r.undefined and r.reason == "divByZero"
    r = ev("x % y == 1", {"x": 3, "y": 0, "a": []})
    assert r.reason == "divByZero"


def test_truncated_division_and_modulo():
    # Java semantics: quotient truncates toward zero, remainder keeps the
    # dividend's sign
    assert ev("x / y == -3", {"x": -7, "y": 2, "a": []}).value is True
    assert ev("x % y == -1", {"x": -7, "y": 2, "a": []}).value is True
    assert ev("x / y == 3", {"x": 7, "y": -2, "a": []}).value is False
    assert ev("x / y == -3", {"x": 7, "y": -2, "a": []}).value is True
    assert ev("x % y == 1", {"x": 7, "y": -2, "a": []}).value is True


def test_64_bit_wrapping():
    assert wrap64(2**63) == -(2**63)
    assert wrap64(-(2**63) - 1) == 2**63 - 1
    big = 2**62
    r = ev("x * y > 0", {"x": big, "y": 4, "a": []})
    assert r.value is False  # wrapped to zero


def test_empty_array_quantifiers():
    env = {"x": 0, "y": 0, "a": []}
    assert ev("forall(a, i -> a[i] == 0)", env).value is True
    assert ev("exists(a, i -> a[i] == 0)", env).value is False


def test_quantifier_finds_witness():
    env = {"x": 0, "y": 0, "a": [1, 2, 3]}
    assert ev("exists(a, i -> a[i] == 2)", env).value is True
    assert ev("forall(a, i -> a[i] > 0)", env).value is True
    assert ev("forall(a, i -> a[i] > 1)", env).value is False


def test_quantifier_truncation_is_approximate():
    cfg = EvalConfig(quant_bound=2)
    env = {"x": 0, "y": 0, "a": [1, 1, 0]}
    r = ev("forall(a, i -> a[i] == 1)", env, cfg=cfg)
    assert r.value is True and r.approx
    r = ev("exists(a, i -> a[i] == 0)", env, cfg=cfg)
    assert r.value is False and r.approx


def test_truncated_quantifier_decisive_witness_is_exact():
    cfg = EvalConfig(quant_bound=2)
    env = {"x": 0, "y": 0, "a": [1, 0, 1]}
    r = ev("forall(a, i -> a[i] == 1)", env, cfg=cfg)
    assert r.value is False and not r.approx
    r = ev("exists(a, i -> a[i] == 0)", env, cfg=cfg)
    assert r.value is True and not r.approx


def test_boolean_equality():
    assert ev("(x > 0) == (y > 0)", {"x": 1, "y": 2, "a": []}).value is True
    assert ev("(x > 0) == (y > 0)", {"x": 1, "y": -2, "a": []}).value is False
    assert ev("(x > 0) != (y > 0)", {"x": 1, "y": -2, "a": []}).value is True
    assert ev("(x > 0) == true", {"x": 1, "y": 0, "a": []}).value is True
    # an undefined operand makes the whole equality undefined
    r = ev("(a[0] > 0) == true", {"x": 0, "y": 0, "a": None})
    assert r.undefined and r.reason == "nullDeref"


def test_imp_kleene_table():
    env = {"x": 0, "y": 0, "a": None}
    # antecedent false rescues an undefined consequent
    assert ev("imp(x > 0, a[0] == 1)", env).value is True
    # undefined antecedent with true consequent is true
    assert ev("imp(a[0] == 1, x == 0)", env).value is True
    # undefined antecedent with false consequent stays undefined
    assert ev("imp(a[0] == 1, x == 1)", env).undefined


def test_real_equality_epsilon():
    sig = Signature("f", (("d", Prim.DOUBLE),), "void")
    e = compile_expr("d == 1.0", sig)
    assert evaluate(e, {"d": 1.0 + 1e-12}).value is True
    assert evaluate(e, {"d": 1.0 + 1e-6}).value is False


def test_array_equality_elementwise():
    sig = Signature("f", (("a", ArrayType(Prim.INT)), ("b", ArrayType(Prim.INT))), "void")
    e = compile_expr("a == b", sig)
    assert evaluate(e, {"a": [1, 2], "b": [1, 2]}).value is True
    assert evaluate(e, {"a": [1, 2], "b": [1, 3]}).value is False
    assert evaluate(e, {"a": [1], "b": [1, 1]}).value is False
    # null operand makes array equality false, not undefined
    assert evaluate(e, {"a": None, "b": [1]}).value is False
    assert evaluate(e, {"a": None, "b": None}).value is False


def test_null_literal_comparison():
    env = {"x": 0, "y": 0, "a": None}
    assert ev("a == null", env).value is True
    assert ev("a != null", env).value is False
    assert ev("a == null", {"x": 0, "y": 0, "a": []}).value is False


# -- agreement with the independent oracle ----------------------------------

def test_evaluator_agrees_with_oracle_exhaustively():
    sources = [
        "x > 0 && y % x == 1",
        "imp(a != null, forall(a, i -> a[i] <= x))",
        "exists(a, i -> a[i] == a[i + 1]) || a.length < 2",
        "!(x / y >= 0) || x == y",
        "a[x] > 0 && x < a.length",
    ]
    cfg = EvalConfig(int_range=(-2, 2), max_array_len=3, quant_bound=8)
    for src in sources:
        e = compile_expr(src, SIG_XYA if "a" not in src else SIG_XYA)
        for env in all_assignments(SIG_XYA, False):
            got = evaluate(e, env, cfg)
            want = truth(e, env)
            if want is UNDEF:
                assert got.undefined, (src, env)
            else:
                assert got.value is want and not got.undefined, (src, env)
            assert not got.approx
