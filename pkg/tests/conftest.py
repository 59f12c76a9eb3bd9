import pytest

from specgame.ast import ArrayType, Prim, Signature, VOID
from specgame.parser import parse_expr_text
from specgame.typecheck import load_spec, typecheck_expr

GETMAX_SRC = """\
method getMax(a: int[]) -> int;
pre(a != null);
pre(a.length > 0);
post(exists(a, i -> a[i] == retval));
post(forall(a, i -> a[i] <= retval));
"""

GETMAX_WEAK_SRC = """\
method getMax(a: int[]) -> int;
pre(a != null);
pre(a.length > 0);
post(exists(a, i -> a[i] == retval));
"""

GETMAX_STRONG_SRC = """\
method getMax(a: int[]) -> int;
pre(a != null);
pre(a.length > 0);
pre(a.length > 1);
post(exists(a, i -> a[i] == retval));
post(forall(a, i -> a[i] <= retval));
"""

# two ints and an int array; the workhorse signature for small formulas
SIG_XYA = Signature("f", (("x", Prim.INT), ("y", Prim.INT),
                          ("a", ArrayType(Prim.INT))), VOID)
SIG_X = Signature("f", (("x", Prim.INT),), VOID)
SIG_XA = Signature("f", (("x", Prim.INT), ("a", ArrayType(Prim.INT))), Prim.INT)


def compile_expr(source: str, sig=SIG_XYA, in_post=False):
    """Parse + typecheck a single expression, failing the test on errors."""
    e, diags = parse_expr_text(source)
    assert not diags, diags
    t, diags = typecheck_expr(e, sig, in_post)
    assert not diags, diags
    return t


@pytest.fixture
def getmax():
    spec, diags = load_spec(GETMAX_SRC)
    assert not diags, diags
    return spec


@pytest.fixture
def getmax_weak():
    spec, diags = load_spec(GETMAX_WEAK_SRC)
    assert not diags, diags
    return spec


@pytest.fixture
def getmax_strong():
    spec, diags = load_spec(GETMAX_STRONG_SRC)
    assert not diags, diags
    return spec
