"""Typed AST for the specification language.

All node classes are frozen dataclasses; structural equality deliberately
ignores source spans and type annotations so that two parses of the same
text compare equal regardless of formatting.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Union


class Prim(Enum):
    SHORT = "short"
    INT = "int"
    LONG = "long"
    FLOAT = "float"
    DOUBLE = "double"
    BOOL = "bool"


@dataclass(frozen=True)
class ArrayType:
    elem: "TypeTag"

    def __str__(self) -> str:
        return f"{self.elem}[]"


TypeTag = Union[Prim, ArrayType]

VOID = "void"  # sentinel return type, not a TypeTag

# widening order among numeric primitives; BOOL is not numeric
_NUMERIC_RANK = {Prim.SHORT: 0, Prim.INT: 1, Prim.LONG: 2, Prim.FLOAT: 3, Prim.DOUBLE: 4}

INTEGER_PRIMS = (Prim.SHORT, Prim.INT, Prim.LONG)
REAL_PRIMS = (Prim.FLOAT, Prim.DOUBLE)


def is_numeric(t: TypeTag) -> bool:
    return isinstance(t, Prim) and t is not Prim.BOOL


def is_integer(t: TypeTag) -> bool:
    return isinstance(t, Prim) and t in INTEGER_PRIMS


def is_real(t: TypeTag) -> bool:
    return isinstance(t, Prim) and t in REAL_PRIMS


def is_array(t) -> bool:
    return isinstance(t, ArrayType)


def widen(a: TypeTag, b: TypeTag) -> Optional[TypeTag]:
    """Least common numeric type of two primitives, or None if not coercible."""
    if not (is_numeric(a) and is_numeric(b)):
        return None
    return a if _NUMERIC_RANK[a] >= _NUMERIC_RANK[b] else b


def type_to_str(t) -> str:
    if t == VOID:
        return "void"
    if isinstance(t, ArrayType):
        return f"{type_to_str(t.elem)}[]"
    return t.value


def type_from_str(s: str):
    """Inverse of type_to_str; raises ValueError on malformed names."""
    if s == "void":
        return VOID
    depth = 0
    while s.endswith("[]"):
        s = s[:-2]
        depth += 1
    try:
        t: TypeTag = Prim(s)
    except ValueError:
        raise ValueError(f"unknown type name: {s!r}")
    for _ in range(depth):
        t = ArrayType(t)
    return t


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0


NO_SPAN = Span(0, 0)


@dataclass(frozen=True)
class Expr:
    # resolved type and source span ride along but never affect equality
    ty: Optional[TypeTag] = field(default=None, compare=False, repr=False, kw_only=True)
    span: Span = field(default=NO_SPAN, compare=False, repr=False, kw_only=True)

    def with_ty(self, ty) -> "Expr":
        return replace(self, ty=ty)


@dataclass(frozen=True)
class IntLit(Expr):
    value: int = 0


@dataclass(frozen=True)
class RealLit(Expr):
    value: float = 0.0


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool = False


@dataclass(frozen=True)
class NullLit(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    name: str = ""


UNARY_OPS = ("not", "neg")
BINARY_OPS = (
    "and", "or",
    "eq", "neq", "lt", "le", "gt", "ge",
    "add", "sub", "mul", "div", "mod",
)
COMPARISON_OPS = ("eq", "neq", "lt", "le", "gt", "ge")
ARITH_OPS = ("add", "sub", "mul", "div", "mod")


@dataclass(frozen=True)
class Unary(Expr):
    op: str = "not"
    child: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Binary(Expr):
    op: str = "and"
    left: Expr = None  # type: ignore[assignment]
    right: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Imp(Expr):
    antecedent: Expr = None  # type: ignore[assignment]
    consequent: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Length(Expr):
    array: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Index(Expr):
    array: Expr = None  # type: ignore[assignment]
    index: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Quant(Expr):
    kind: str = "forall"  # "forall" | "exists"
    array: Expr = None  # type: ignore[assignment]
    binder: str = "i"
    body: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Signature:
    method_name: str
    params: tuple  # of (name, TypeTag)
    return_type: object  # TypeTag or VOID

    def param_map(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class Specification:
    signature: Signature
    pres: tuple  # of Expr
    posts: tuple  # of Expr


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class SpecError(Exception):
    """Raised by convenience wrappers when a source fails to parse/typecheck."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def conjoin(clauses) -> Expr:
    """Right-nested conjunction of Bool clauses; empty list is `true`."""
    clauses = list(clauses)
    if not clauses:
        return BoolLit(True, ty=Prim.BOOL)
    out = clauses[-1]
    for c in reversed(clauses[:-1]):
        out = Binary("and", c, out, ty=Prim.BOOL, span=c.span)
    return out


def free_vars(e: Expr, bound=frozenset()) -> set:
    """Names referenced by e that are not introduced by an enclosing binder."""
    if isinstance(e, Var):
        return set() if e.name in bound else {e.name}
    if isinstance(e, Unary):
        return free_vars(e.child, bound)
    if isinstance(e, Binary):
        return free_vars(e.left, bound) | free_vars(e.right, bound)
    if isinstance(e, Imp):
        return free_vars(e.antecedent, bound) | free_vars(e.consequent, bound)
    if isinstance(e, Length):
        return free_vars(e.array, bound)
    if isinstance(e, Index):
        return free_vars(e.array, bound) | free_vars(e.index, bound)
    if isinstance(e, Quant):
        return free_vars(e.array, bound) | free_vars(e.body, bound | {e.binder})
    return set()


def children(e: Expr) -> tuple:
    if isinstance(e, Unary):
        return (e.child,)
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, Imp):
        return (e.antecedent, e.consequent)
    if isinstance(e, Length):
        return (e.array,)
    if isinstance(e, Index):
        return (e.array, e.index)
    if isinstance(e, Quant):
        return (e.array, e.body)
    return ()
