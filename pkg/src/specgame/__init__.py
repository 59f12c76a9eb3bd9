"""Pre/post-condition specification checking and game backend."""

__version__ = "0.1.0"

from .ast import (  # noqa: F401
    ArrayType,
    Binary,
    BoolLit,
    Diagnostic,
    Expr,
    Imp,
    Index,
    IntLit,
    Length,
    NullLit,
    Prim,
    Quant,
    RealLit,
    Signature,
    SpecError,
    Specification,
    Unary,
    VOID,
    Var,
    conjoin,
)
from .evaluator import EvalConfig, EvalResult, evaluate, gen_assignment  # noqa: F401
from .normalize import normalize  # noqa: F401
from .parser import parse, parse_expr_text  # noqa: F401
from .pretty import pretty_expr, pretty_spec  # noqa: F401
from .typecheck import load_spec, typecheck, typecheck_expr  # noqa: F401
