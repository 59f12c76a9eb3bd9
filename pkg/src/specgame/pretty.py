"""Pretty-printer producing text that re-parses to the same AST."""

from __future__ import annotations

from .ast import (
    Binary,
    BoolLit,
    Expr,
    Imp,
    Index,
    IntLit,
    Length,
    NullLit,
    Quant,
    RealLit,
    Signature,
    Specification,
    Unary,
    VOID,
    Var,
    type_to_str,
)

_BIN_SYM = {
    "and": "&&", "or": "||",
    "eq": "==", "neq": "!=", "lt": "<", "le": "<=", "gt": ">", "ge": ">=",
    "add": "+", "sub": "-", "mul": "*", "div": "/", "mod": "%",
}

# precedence tiers, higher binds tighter
_PREC = {
    "or": 1, "and": 2,
    "eq": 3, "neq": 3, "lt": 3, "le": 3, "gt": 3, "ge": 3,
    "add": 4, "sub": 4, "mul": 5, "div": 5, "mod": 5,
}
_UNARY_PREC = 6
_POSTFIX_PREC = 7


def pretty_expr(e: Expr, parent_prec: int = 0) -> str:
    if isinstance(e, IntLit):
        # negative values re-parse as unary minus; identity holds on parser output
        if e.value < 0:
            return pretty_expr(Unary("neg", IntLit(-e.value)), parent_prec)
        return str(e.value)
    if isinstance(e, RealLit):
        if e.value < 0:
            return pretty_expr(Unary("neg", RealLit(-e.value)), parent_prec)
        s = repr(e.value)
        return s if any(c in s for c in ".eE") else s + ".0"
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, NullLit):
        return "null"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        sym = "!" if e.op == "not" else "-"
        s = sym + pretty_expr(e.child, _UNARY_PREC)
        return f"({s})" if parent_prec > _UNARY_PREC else s
    if isinstance(e, Binary):
        prec = _PREC[e.op]
        # all tiers are left-associative: right child needs prec+1
        s = (pretty_expr(e.left, prec) + " " + _BIN_SYM[e.op] + " "
             + pretty_expr(e.right, prec + 1))
        return f"({s})" if parent_prec > prec else s
    if isinstance(e, Imp):
        return f"imp({pretty_expr(e.antecedent)}, {pretty_expr(e.consequent)})"
    if isinstance(e, Length):
        return pretty_expr(e.array, _POSTFIX_PREC) + ".length"
    if isinstance(e, Index):
        return pretty_expr(e.array, _POSTFIX_PREC) + "[" + pretty_expr(e.index) + "]"
    if isinstance(e, Quant):
        return f"{e.kind}({pretty_expr(e.array)}, {e.binder} -> {pretty_expr(e.body)})"
    raise ValueError(f"cannot pretty-print {type(e).__name__}")


def pretty_signature(sig: Signature) -> str:
    params = ", ".join(f"{n}: {type_to_str(t)}" for n, t in sig.params)
    rt = "void" if sig.return_type == VOID else type_to_str(sig.return_type)
    return f"method {sig.method_name}({params}) -> {rt};"


def pretty_spec(spec: Specification) -> str:
    lines = [pretty_signature(spec.signature)]
    lines += [f"pre({pretty_expr(c)});" for c in spec.pres]
    lines += [f"post({pretty_expr(c)});" for c in spec.posts]
    return "\n".join(lines) + "\n"
