"""Canonical normal form for boolean formulas.

Used to detect clauses that two specifications share in different but
equivalent spellings (e.g. `imp(a, b)` vs `!a || b`). The pipeline:

  1. rewrite implication to disjunction,
  2. push negations down to atoms (flipping comparison operators, dualizing
     quantifiers, eliminating double negation),
  3. flatten nested `&&` / `||`, deduplicate structurally equal operands and
     sort them by a deterministic structural key, then re-nest to the right.

Normalization is semantics-preserving under the evaluator's three-valued
semantics: De Morgan and comparison flipping both hold for the Undefined
case, since an undefined operand stays undefined on both sides.
"""

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
    Prim,
    Quant,
    RealLit,
    Unary,
    Var,
    children,
)

_NEG_CMP = {"eq": "neq", "neq": "eq", "lt": "ge", "ge": "lt", "le": "gt", "gt": "le"}
_DUAL_QUANT = {"forall": "exists", "exists": "forall"}


def _nnf(e: Expr, negate: bool) -> Expr:
    if isinstance(e, Imp):
        # imp(a, b) == !a || b
        return _nnf(Binary("or", Unary("not", e.antecedent), e.consequent,
                           ty=Prim.BOOL, span=e.span), negate)
    if isinstance(e, Unary) and e.op == "not":
        return _nnf(e.child, not negate)
    if isinstance(e, Binary) and e.op in ("and", "or"):
        op = e.op if not negate else ("or" if e.op == "and" else "and")
        return Binary(op, _nnf(e.left, negate), _nnf(e.right, negate),
                      ty=Prim.BOOL, span=e.span)
    if isinstance(e, Quant):
        kind = e.kind if not negate else _DUAL_QUANT[e.kind]
        return Quant(kind, e.array, e.binder, _nnf(e.body, negate),
                     ty=Prim.BOOL, span=e.span)
    if isinstance(e, BoolLit):
        return BoolLit(e.value != negate, ty=Prim.BOOL, span=e.span)
    if negate and isinstance(e, Binary) and e.op in _NEG_CMP:
        return Binary(_NEG_CMP[e.op], e.left, e.right, ty=Prim.BOOL, span=e.span)
    if negate:
        # atoms with no flipped form (bool variables) keep an explicit negation
        return Unary("not", e, ty=Prim.BOOL, span=e.span)
    return e


_KIND_TAG = {
    BoolLit: "0", IntLit: "1", RealLit: "2", NullLit: "3", Var: "4",
    Unary: "5", Binary: "6", Imp: "7", Length: "8", Index: "9", Quant: "q",
}


def struct_key(e: Expr) -> str:
    """Deterministic total ordering key: kind tag, operator/value, children."""
    tag = _KIND_TAG[type(e)]
    if isinstance(e, BoolLit):
        head = f"{tag}:{int(e.value)}"
    elif isinstance(e, IntLit):
        head = f"{tag}:{e.value}"
    elif isinstance(e, RealLit):
        head = f"{tag}:{e.value!r}"
    elif isinstance(e, Var):
        head = f"{tag}:{e.name}"
    elif isinstance(e, (Unary, Binary)):
        head = f"{tag}:{e.op}"
    elif isinstance(e, Quant):
        head = f"{tag}:{e.kind}:{e.binder}"
    else:
        head = tag
    parts = [struct_key(c) for c in children(e)]
    return "(" + head + "".join(parts) + ")"


def _flatten(e: Expr, op: str, out: list):
    if isinstance(e, Binary) and e.op == op:
        _flatten(e.left, op, out)
        _flatten(e.right, op, out)
    else:
        out.append(e)


def _canon(e: Expr) -> Expr:
    if isinstance(e, Binary) and e.op in ("and", "or"):
        operands: list = []
        _flatten(e, e.op, operands)
        operands = [_canon(c) for c in operands]
        seen = {}
        for c in operands:
            seen.setdefault(struct_key(c), c)
        uniq = [seen[k] for k in sorted(seen)]
        out = uniq[-1]
        for c in reversed(uniq[:-1]):
            out = Binary(e.op, c, out, ty=Prim.BOOL, span=e.span)
        return out
    if isinstance(e, Quant):
        return Quant(e.kind, e.array, e.binder, _canon(e.body), ty=Prim.BOOL, span=e.span)
    if isinstance(e, Unary) and e.op == "not":
        return Unary("not", _canon(e.child), ty=Prim.BOOL, span=e.span)
    return e


def _alpha(e: Expr, depth: int, ren: dict, taken: frozenset) -> Expr:
    """Rename quantifier binders to canonical depth-indexed names."""
    from dataclasses import replace

    if isinstance(e, Var):
        if e.name in ren:
            return replace(e, name=ren[e.name])
        return e
    if isinstance(e, Quant):
        fresh = f"_i{depth}"
        while fresh in taken:
            fresh = "_" + fresh
        body = _alpha(e.body, depth + 1, {**ren, e.binder: fresh}, taken)
        arr = _alpha(e.array, depth, ren, taken)
        return replace(e, array=arr, binder=fresh, body=body)
    kids = children(e)
    if not kids:
        return e
    from dataclasses import fields as dc_fields

    new = {}
    for f in dc_fields(e):
        v = getattr(e, f.name)
        if isinstance(v, Expr):
            new[f.name] = _alpha(v, depth, ren, taken)
    from dataclasses import replace as dc_replace

    return dc_replace(e, **new)


def normalize(e: Expr) -> Expr:
    """Canonical form of a typechecked Bool expression."""
    from .ast import free_vars

    taken = frozenset(free_vars(e))
    return _canon(_nnf(_alpha(e, 0, {}, taken), negate=False))
