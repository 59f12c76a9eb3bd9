"""JSON wire format for ASTs and specifications.

Shared verbatim with the browser block editor. Schema per node:

    {"kind": "and", "type": "bool", "children": [...]}
    {"kind": "int", "type": "int", "value": 3}
    {"kind": "var", "type": "int[]", "name": "a"}
    {"kind": "forall", "type": "bool", "binder": "i", "children": [arr, body]}

A Specification document:

    {"signature": {"name": ..., "params": [{"name":..., "type":...}],
                   "returnType": ...},
     "pres": [...], "posts": [...]}
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
    Quant,
    RealLit,
    Signature,
    Specification,
    Unary,
    VOID,
    Var,
    type_from_str,
    type_to_str,
)

BINARY_KINDS = ("and", "or", "eq", "neq", "lt", "le", "gt", "ge",
                "add", "sub", "mul", "div", "mod")


class AstDocError(ValueError):
    """Malformed AST document: unknown kind, bad arity, or bad payload."""


def _ty_str(e: Expr):
    return type_to_str(e.ty) if e.ty is not None else None


def serialize_expr(e: Expr) -> dict:
    d: dict = {}
    if isinstance(e, IntLit):
        d = {"kind": "int", "value": e.value}
    elif isinstance(e, RealLit):
        d = {"kind": "real", "value": e.value}
    elif isinstance(e, BoolLit):
        d = {"kind": "bool", "value": e.value}
    elif isinstance(e, NullLit):
        d = {"kind": "null"}
    elif isinstance(e, Var):
        d = {"kind": "var", "name": e.name}
    elif isinstance(e, Unary):
        d = {"kind": e.op, "children": [serialize_expr(e.child)]}
    elif isinstance(e, Binary):
        d = {"kind": e.op, "children": [serialize_expr(e.left), serialize_expr(e.right)]}
    elif isinstance(e, Imp):
        d = {"kind": "imp",
             "children": [serialize_expr(e.antecedent), serialize_expr(e.consequent)]}
    elif isinstance(e, Length):
        d = {"kind": "length", "children": [serialize_expr(e.array)]}
    elif isinstance(e, Index):
        d = {"kind": "index",
             "children": [serialize_expr(e.array), serialize_expr(e.index)]}
    elif isinstance(e, Quant):
        d = {"kind": e.kind, "binder": e.binder,
             "children": [serialize_expr(e.array), serialize_expr(e.body)]}
    else:
        raise AstDocError(f"cannot serialize {type(e).__name__}")
    ty = _ty_str(e)
    if ty is not None:
        d["type"] = ty
    return d


def _need_children(d: dict, n: int, kind: str) -> list:
    kids = d.get("children")
    if not isinstance(kids, list) or len(kids) != n:
        got = len(kids) if isinstance(kids, list) else "none"
        raise AstDocError(f"node kind {kind!r} expects {n} children, got {got}")
    return kids


def parse_expr_doc(d) -> Expr:
    if not isinstance(d, dict) or "kind" not in d:
        raise AstDocError("AST node must be an object with a 'kind' field")
    kind = d["kind"]
    if kind == "int":
        v = d.get("value")
        if not isinstance(v, int) or isinstance(v, bool):
            raise AstDocError("int node needs an integer 'value'")
        return IntLit(v)
    if kind == "real":
        v = d.get("value")
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise AstDocError("real node needs a numeric 'value'")
        return RealLit(float(v))
    if kind == "bool":
        v = d.get("value")
        if not isinstance(v, bool):
            raise AstDocError("bool node needs a boolean 'value'")
        return BoolLit(v)
    if kind == "null":
        return NullLit()
    if kind == "var":
        name = d.get("name")
        if not isinstance(name, str) or not name:
            raise AstDocError("var node needs a 'name'")
        return Var(name)
    if kind in ("not", "neg"):
        (c,) = _need_children(d, 1, kind)
        return Unary(kind, parse_expr_doc(c))
    if kind in BINARY_KINDS:
        l, r = _need_children(d, 2, kind)
        return Binary(kind, parse_expr_doc(l), parse_expr_doc(r))
    if kind == "imp":
        a, b = _need_children(d, 2, kind)
        return Imp(parse_expr_doc(a), parse_expr_doc(b))
    if kind == "length":
        (a,) = _need_children(d, 1, kind)
        return Length(parse_expr_doc(a))
    if kind == "index":
        a, i = _need_children(d, 2, kind)
        return Index(parse_expr_doc(a), parse_expr_doc(i))
    if kind in ("forall", "exists"):
        a, b = _need_children(d, 2, kind)
        binder = d.get("binder")
        if not isinstance(binder, str) or not binder:
            raise AstDocError(f"{kind} node needs a 'binder'")
        return Quant(kind, parse_expr_doc(a), binder, parse_expr_doc(b))
    raise AstDocError(f"unknown node kind {kind!r}")


def serialize_signature(sig: Signature) -> dict:
    return {
        "name": sig.method_name,
        "params": [{"name": n, "type": type_to_str(t)} for n, t in sig.params],
        "returnType": "void" if sig.return_type == VOID else type_to_str(sig.return_type),
    }


def parse_signature_doc(d) -> Signature:
    if not isinstance(d, dict):
        raise AstDocError("signature must be an object")
    try:
        name = d["name"]
        params = tuple((p["name"], type_from_str(p["type"])) for p in d["params"])
        rt = type_from_str(d["returnType"])
    except (KeyError, TypeError, ValueError) as err:
        raise AstDocError(f"malformed signature: {err}")
    return Signature(name, params, rt)


def serialize_spec(spec: Specification) -> dict:
    return {
        "signature": serialize_signature(spec.signature),
        "pres": [serialize_expr(c) for c in spec.pres],
        "posts": [serialize_expr(c) for c in spec.posts],
    }


def parse_spec_doc(d) -> Specification:
    if not isinstance(d, dict) or "signature" not in d:
        raise AstDocError("specification document needs a 'signature'")
    sig = parse_signature_doc(d["signature"])
    pres = tuple(parse_expr_doc(c) for c in d.get("pres", []))
    posts = tuple(parse_expr_doc(c) for c in d.get("posts", []))
    return Specification(sig, pres, posts)
