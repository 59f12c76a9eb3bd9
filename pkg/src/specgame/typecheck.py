"""Type checking and annotation of parsed specifications.

Equality between incompatible types is not an error: following the source
language's polymorphic `==`, such comparisons fold to a boolean literal
(`false` for `==`, `true` for `!=`). All genuine errors are reported as
Diagnostics carrying the original source span.
"""

from __future__ import annotations

from dataclasses import replace

from .ast import (
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
    Specification,
    Unary,
    VOID,
    Var,
    is_array,
    is_integer,
    is_numeric,
    widen,
)


class _TypeError(Exception):
    def __init__(self, diag):
        self.diag = diag


def _err(e: Expr, msg: str):
    raise _TypeError(Diagnostic(e.span.line, e.span.col, msg))


class _Checker:
    def __init__(self, sig: Signature, in_post: bool):
        self.sig = sig
        self.in_post = in_post
        self.params = sig.param_map()

    def lookup(self, e: Var, binders):
        if e.name in binders:
            return Prim.INT
        if e.name == "retval":
            if not self.in_post:
                _err(e, "retval not available in pre-condition")
            if self.sig.return_type == VOID:
                _err(e, "retval not available: method returns void")
            return self.sig.return_type
        if e.name in self.params:
            return self.params[e.name]
        _err(e, f"unknown variable {e.name!r}")

    def check(self, e: Expr, binders=frozenset()) -> Expr:
        if isinstance(e, IntLit):
            return e.with_ty(Prim.INT)
        if isinstance(e, RealLit):
            return e.with_ty(Prim.DOUBLE)
        if isinstance(e, BoolLit):
            return e.with_ty(Prim.BOOL)
        if isinstance(e, NullLit):
            _err(e, "null may only appear in == / != against an array")
        if isinstance(e, Var):
            return e.with_ty(self.lookup(e, binders))
        if isinstance(e, Unary):
            c = self.check(e.child, binders)
            if e.op == "not":
                if c.ty is not Prim.BOOL:
                    _err(e, "operand of '!' must be bool")
                return replace(e, child=c, ty=Prim.BOOL)
            if not is_numeric(c.ty):
                _err(e, "operand of unary '-' must be numeric")
            return replace(e, child=c, ty=c.ty)
        if isinstance(e, Imp):
            a = self.check(e.antecedent, binders)
            b = self.check(e.consequent, binders)
            if a.ty is not Prim.BOOL or b.ty is not Prim.BOOL:
                _err(e, "imp expects two bool arguments")
            return replace(e, antecedent=a, consequent=b, ty=Prim.BOOL)
        if isinstance(e, Length):
            arr = self.check(e.array, binders)
            if not is_array(arr.ty):
                _err(e, "'.length' requires an array")
            return replace(e, array=arr, ty=Prim.INT)
        if isinstance(e, Index):
            arr = self.check(e.array, binders)
            idx = self.check(e.index, binders)
            if not is_array(arr.ty):
                _err(e, "indexing requires an array")
            if not is_integer(idx.ty):
                _err(e, "array index must be an integer")
            return replace(e, array=arr, index=idx, ty=arr.ty.elem)
        if isinstance(e, Quant):
            arr = self.check(e.array, binders)
            if not is_array(arr.ty):
                _err(e, f"{e.kind} requires an array")
            if not is_integer(arr.ty.elem) and not is_numeric(arr.ty.elem):
                _err(e, f"{e.kind} requires a numeric array")
            body = self.check(e.body, binders | {e.binder})
            if body.ty is not Prim.BOOL:
                _err(e, f"body of {e.kind} must be bool")
            return replace(e, array=arr, body=body, ty=Prim.BOOL)
        if isinstance(e, Binary):
            return self.check_binary(e, binders)
        _err(e, f"unsupported expression {type(e).__name__}")

    def check_binary(self, e: Binary, binders) -> Expr:
        op = e.op
        if op in ("and", "or"):
            l = self.check(e.left, binders)
            r = self.check(e.right, binders)
            if l.ty is not Prim.BOOL or r.ty is not Prim.BOOL:
                _err(e, f"operands of '{'&&' if op == 'and' else '||'}' must be bool")
            return replace(e, left=l, right=r, ty=Prim.BOOL)

        if op in ("eq", "neq"):
            return self.check_equality(e, binders)

        # numeric comparisons and arithmetic
        l = self.check(e.left, binders)
        r = self.check(e.right, binders)
        w = widen(l.ty, r.ty)
        if w is None:
            _err(e, f"numeric operands required for '{op}'")
        if op in ("lt", "le", "gt", "ge"):
            return replace(e, left=l, right=r, ty=Prim.BOOL)
        return replace(e, left=l, right=r, ty=w)

    def check_equality(self, e: Binary, binders) -> Expr:
        left_null = isinstance(e.left, NullLit)
        right_null = isinstance(e.right, NullLit)
        if left_null and right_null:
            _err(e, "null may only be compared against an array")
        if left_null or right_null:
            other = self.check(e.right if left_null else e.left, binders)
            if not is_array(other.ty):
                _err(e, "null may only be compared against an array")
            lit = (e.left if left_null else e.right).with_ty(other.ty)
            l, r = (lit, other) if left_null else (other, lit)
            return replace(e, left=l, right=r, ty=Prim.BOOL)
        l = self.check(e.left, binders)
        r = self.check(e.right, binders)
        comparable = (
            widen(l.ty, r.ty) is not None
            or (is_array(l.ty) and l.ty == r.ty)
            or (l.ty is Prim.BOOL and r.ty is Prim.BOOL)
        )
        if not comparable:
            # polymorphic equality across unrelated types folds to a constant
            return BoolLit(e.op == "neq", ty=Prim.BOOL, span=e.span)
        return replace(e, left=l, right=r, ty=Prim.BOOL)


def typecheck_expr(e: Expr, sig: Signature, in_post: bool):
    """Typecheck a single clause. Returns (annotated Expr | None, [Diagnostic])."""
    try:
        out = _Checker(sig, in_post).check(e)
    except _TypeError as err:
        return None, [err.diag]
    return out, []


def typecheck(spec: Specification):
    """Typecheck a whole specification.

    Returns (annotated Specification | None, [Diagnostic]). All clause errors
    are collected, not just the first.
    """
    diags = []
    pres = []
    posts = []
    for clause in spec.pres:
        out, ds = typecheck_expr(clause, spec.signature, in_post=False)
        if ds:
            diags.extend(ds)
        else:
            if out.ty is not Prim.BOOL:
                diags.append(Diagnostic(clause.span.line, clause.span.col,
                                        "pre-condition must be bool"))
            else:
                pres.append(out)
    for clause in spec.posts:
        out, ds = typecheck_expr(clause, spec.signature, in_post=True)
        if ds:
            diags.extend(ds)
        else:
            if out.ty is not Prim.BOOL:
                diags.append(Diagnostic(clause.span.line, clause.span.col,
                                        "post-condition must be bool"))
            else:
                posts.append(out)
    if diags:
        return None, diags
    return Specification(spec.signature, tuple(pres), tuple(posts)), []


def load_spec(source: str):
    """parse + typecheck in one step. Returns (Specification | None, [Diagnostic])."""
    from .parser import parse

    spec, diags = parse(source)
    if diags:
        return None, diags
    return typecheck(spec)
