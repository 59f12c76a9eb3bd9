"""Exhaustive brute-force oracle over small finite domains.

Ground truth for the test suite and acceptance checks. Deliberately
independent of the evaluator module: its own tiny recursive interpreter,
no quantifier truncation (arrays are small), no short-cuts. Shares only
the AST definitions.

Default domain: ints in [-2, 2]; arrays of length <= 3 with elements in
[-2, 2], null included; bools in {false, true}; reals drawn from a small
fixed grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ast import (
    ArrayType,
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
    Signature,
    Unary,
    VOID,
    Var,
)

UNDEF = object()  # truth-value bottom; collapses to False at top level


@dataclass(frozen=True)
class OracleDomain:
    ints: tuple = (-2, -1, 0, 1, 2)
    reals: tuple = (-1.5, 0.0, 1.0)
    max_array_len: int = 3
    include_null: bool = True


DEFAULT_DOMAIN = OracleDomain()


def domain_values(ty, dom: OracleDomain = DEFAULT_DOMAIN):
    """All values a slot of the given type can take (list, possibly large)."""
    if isinstance(ty, ArrayType):
        elems = domain_values(ty.elem, dom)
        out = [None] if dom.include_null else []
        for n in range(dom.max_array_len + 1):
            out.extend(list(t) for t in itertools.product(elems, repeat=n))
        return out
    if ty is Prim.BOOL:
        return [False, True]
    if ty in (Prim.FLOAT, Prim.DOUBLE):
        return list(dom.reals)
    return list(dom.ints)


def all_assignments(sig: Signature, need_retval: bool, dom: OracleDomain = DEFAULT_DOMAIN):
    """Generator over every assignment in the finite domain."""
    names = [n for n, _ in sig.params]
    spaces = [domain_values(t, dom) for _, t in sig.params]
    if need_retval and sig.return_type != VOID:
        names.append("retval")
        spaces.append(domain_values(sig.return_type, dom))
    for combo in itertools.product(*spaces):
        yield dict(zip(names, combo))


def _val(e: Expr, env: dict):
    """Numeric/array value of a subterm, or UNDEF."""
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, RealLit):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Length):
        a = _val(e.array, env)
        return UNDEF if (a is UNDEF or a is None) else len(a)
    if isinstance(e, Index):
        a = _val(e.array, env)
        i = _val(e.index, env)
        if a is UNDEF or i is UNDEF or a is None or not (0 <= i < len(a)):
            return UNDEF
        return a[i]
    if isinstance(e, Unary) and e.op == "neg":
        v = _val(e.child, env)
        return UNDEF if v is UNDEF else -v
    if isinstance(e, Binary):
        l = _val(e.left, env)
        r = _val(e.right, env)
        if l is UNDEF or r is UNDEF:
            return UNDEF
        op = e.op
        if op == "add":
            return l + r
        if op == "sub":
            return l - r
        if op == "mul":
            return l * r
        if op == "div":
            if isinstance(l, int) and isinstance(r, int):
                if r == 0:
                    return UNDEF
                q = abs(l) // abs(r)
                return -q if (l < 0) != (r < 0) else q
            try:
                return l / r
            except ZeroDivisionError:
                return float("inf") if l > 0 else float("-inf") if l < 0 else float("nan")
        if op == "mod":
            if isinstance(l, int) and isinstance(r, int):
                if r == 0:
                    return UNDEF
                m = abs(l) % abs(r)
                return -m if l < 0 else m
            import math
            return math.fmod(l, r)
    raise AssertionError(f"oracle cannot take value of {type(e).__name__}")


def truth(e: Expr, env: dict):
    """Three-valued truth: True, False, or UNDEF."""
    if isinstance(e, BoolLit):
        return e.value
    if isinstance(e, Var):
        return bool(env[e.name])
    if isinstance(e, Unary) and e.op == "not":
        t = truth(e.child, env)
        return UNDEF if t is UNDEF else not t
    if isinstance(e, Imp):
        a = truth(e.antecedent, env)
        b = truth(e.consequent, env)
        if a is False or b is True:
            return True
        if a is UNDEF or b is UNDEF:
            return UNDEF
        return b
    if isinstance(e, Quant):
        arr = _val(e.array, env)
        if arr is UNDEF or arr is None:
            return UNDEF
        results = []
        for i in range(len(arr)):
            results.append(truth(e.body, {**env, e.binder: i}))
        if e.kind == "forall":
            if False in results:
                return False
            return UNDEF if UNDEF in results else True
        if True in results:
            return True
        return UNDEF if UNDEF in results else False
    if isinstance(e, Binary):
        op = e.op
        if op == "and":
            l = truth(e.left, env)
            r = truth(e.right, env)
            if l is False or r is False:
                return False
            if l is UNDEF or r is UNDEF:
                return UNDEF
            return True
        if op == "or":
            l = truth(e.left, env)
            r = truth(e.right, env)
            if l is True or r is True:
                return True
            if l is UNDEF or r is UNDEF:
                return UNDEF
            return False
        if op in ("eq", "neq"):
            res = _equal(e, env)
            if res is UNDEF:
                return UNDEF
            return res if op == "eq" else not res
        l = _val(e.left, env)
        r = _val(e.right, env)
        if l is UNDEF or r is UNDEF:
            return UNDEF
        return {"lt": l < r, "le": l <= r, "gt": l > r, "ge": l >= r}[op]
    raise AssertionError(f"oracle cannot evaluate {type(e).__name__}")


def _equal(e: Binary, env: dict):
    if isinstance(e.left, NullLit) or isinstance(e.right, NullLit):
        other = e.right if isinstance(e.left, NullLit) else e.left
        v = _val(other, env)
        return UNDEF if v is UNDEF else v is None
    l = _val(e.left, env)
    r = _val(e.right, env)
    if l is UNDEF or r is UNDEF:
        return UNDEF
    return _deep_eq(l, r)


def _deep_eq(l, r):
    if isinstance(l, list) or isinstance(r, list):
        if l is None or r is None or not isinstance(l, list) or not isinstance(r, list):
            return False
        return len(l) == len(r) and all(_deep_eq(a, b) for a, b in zip(l, r))
    if isinstance(l, bool) or isinstance(r, bool):
        return l is r
    return l == r


def holds(e: Expr, env: dict) -> bool:
    """Effective boolean: UNDEF collapses to False."""
    return truth(e, env) is True


def equivalent(m: Expr, s: Expr, sig: Signature, need_retval: bool,
               dom: OracleDomain = DEFAULT_DOMAIN) -> bool:
    """True iff m and s have the same effective boolean on every assignment."""
    return all(holds(m, a) == holds(s, a)
               for a in all_assignments(sig, need_retval, dom))


def quadrant_counts(m: Expr, s: Expr, sig: Signature, need_retval: bool,
                    dom: OracleDomain = DEFAULT_DOMAIN, want_witness: bool = False):
    """Count assignments per quadrant; optionally keep one witness each."""
    counts = {"MS": 0, "MnS": 0, "nMS": 0, "nMnS": 0}
    witnesses: dict = {}
    total = 0
    for a in all_assignments(sig, need_retval, dom):
        total += 1
        mv = holds(m, a)
        sv = holds(s, a)
        q = ("MS" if sv else "MnS") if mv else ("nMS" if sv else "nMnS")
        counts[q] += 1
        if want_witness and q not in witnesses:
            witnesses[q] = dict(a)
    return counts, total, witnesses
