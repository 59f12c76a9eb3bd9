"""Translation of typechecked formulas to SMT-LIB v2.

An n-dimensional array variable `a` becomes:

    v_a      : (Array Int (Array Int ... elem))   -- values
    len_a    : Int                                -- outer length
    len_a_1  : (Array Int Int)                    -- inner lengths per index
    null_a   : Bool                               -- a == null

Undefined-producing subterms (index out of bounds, null dereference,
integer division by zero) are handled by conjoining guard formulas onto
the enclosing atom: an atom whose evaluation would be Undefined is
encoded as false. The input is normalized to negation normal form first,
which makes this guard scheme agree with the evaluator's three-valued
semantics collapsed at the top level (a monotone formula is effectively
true iff it is true with every undefined atom read as false).

Division follows the evaluator's truncate-toward-zero semantics via the
tdiv/tmod helper functions emitted in the preamble.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ast import (
    ArrayType,
    Binary,
    BoolLit,
    Expr,
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
    is_array,
    is_real,
)
from ..normalize import normalize

LMAX = 1_000_000  # array length cap; keeps models finite to materialize

_PREAMBLE = """\
(define-fun tdiv ((a Int) (b Int)) Int
  (ite (or (= (mod a b) 0) (>= a 0)) (div a b)
       (ite (> b 0) (+ (div a b) 1) (- (div a b) 1))))
(define-fun tmod ((a Int) (b Int)) Int (- a (* b (tdiv a b))))
"""


class UnsupportedConstruct(Exception):
    pass


@dataclass(frozen=True)
class SmtEncoding:
    script: str  # declarations + background + (assert ...) for the formula
    symbol_table: dict  # DSL name -> {"value","length","lengths","null","sort"}


def _sort_of(ty) -> str:
    if isinstance(ty, ArrayType):
        return f"(Array Int {_sort_of(ty.elem)})"
    if ty is Prim.BOOL:
        return "Bool"
    if ty in (Prim.FLOAT, Prim.DOUBLE):
        return "Real"
    return "Int"


def _array_depth(ty) -> int:
    d = 0
    while isinstance(ty, ArrayType):
        d += 1
        ty = ty.elem
    return d


def _len_sort(dim: int) -> str:
    s = "Int"
    for _ in range(dim):
        s = f"(Array Int {s})"
    return s


def declare_var(name: str, ty, decls: list, background: list) -> dict:
    entry = {"value": f"v_{name}", "sort": _sort_of(ty)}
    decls.append(f"(declare-const v_{name} {_sort_of(ty)})")
    if is_array(ty):
        depth = _array_depth(ty)
        entry["null"] = f"null_{name}"
        decls.append(f"(declare-const null_{name} Bool)")
        lengths = []
        for d in range(depth):
            lname = f"len_{name}" if d == 0 else f"len_{name}_{d}"
            lengths.append(lname)
            decls.append(f"(declare-const {lname} {_len_sort(d)})")
            if d == 0:
                background.append(f"(assert (and (>= {lname} 0) (<= {lname} {LMAX})))")
            else:
                idx = [f"i{k}" for k in range(d)]
                binds = " ".join(f"({i} Int)" for i in idx)
                sel = lname
                for i in idx:
                    sel = f"(select {sel} {i})"
                background.append(
                    f"(assert (forall ({binds}) (and (>= {sel} 0) (<= {sel} {LMAX}))))")
        entry["lengths"] = lengths
    return entry


class _Translator:
    def __init__(self, symbols: dict):
        self.symbols = symbols
        self._fresh = 0

    def fresh(self, base: str) -> str:
        self._fresh += 1
        return f"{base}!{self._fresh}"

    # -- array path helpers -----------------------------------------------

    def base_var(self, e: Expr) -> Var:
        while isinstance(e, Index):
            e = e.array
        if not isinstance(e, Var):
            raise UnsupportedConstruct("array expression must be a variable or index chain")
        return e

    def array_len(self, e: Expr, guards: list, binders: dict) -> str:
        """SMT term for the length of array expression e; appends guards."""
        base = self.base_var(e)
        sym = self.symbols[base.name]
        guards.append(f"(not {sym['null']})")
        # collect index path from base outwards
        path = []
        cur = e
        while isinstance(cur, Index):
            path.append(cur.index)
            cur = cur.array
        path.reverse()
        lname = sym["lengths"][len(path)]
        term = lname
        for d, idx_expr in enumerate(path):
            it = self.term(idx_expr, guards, binders)
            # each step must itself be in bounds of the enclosing dimension
            outer_len = sym["lengths"][d]
            outer_term = outer_len
            for prev in path[:d]:
                outer_term = f"(select {outer_term} {self.term(prev, guards, binders)})"
            guards.append(f"(and (>= {it} 0) (< {it} {outer_term}))")
            term = f"(select {term} {it})"
        return term

    # -- terms -------------------------------------------------------------

    def term(self, e: Expr, guards: list, binders: dict) -> str:
        """Numeric/array/bool-valued term; guard conjuncts appended in place."""
        if isinstance(e, BoolLit):
            return "true" if e.value else "false"
        if isinstance(e, IntLit):
            return str(e.value) if e.value >= 0 else f"(- {-e.value})"
        if isinstance(e, RealLit):
            v = e.value
            s = repr(abs(v))
            if "e" in s or "E" in s:
                # scientific notation is not SMT-LIB; expand via fraction
                from fractions import Fraction
                f = Fraction(abs(v)).limit_denominator(10**12)
                s = f"(/ {f.numerator}.0 {f.denominator}.0)"
            elif "." not in s:
                s += ".0"
            return s if v >= 0 else f"(- {s})"
        if isinstance(e, Var):
            if e.name in binders:
                return binders[e.name]
            return self.symbols[e.name]["value"]
        if isinstance(e, Length):
            return self.array_len(e.array, guards, binders)
        if isinstance(e, Index):
            arr = self.term(e.array, guards, binders)
            idx = self.term(e.index, guards, binders)
            ln = self.array_len(e.array, guards, binders)
            guards.append(f"(and (>= {idx} 0) (< {idx} {ln}))")
            return f"(select {arr} {idx})"
        if isinstance(e, Unary):
            child = self.term(e.child, guards, binders)
            return f"(- {child})" if e.op == "neg" else f"(not {child})"
        if isinstance(e, Binary):
            l = self.term(e.left, guards, binders)
            r = self.term(e.right, guards, binders)
            l, r = self.coerce(e.left, e.right, l, r)
            real = is_real(e.ty)
            op = e.op
            if op == "add":
                return f"(+ {l} {r})"
            if op == "sub":
                return f"(- {l} {r})"
            if op == "mul":
                return f"(* {l} {r})"
            if op == "div":
                guards.append(f"(not (= {r} {'0.0' if real else '0'}))")
                return f"(/ {l} {r})" if real else f"(tdiv {l} {r})"
            if op == "mod":
                guards.append(f"(not (= {r} {'0.0' if real else '0'}))")
                if real:
                    raise UnsupportedConstruct("real modulo is not encodable")
                return f"(tmod {l} {r})"
        raise UnsupportedConstruct(f"term {type(e).__name__}")

    def coerce(self, le: Expr, re_: Expr, l: str, r: str):
        if is_real(le.ty) != is_real(re_.ty):
            if is_real(le.ty):
                r = f"(to_real {r})"
            else:
                l = f"(to_real {l})"
        return l, r

    # -- formulas -----------------------------------------------------------

    def atom(self, meaning: str, guards: list) -> str:
        if not guards:
            return meaning
        return f"(and {' '.join(guards)} {meaning})"

    def formula(self, e: Expr, binders: dict) -> str:
        if isinstance(e, BoolLit):
            return "true" if e.value else "false"
        if isinstance(e, Var):
            return binders.get(e.name, self.symbols[e.name]["value"])
        if isinstance(e, Unary) and e.op == "not":
            # NNF leaves negation only on defined bool atoms
            return f"(not {self.formula(e.child, binders)})"
        if isinstance(e, Binary) and e.op in ("and", "or"):
            return f"({e.op} {self.formula(e.left, binders)} {self.formula(e.right, binders)})"
        if isinstance(e, Quant):
            return self.quantifier(e, binders)
        if isinstance(e, Binary):
            return self.comparison(e, binders)
        raise UnsupportedConstruct(f"formula {type(e).__name__}")

    def comparison(self, e: Binary, binders: dict) -> str:
        guards: list = []
        op = e.op
        if op in ("eq", "neq"):
            meaning = self.equality(e, guards, binders)
            if op == "neq":
                meaning = f"(not {meaning})"
            return self.atom(meaning, guards)
        l = self.term(e.left, guards, binders)
        r = self.term(e.right, guards, binders)
        l, r = self.coerce(e.left, e.right, l, r)
        sym = {"lt": "<", "le": "<=", "gt": ">", "ge": ">="}[op]
        return self.atom(f"({sym} {l} {r})", guards)

    def equality(self, e: Binary, guards: list, binders: dict) -> str:
        if isinstance(e.left, NullLit) or isinstance(e.right, NullLit):
            other = e.right if isinstance(e.left, NullLit) else e.left
            base = self.base_var(other)
            if isinstance(other, Var):
                return self.symbols[base.name]["null"]
            # a[i] == null: inner arrays are never null in this encoding
            self.term(other, guards, binders)
            return "false"
        if is_array(e.left.ty):
            return self.array_equality(e, guards, binders)
        l = self.term(e.left, guards, binders)
        r = self.term(e.right, guards, binders)
        l, r = self.coerce(e.left, e.right, l, r)
        return f"(= {l} {r})"

    def array_equality(self, e: Binary, guards: list, binders: dict) -> str:
        lb, rb = self.base_var(e.left), self.base_var(e.right)
        lsym, rsym = self.symbols[lb.name], self.symbols[rb.name]
        non_null = f"(and (not {lsym['null']}) (not {rsym['null']}))"
        lg: list = []
        lt = self.term(e.left, lg, binders)
        llen = self.array_len(e.left, lg, binders)
        rt = self.term(e.right, lg, binders)
        rlen = self.array_len(e.right, lg, binders)
        guards.extend(g for g in lg if "null_" not in g)  # nullness is part of meaning
        i = self.fresh("eqi")
        elemwise = (f"(forall (({i} Int)) (=> (and (>= {i} 0) (< {i} {llen}))"
                    f" (= (select {lt} {i}) (select {rt} {i}))))")
        if _array_depth(e.left.ty) > 1:
            raise UnsupportedConstruct("equality of nested arrays is not encoded")
        return f"(and {non_null} (= {llen} {rlen}) {elemwise})"

    def quantifier(self, e: Quant, binders: dict) -> str:
        guards: list = []
        arr = self.term(e.array, guards, binders)
        ln = self.array_len(e.array, guards, binders)
        b = self.fresh(f"q_{e.binder}")
        inner = self.formula(e.body, {**binders, e.binder: b})
        rng = f"(and (>= {b} 0) (< {b} {ln}))"
        if e.kind == "forall":
            body = f"(forall (({b} Int)) (=> {rng} {inner}))"
        else:
            body = f"(exists (({b} Int)) (and {rng} {inner}))"
        return self.atom(body, guards)


def encode(e: Expr, sig: Signature, need_retval: bool = False) -> SmtEncoding:
    """Encode a typechecked Bool expression as an SMT-LIB assertion script."""
    decls: list = []
    background: list = []
    symbols: dict = {}
    for name, ty in sig.params:
        symbols[name] = declare_var(name, ty, decls, background)
    if need_retval and sig.return_type != VOID:
        symbols["retval"] = declare_var("retval", sig.return_type, decls, background)
    tr = _Translator(symbols)
    body = tr.formula(normalize(e), {})
    script = "\n".join([_PREAMBLE.rstrip(), *decls, *background, f"(assert {body})"])
    return SmtEncoding(script=script, symbol_table=symbols)


def declarations_for(sig: Signature, need_retval: bool):
    """Shared declarations + background for batched multi-query scripts."""
    decls: list = []
    background: list = []
    symbols: dict = {}
    for name, ty in sig.params:
        symbols[name] = declare_var(name, ty, decls, background)
    if need_retval and sig.return_type != VOID:
        symbols["retval"] = declare_var("retval", sig.return_type, decls, background)
    return symbols, decls, background


def formula_for(e: Expr, symbols: dict) -> str:
    """Guarded classical formula equivalent to "e is effectively true"."""
    return _Translator(symbols).formula(normalize(e), {})


def assertion_for(e: Expr, symbols: dict) -> str:
    return f"(assert {formula_for(e, symbols)})"


def assertion_for_parts(parts, symbols: dict) -> str:
    """Assertion for a conjunction of effective-truth literals.

    `parts` is a sequence of (expr, positive) pairs. A negative literal is
    the classical negation of the guarded translation — "e is NOT
    effectively true" — which also covers the region where e is undefined.
    That is the negation the quadrant semantics uses (Undefined collapses
    to False before the quadrant is chosen), and it differs from encoding
    an AST-level `!e`, whose three-valued meaning stays undefined."""
    strs = []
    for e, positive in parts:
        f = formula_for(e, symbols)
        strs.append(f if positive else f"(not {f})")
    body = strs[0] if len(strs) == 1 else f"(and {' '.join(strs)})"
    return f"(assert {body})"
