"""Random assignment generation and three-valued expression evaluation.

Runtime values are plain Python data: int / float / bool / list / None
(None standing for a null array). The static types guarantee we never need
runtime tags.

Evaluation is Kleene-style three-valued: null dereference, index out of
bounds and integer division by zero yield Undefined, which `&&` / `||`
can still absorb when the other operand decides the result. Quantifiers
iterate at most `quant_bound` indices; a truncated quantifier that found
no decisive witness reports an approximate result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
    is_array,
    is_integer,
)
from .rng import SplitMix64, mix

_I64_MASK = (1 << 64) - 1


def wrap64(v: int) -> int:
    """Wrap to signed 64-bit two's complement."""
    v &= _I64_MASK
    return v - (1 << 64) if v >= (1 << 63) else v


@dataclass(frozen=True)
class EvalConfig:
    quant_bound: int = 128
    int_range: tuple = (-100, 100)
    real_range: tuple = (-100.0, 100.0)
    max_array_len: int = 8
    null_probability: float = 0.1
    real_eq_epsilon: float = 1e-9

    def __post_init__(self):
        if self.quant_bound < 1:
            raise ValueError("quant_bound must be >= 1")
        if self.int_range[0] > self.int_range[1] or self.real_range[0] > self.real_range[1]:
            raise ValueError("ranges must satisfy lo <= hi")
        if self.max_array_len < 0 or not (0.0 <= self.null_probability <= 1.0):
            raise ValueError("bad max_array_len or null_probability")


DEFAULT_CONFIG = EvalConfig()


# -- results ---------------------------------------------------------------

# three-valued truth encoded as small ints for speed in the trial loop
TV_FALSE, TV_TRUE, TV_UNDEF = 0, 1, 2


@dataclass(frozen=True)
class EvalResult:
    """Public result: True/False, Undefined(reason), or Approx(True/False)."""

    value: bool | None  # None when undefined
    reason: str | None = None  # nullDeref | indexOOB | divByZero
    approx: bool = False

    @property
    def undefined(self) -> bool:
        return self.value is None

    def as_bool(self) -> bool:
        """Undefined-as-False collapse used by the checking backends."""
        return bool(self.value)


RESULT_TRUE = EvalResult(True)
RESULT_FALSE = EvalResult(False)


class _Undef(Exception):
    """Internal signal for undefined numeric/array subterms."""

    def __init__(self, reason: str):
        self.reason = reason


# -- assignment generation -------------------------------------------------

def _gen_value(ty, cfg: EvalConfig, rng: SplitMix64):
    if isinstance(ty, ArrayType):
        if rng.bernoulli(cfg.null_probability):
            return None
        length = rng.int_range(0, cfg.max_array_len)
        return [_gen_value(ty.elem, cfg, rng) for _ in range(length)]
    if ty is Prim.BOOL:
        return rng.below(2) == 1
    if ty in (Prim.FLOAT, Prim.DOUBLE):
        return rng.float_range(*cfg.real_range)
    return rng.int_range(*cfg.int_range)


def gen_assignment(sig: Signature, need_retval: bool, cfg: EvalConfig, seed: int) -> dict:
    """Deterministic random assignment for all parameters (and retval)."""
    rng = SplitMix64(seed)
    out = {}
    for name, ty in sig.params:
        out[name] = _gen_value(ty, cfg, rng)
    if need_retval and sig.return_type != VOID:
        out["retval"] = _gen_value(sig.return_type, cfg, rng)
    return out


def value_matches_type(v, ty) -> bool:
    if isinstance(ty, ArrayType):
        return v is None or (isinstance(v, list)
                             and all(value_matches_type(x, ty.elem) for x in v))
    if ty is Prim.BOOL:
        return isinstance(v, bool)
    if ty in (Prim.FLOAT, Prim.DOUBLE):
        return isinstance(v, (int, float)) and not isinstance(v, bool)
    return isinstance(v, int) and not isinstance(v, bool)


# -- evaluation ------------------------------------------------------------

class _Eval:
    __slots__ = ("env", "cfg")

    def __init__(self, env: dict, cfg: EvalConfig):
        self.env = env
        self.cfg = cfg

    # numeric / array / bool-as-value subterms; raises _Undef
    def value(self, e: Expr):
        t = type(e)
        if t is Var:
            return self.env[e.name]
        if t is IntLit:
            return e.value
        if t is RealLit:
            return e.value
        if t is Index:
            arr = self.value(e.array)
            if arr is None:
                raise _Undef("nullDeref")
            idx = self.value(e.index)
            if idx < 0 or idx >= len(arr):
                raise _Undef("indexOOB")
            return arr[idx]
        if t is Length:
            arr = self.value(e.array)
            if arr is None:
                raise _Undef("nullDeref")
            return len(arr)
        if t is Unary:  # neg
            v = self.value(e.child)
            return wrap64(-v) if isinstance(v, int) else -v
        if t is Binary:
            return self.arith(e)
        raise AssertionError(f"not a value expression: {t.__name__}")

    def arith(self, e: Binary):
        l = self.value(e.left)
        r = self.value(e.right)
        both_int = isinstance(l, int) and isinstance(r, int)
        op = e.op
        if op == "add":
            return wrap64(l + r) if both_int else l + r
        if op == "sub":
            return wrap64(l - r) if both_int else l - r
        if op == "mul":
            return wrap64(l * r) if both_int else l * r
        if op == "div":
            if both_int:
                if r == 0:
                    raise _Undef("divByZero")
                q = abs(l) // abs(r)
                return wrap64(-q if (l < 0) != (r < 0) else q)
            try:
                return l / r
            except ZeroDivisionError:
                # float/int mixed with int zero: promote to IEEE semantics
                return float("inf") if l > 0 else float("-inf") if l < 0 else float("nan")
        if op == "mod":
            if both_int:
                if r == 0:
                    raise _Undef("divByZero")
                m = abs(l) % abs(r)
                return wrap64(-m if l < 0 else m)
            import math
            return math.fmod(l, r)
        raise AssertionError(f"not an arithmetic op: {op}")

    # boolean evaluation: returns (tv, reason, approx)
    def boolean(self, e: Expr):
        t = type(e)
        if t is BoolLit:
            return (TV_TRUE if e.value else TV_FALSE), None, False
        if t is Var:
            return (TV_TRUE if self.env[e.name] else TV_FALSE), None, False
        if t is Unary:  # not
            tv, reason, approx = self.boolean(e.child)
            if tv == TV_UNDEF:
                return TV_UNDEF, reason, approx
            return (TV_FALSE if tv == TV_TRUE else TV_TRUE), None, approx
        if t is Imp:
            # a => b == !a || b
            l = self.boolean(e.antecedent)
            r = self.boolean(e.consequent)
            nl = (l[0] if l[0] == TV_UNDEF else (TV_FALSE if l[0] == TV_TRUE else TV_TRUE),
                  l[1], l[2])
            return _kleene_or(nl, r)
        if t is Quant:
            return self.quant(e)
        if t is Binary:
            op = e.op
            if op == "and":
                return _kleene_and(self.boolean(e.left), self.boolean(e.right))
            if op == "or":
                return _kleene_or(self.boolean(e.left), self.boolean(e.right))
            return self.compare(e)
        raise AssertionError(f"not a boolean expression: {t.__name__}")

    def compare(self, e: Binary):
        op = e.op
        # eq/neq may involve bools, arrays or null
        if op in ("eq", "neq"):
            if (e.left.ty is Prim.BOOL and e.right.ty is Prim.BOOL
                    and not isinstance(e.left, NullLit)
                    and not isinstance(e.right, NullLit)):
                l = self.boolean(e.left)
                r = self.boolean(e.right)
                if l[0] == TV_UNDEF:
                    return TV_UNDEF, l[1], l[2]
                if r[0] == TV_UNDEF:
                    return TV_UNDEF, r[1], r[2]
                res = (l[0] == r[0]) == (op == "eq")
                return (TV_TRUE if res else TV_FALSE), None, l[2] or r[2]
            try:
                res = self.equal(e.left, e.right)
            except _Undef as u:
                return TV_UNDEF, u.reason, False
            if op == "neq":
                res = not res
            return (TV_TRUE if res else TV_FALSE), None, False
        try:
            l = self.value(e.left)
            r = self.value(e.right)
        except _Undef as u:
            return TV_UNDEF, u.reason, False
        if op == "lt":
            res = l < r
        elif op == "le":
            res = l <= r
        elif op == "gt":
            res = l > r
        else:
            res = l >= r
        return (TV_TRUE if res else TV_FALSE), None, False

    def equal(self, le: Expr, re_: Expr) -> bool:
        if isinstance(le, NullLit) or isinstance(re_, NullLit):
            other = re_ if isinstance(le, NullLit) else le
            return self.value(other) is None
        l = self.value(le)
        r = self.value(re_)
        return self.values_equal(l, r, le.ty, re_.ty)

    def values_equal(self, l, r, lty, rty) -> bool:
        if is_array(lty) or is_array(rty):
            # element-wise; null is only equal to null via the NullLit path,
            # a null operand here makes the comparison false
            if l is None or r is None:
                return False
            if len(l) != len(r):
                return False
            ety = lty.elem
            return all(self.values_equal(a, b, ety, ety) for a, b in zip(l, r))
        if isinstance(l, bool) or isinstance(r, bool):
            return l is r
        if isinstance(l, float) or isinstance(r, float):
            return abs(l - r) <= self.cfg.real_eq_epsilon
        return l == r

    def quant(self, e: Quant):
        try:
            arr = self.value(e.array)
        except _Undef as u:
            return TV_UNDEF, u.reason, False
        if arr is None:
            return TV_UNDEF, "nullDeref", False
        bound = min(len(arr), self.cfg.quant_bound)
        truncated = len(arr) > self.cfg.quant_bound
        forall = e.kind == "forall"
        env = self.env
        saved = env.get(e.binder, _MISSING)
        acc = (TV_TRUE, None, False) if forall else (TV_FALSE, None, False)
        try:
            for i in range(bound):
                env[e.binder] = i
                b = self.boolean(e.body)
                if forall:
                    if b[0] == TV_FALSE and not b[2]:
                        return TV_FALSE, None, False  # decisive witness
                    acc = _kleene_and(acc, b)
                else:
                    if b[0] == TV_TRUE and not b[2]:
                        return TV_TRUE, None, False
                    acc = _kleene_or(acc, b)
        finally:
            if saved is _MISSING:
                env.pop(e.binder, None)
            else:
                env[e.binder] = saved
        if truncated:
            # no decisive witness in the evaluated prefix
            return (TV_TRUE if forall else TV_FALSE), None, True
        return acc


_MISSING = object()


def _kleene_and(l, r):
    ltv, lre, lap = l
    rtv, rre, rap = r
    if ltv == TV_FALSE and not lap:
        return l
    if rtv == TV_FALSE and not rap:
        return r
    if ltv == TV_FALSE or rtv == TV_FALSE:
        return TV_FALSE, None, True
    if ltv == TV_UNDEF:
        return TV_UNDEF, lre, lap or rap
    if rtv == TV_UNDEF:
        return TV_UNDEF, rre, lap or rap
    return TV_TRUE, None, lap or rap


def _kleene_or(l, r):
    ltv, lre, lap = l
    rtv, rre, rap = r
    if ltv == TV_TRUE and not lap:
        return l
    if rtv == TV_TRUE and not rap:
        return r
    if ltv == TV_TRUE or rtv == TV_TRUE:
        return TV_TRUE, None, True
    if ltv == TV_UNDEF:
        return TV_UNDEF, lre, lap or rap
    if rtv == TV_UNDEF:
        return TV_UNDEF, rre, lap or rap
    return TV_FALSE, None, lap or rap


def evaluate(e: Expr, assignment: dict, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Evaluate a typechecked Bool expression under an assignment."""
    tv, reason, approx = _Eval(dict(assignment), cfg).boolean(e)
    if tv == TV_UNDEF:
        return EvalResult(None, reason)
    if approx:
        return EvalResult(tv == TV_TRUE, approx=True)
    return RESULT_TRUE if tv == TV_TRUE else RESULT_FALSE
