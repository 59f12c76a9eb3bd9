"""Parsing of solver output: status tokens and (get-model) s-expressions.

Models are reconstructed into evaluator-compatible assignments: scalars
become Python ints/floats/bools, arrays are materialized element by
element up to their model length. Function-valued model entries (array
interpretations) are evaluated symbolically by a tiny term interpreter
that understands the operators solvers actually emit in models: ite, let,
lambda, store, (as const ...), as-array, arithmetic and comparisons.
"""

from __future__ import annotations

from fractions import Fraction

from ..ast import ArrayType, Prim, is_array


class ModelParseError(Exception):
    pass


# -- s-expression reader ---------------------------------------------------

def tokenize_sexpr(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append(c)
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            tokens.append(text[i:j + 1])
            i = j + 1
        elif c == "|":
            j = text.index("|", i + 1)
            tokens.append(text[i:j + 1])
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def parse_sexprs(tokens):
    """Parse a token stream into a list of nested lists/atoms."""
    out = []
    stack = []
    for t in tokens:
        if t == "(":
            stack.append([])
        elif t == ")":
            if not stack:
                raise ModelParseError("unbalanced ')'")
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(t)
    if stack:
        raise ModelParseError("unbalanced '('")
    return out


# -- model term interpreter ------------------------------------------------

class _Fn:
    """Interpreted function value (array or define-fun with params)."""

    def __init__(self, params, body, env, model):
        self.params = params  # list of names
        self.body = body
        self.env = env
        self.model = model

    def __call__(self, *args):
        env = dict(self.env)
        env.update(zip(self.params, args))
        return _eval(self.body, env, self.model)


class _Store:
    def __init__(self, base, key, val):
        self.base = base
        self.key = key
        self.val = val

    def __call__(self, *args):
        if args[0] == self.key:
            return self.val
        base = self.base
        return base(*args) if callable(base) else base


class _Const:
    def __init__(self, val):
        self.val = val

    def __call__(self, *args):
        return self.val


def _num(tok: str):
    if "." in tok:
        return float(tok)
    return int(tok)


def _eval(t, env: dict, model: dict):
    if isinstance(t, str):
        if t == "true":
            return True
        if t == "false":
            return False
        if t and (t[0].isdigit() or (t[0] == "-" and len(t) > 1 and t[1].isdigit())):
            return _num(t)
        if t in env:
            return env[t]
        if t in model:
            v = model[t]
            return v
        raise ModelParseError(f"unbound symbol in model: {t!r}")
    # list form
    if not t:
        raise ModelParseError("empty s-expression")
    head = t[0]
    if head == "let":
        env2 = dict(env)
        for name, sub in t[1]:
            env2[name] = _eval(sub, env, model)
        return _eval(t[2], env2, model)
    if head == "ite":
        return _eval(t[2] if _eval(t[1], env, model) else t[3], env, model)
    if head == "lambda":
        params = [p[0] for p in t[1]]
        return _Fn(params, t[2], env, model)
    if head == "store":
        return _Store(_eval(t[1], env, model), _eval(t[2], env, model),
                      _eval(t[3], env, model))
    if head == "select":
        f = _eval(t[1], env, model)
        arg = _eval(t[2], env, model)
        return f(arg) if callable(f) else f
    if isinstance(head, list) and len(head) >= 2 and head[0] == "as" and head[1] == "const":
        return _Const(_eval(t[1], env, model))
    if head == "_" and len(t) >= 3 and t[1] == "as-array":
        name = t[2]
        v = model.get(name)
        if v is None:
            raise ModelParseError(f"as-array references unknown function {name!r}")
        return v
    if head == "-" and len(t) == 2:
        return -_eval(t[1], env, model)
    if head == "/":
        l = _eval(t[1], env, model)
        r = _eval(t[2], env, model)
        return float(Fraction(l) / Fraction(r)) if r else float("inf")
    ops = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
           "div": lambda a, b: a // b if b else 0,
           "mod": lambda a, b: a % b if b else a,
           "=": lambda a, b: a == b, "distinct": lambda a, b: a != b,
           "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
           ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
           "to_real": lambda a: float(a), "to_int": lambda a: int(a)}
    if head in ("and", "or"):
        vals = [_eval(x, env, model) for x in t[1:]]
        return all(vals) if head == "and" else any(vals)
    if head == "not":
        return not _eval(t[1], env, model)
    if head == "=>":
        return (not _eval(t[1], env, model)) or _eval(t[2], env, model)
    if head in ops:
        args = [_eval(x, env, model) for x in t[1:]]
        if len(args) == 1:
            return ops[head](args[0])
        acc = args[0]
        for a in args[1:]:
            acc = ops[head](acc, a)
        return acc
    if isinstance(head, str) and head in model and callable(model[head]):
        args = [_eval(x, env, model) for x in t[1:]]
        return model[head](*args)
    raise ModelParseError(f"cannot evaluate model term head {head!r}")


def read_model(sexpr) -> dict:
    """Read a (get-model) response into name -> value/callable."""
    model: dict = {}
    entries = sexpr
    if entries and entries[0] == "model":  # some solvers prefix with 'model'
        entries = entries[1:]
    # first pass: record raw bodies so mutually referencing defs resolve lazily
    raw = {}
    for entry in entries:
        if not (isinstance(entry, list) and entry and entry[0] == "define-fun"):
            continue
        name = entry[1]
        params = [p[0] for p in entry[2]]
        body = entry[4]
        raw[name] = (params, body)

    class LazyModel(dict):
        def __missing__(self, key):
            if key not in raw:
                raise KeyError(key)
            params, body = raw[key]
            if params:
                v = _Fn(params, body, {}, self)
            else:
                v = _eval(body, {}, self)
            self[key] = v
            return v

    lazy = LazyModel()
    for name in raw:
        model[name] = lazy[name]
    return model


# -- assignment reconstruction --------------------------------------------

def _conv_scalar(v, ty):
    if ty is Prim.BOOL:
        return bool(v)
    if ty in (Prim.FLOAT, Prim.DOUBLE):
        return float(v)
    return int(v)


MATERIALIZE_CAP = 10_000  # refuse absurd model lengths rather than truncate


def _materialize(value_fn, len_val, inner_lens, ty: ArrayType, prefix):
    n = int(len_val)
    if n > MATERIALIZE_CAP:
        # a truncated array would no longer re-evaluate into the quadrant
        # that produced it; the sat verdict stands without a witness
        raise ModelParseError(f"model array length {n} exceeds cap")
    out = []
    for i in range(n):
        elem = value_fn(i) if callable(value_fn) else value_fn
        if isinstance(ty.elem, ArrayType):
            ilen = inner_lens[0]
            for p in prefix + (i,):
                ilen = ilen(p) if callable(ilen) else ilen
            out.append(_materialize(elem, ilen, inner_lens[1:], ty.elem, prefix + (i,)))
        else:
            out.append(_conv_scalar(elem if not callable(elem) else elem(0), ty.elem))
    return out


def assignment_from_model(model: dict, symbol_table: dict, types: dict) -> dict:
    """Build an evaluator assignment from a parsed model.

    `types` maps DSL names to TypeTags. Unconstrained symbols default to
    zero values."""
    out = {}
    for name, entry in symbol_table.items():
        ty = types[name]
        if is_array(ty):
            if bool(model.get(entry["null"], False)):
                out[name] = None
                continue
            length = model.get(entry["lengths"][0], 0)
            value_fn = model.get(entry["value"], _Const(0))
            inner = []
            for lname in entry["lengths"][1:]:
                inner.append(model.get(lname, _Const(0)))
            out[name] = _materialize(value_fn, length, inner, ty, ())
        else:
            default = False if ty is Prim.BOOL else 0
            out[name] = _conv_scalar(model.get(entry["value"], default), ty)
    return out
