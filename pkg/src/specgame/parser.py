"""Lexer and recursive-descent parser for the specification language.

The surface syntax:

    method getMax(a: int[]) -> int;
    pre(a != null);
    pre(a.length > 0);
    post(exists(a, i -> a[i] == retval));
    post(forall(a, i -> a[i] <= retval));

Parsing is total: all failures are reported as Diagnostics, never raised
past `parse`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    ArrayType,
    Binary,
    BoolLit,
    Diagnostic,
    Imp,
    Index,
    IntLit,
    Length,
    NullLit,
    Prim,
    Quant,
    RealLit,
    Signature,
    Span,
    Specification,
    Unary,
    Var,
)

KEYWORDS = {
    "method", "pre", "post", "void", "null", "true", "false",
    "imp", "forall", "exists",
    "int", "short", "long", "float", "double", "bool",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<real>\d+\.\d+([eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op><=|>=|==|!=|&&|\|\||->|[-+*/%<>!()\[\].,;:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "real" | "ident" | "op" | "eof"
    text: str
    line: int
    col: int

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.line, self.col + len(self.text))


def tokenize(source: str):
    """Lex `source`; returns (tokens, diagnostics). Unknown characters become
    diagnostics and are skipped so that parsing can continue."""
    tokens = []
    diags = []
    line, col = 1, 1
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if not m:
            diags.append(Diagnostic(line, col, f"unexpected character {source[pos]!r}"))
            pos += 1
            col += 1
            continue
        text = m.group(0)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens, diags


class _ParseError(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.diags = []

    # -- token helpers ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.text == text and t.kind in ("op", "ident")

    def accept(self, text: str):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str, what: str = "") -> Token:
        t = self.peek()
        if self.at(text):
            return self.next()
        shown = repr(t.text) if t.kind != "eof" else "end of input"
        msg = f"expected {text!r}" + (f" {what}" if what else "") + f", found {shown}"
        raise _ParseError(Diagnostic(t.line, t.col, msg))

    def expect_ident(self, what: str) -> Token:
        t = self.peek()
        if t.kind == "ident" and t.text not in KEYWORDS:
            return self.next()
        shown = repr(t.text) if t.kind != "eof" else "end of input"
        raise _ParseError(Diagnostic(t.line, t.col, f"expected {what}, found {shown}"))

    def sync_to_semicolon(self):
        while self.peek().kind != "eof" and not self.at(";"):
            self.next()
        self.accept(";")

    # -- grammar ----------------------------------------------------------

    def parse_spec(self):
        sig = None
        pres = []
        posts = []
        while self.peek().kind != "eof":
            t = self.peek()
            try:
                if self.at("method"):
                    if sig is not None:
                        raise _ParseError(
                            Diagnostic(t.line, t.col, "duplicate method header"))
                    sig = self.parse_header()
                elif self.at("pre") or self.at("post"):
                    which = self.next().text
                    self.expect("(")
                    e = self.parse_expr()
                    self.expect(")")
                    self.expect(";")
                    (pres if which == "pre" else posts).append(e)
                else:
                    raise _ParseError(Diagnostic(
                        t.line, t.col,
                        f"expected 'method', 'pre' or 'post', found {t.text!r}"))
            except _ParseError as err:
                self.diags.append(err.diag)
                self.sync_to_semicolon()
        if sig is None and not self.diags:
            t = self.peek()
            self.diags.append(Diagnostic(t.line, t.col, "missing method header"))
        if self.diags:
            return None
        return Specification(sig, tuple(pres), tuple(posts))

    def parse_header(self) -> Signature:
        self.expect("method")
        name = self.expect_ident("method name").text
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                pname = self.expect_ident("parameter name").text
                self.expect(":")
                ptype = self.parse_type(allow_void=False)
                params.append((pname, ptype))
                if not self.accept(","):
                    break
        self.expect(")")
        self.expect("->")
        rtype = self.parse_type(allow_void=True)
        self.expect(";")
        seen = set()
        for pname, _ in params:
            if pname in seen:
                t = self.peek()
                raise _ParseError(Diagnostic(t.line, t.col,
                                             f"duplicate parameter {pname!r}"))
            if pname == "retval":
                t = self.peek()
                raise _ParseError(Diagnostic(t.line, t.col,
                                             "'retval' cannot be a parameter name"))
            seen.add(pname)
        return Signature(name, tuple(params), rtype)

    def parse_type(self, allow_void: bool):
        t = self.peek()
        if allow_void and self.accept("void"):
            from .ast import VOID
            return VOID
        for p in Prim:
            if self.at(p.value):
                self.next()
                ty = p
                while self.at("["):
                    self.next()
                    self.expect("]")
                    ty = ArrayType(ty)
                return ty
        raise _ParseError(Diagnostic(t.line, t.col, f"expected a type, found {t.text!r}"))

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        e = self.parse_and()
        while self.at("||"):
            t = self.next()
            e = Binary("or", e, self.parse_and(), span=e.span)
        return e

    def parse_and(self):
        e = self.parse_cmp()
        while self.at("&&"):
            self.next()
            e = Binary("and", e, self.parse_cmp(), span=e.span)
        return e

    _CMP = {"==": "eq", "!=": "neq", "<": "lt", "<=": "le", ">": "gt", ">=": "ge"}

    def parse_cmp(self):
        e = self.parse_add()
        # comparisons chain left-associatively, matching Java's relational tier
        while self.peek().text in self._CMP and self.peek().kind == "op":
            op = self._CMP[self.next().text]
            e = Binary(op, e, self.parse_add(), span=e.span)
        return e

    def parse_add(self):
        e = self.parse_mul()
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = "add" if self.next().text == "+" else "sub"
            e = Binary(op, e, self.parse_mul(), span=e.span)
        return e

    def parse_mul(self):
        e = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/", "%"):
            op = {"*": "mul", "/": "div", "%": "mod"}[self.next().text]
            e = Binary(op, e, self.parse_unary(), span=e.span)
        return e

    def parse_unary(self):
        t = self.peek()
        if self.at("!"):
            self.next()
            return Unary("not", self.parse_unary(), span=t.span)
        if self.at("-"):
            self.next()
            return Unary("neg", self.parse_unary(), span=t.span)
        return self.parse_postfix()

    def parse_postfix(self):
        e = self.parse_primary()
        while True:
            if self.at("."):
                self.next()
                member = self.expect_ident("'length'")
                if member.text != "length":
                    raise _ParseError(Diagnostic(
                        member.line, member.col,
                        f"unknown member {member.text!r} (only '.length' is supported)"))
                e = Length(e, span=e.span)
            elif self.at("["):
                self.next()
                idx = self.parse_expr()
                self.expect("]")
                e = Index(e, idx, span=e.span)
            else:
                return e

    def parse_primary(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            return IntLit(int(t.text), span=t.span)
        if t.kind == "real":
            self.next()
            return RealLit(float(t.text), span=t.span)
        if self.at("true"):
            self.next()
            return BoolLit(True, span=t.span)
        if self.at("false"):
            self.next()
            return BoolLit(False, span=t.span)
        if self.at("null"):
            self.next()
            return NullLit(span=t.span)
        if self.at("("):
            self.next()
            e = self.parse_expr()
            self.expect(")")
            return e
        if self.at("imp"):
            self.next()
            self.expect("(")
            a = self.parse_expr()
            self.expect(",")
            b = self.parse_expr()
            self.expect(")")
            return Imp(a, b, span=t.span)
        if self.at("forall") or self.at("exists"):
            kind = self.next().text
            self.expect("(")
            arr = self.parse_expr()
            self.expect(",")
            binder = self.expect_ident("binder name").text
            self.expect("->")
            body = self.parse_expr()
            self.expect(")")
            return Quant(kind, arr, binder, body, span=t.span)
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.next()
            return Var(t.text, span=t.span)
        shown = repr(t.text) if t.kind != "eof" else "end of input"
        raise _ParseError(Diagnostic(t.line, t.col, f"expected an expression, found {shown}"))


def parse(source: str):
    """Parse a full specification. Returns (Specification | None, [Diagnostic])."""
    tokens, diags = tokenize(source)
    p = _Parser(tokens)
    spec = p.parse_spec()
    all_diags = diags + p.diags
    if all_diags:
        return None, all_diags
    return spec, []


def parse_expr_text(source: str, stop_at_eof: bool = True):
    """Parse a single expression (testing / tooling convenience)."""
    tokens, diags = tokenize(source)
    p = _Parser(tokens)
    try:
        e = p.parse_expr()
    except _ParseError as err:
        return None, diags + [err.diag]
    if stop_at_eof and p.peek().kind != "eof":
        t = p.peek()
        return None, diags + [Diagnostic(t.line, t.col, f"trailing input {t.text!r}")]
    if diags:
        return None, diags
    return e, []
