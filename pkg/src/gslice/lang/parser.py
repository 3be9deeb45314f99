"""Lexer and recursive-descent parser for programs and terms."""
from __future__ import annotations

import re
from dataclasses import dataclass

from gslice.lang.syntax import (
    UNIT_TY, Ann, App, Arrow, Case, Cons, Fold, Fst, Fun, Inl, Inr, ListTy, Nil,
    Pair, Prim, PrimApp, ProdTy, Program, Snd, Sum, UnitTm, Var,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line, self.col = line, col


KEYWORDS = {"case", "of", "inl", "inr", "fst", "snd", "nil", "fold", "list",
            "type", "def", "program", "up"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>::|->|[\\.(),:|+*=\[\]\-^])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str     # ident, kw, num, sym, eof
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Tok]:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind, text = m.lastgroup, m.group()
        col = pos - line_start + 1
        if kind == "ident" and text in KEYWORDS:
            kind = "kw"
        if kind == "ident" and text == "_":
            kind = "sym"
        if kind not in ("ws", "comment"):
            toks.append(Tok(kind, text, line, col))
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - line_start + 1))
    return toks


class Parser:
    def __init__(self, src: str, ops=(), prim_types=None):
        self.toks = tokenize(src)
        self.i = 0
        self.ops = set(ops)
        self.prim_types = None if prim_types is None else set(prim_types)
        self.aliases: dict = {}
        self.defs: dict = {}

    # -- token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail("expected identifier")
        return self.advance().text

    def fail(self, msg):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{msg}, found {found}", t.line, t.col)

    def span(self):
        return (self.tok.line, self.tok.col)

    # -- types
    def ty(self):
        left = self.sum_ty()
        if self.at("->"):
            self.advance()
            return Arrow(left, self.ty())
        return left

    def sum_ty(self):
        t = self.prod_ty()
        while self.at("+"):
            self.advance()
            t = Sum(t, self.prod_ty())
        return t

    def prod_ty(self):
        t = self.app_ty()
        while self.at("*"):
            self.advance()
            t = ProdTy(t, self.app_ty())
        return t

    def app_ty(self):
        if self.at("list"):
            self.advance()
            return ListTy(self.app_ty())
        return self.atom_ty()

    def atom_ty(self):
        t = self.tok
        if t.kind == "num" and t.text == "1":
            self.advance()
            return UNIT_TY
        if self.at("("):
            self.advance()
            inner = self.ty()
            self.expect(")")
            return inner
        if t.kind == "ident":
            self.advance()
            if t.text in self.aliases:
                return self.aliases[t.text]
            if self.prim_types is not None and t.text not in self.prim_types:
                raise ParseError(f"unknown type {t.text!r}", t.line, t.col)
            return Prim(t.text)
        self.fail("expected a type")

    # -- terms
    def term(self, scope):
        sp = self.span()
        if self.at("\\"):
            self.advance()
            if self.at("("):
                self.advance()
                x = self.ident()
                self.expect(":")
                ann = self.ty()
                self.expect(")")
            else:
                x, ann = self.ident(), None
            self.expect(".")
            return Fun(x, self.term(scope + [x]), ann, span=sp)
        if self.at("case"):
            self.advance()
            s = self.term(scope)
            self.expect("of")
            self.expect("inl")
            x = self.ident()
            self.expect("->")
            left = self.term(scope + [x])
            self.expect("|")
            self.expect("inr")
            y = self.ident()
            self.expect("->")
            right = self.term(scope + [y])
            return Case(s, x, left, y, right, span=sp)
        return self.cons(scope)

    def cons(self, scope):
        sp = self.span()
        head = self.app(scope)
        if self.at("::"):
            self.advance()
            return Cons(head, self.cons(scope), span=sp)
        return head

    def _starts_unary(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (
            t.kind in ("sym", "kw") and t.text in ("(", "nil", "inl", "inr", "fst", "snd", "fold"))

    def app(self, scope):
        sp = self.span()
        t = self.unary(scope)
        while self._starts_unary():
            t = App(t, self.unary(scope), span=sp)
        return t

    def unary(self, scope):
        sp = self.span()
        for kw, node in (("inl", Inl), ("inr", Inr), ("fst", Fst), ("snd", Snd)):
            if self.at(kw):
                self.advance()
                return node(self.unary(scope), span=sp)
        if self.at("fold"):
            self.advance()
            s1 = self.atom(scope)
            self.expect("(")
            x, y = self.ident(), self.ident()
            self.expect(".")
            s2 = self.term(scope + [x, y])
            self.expect(")")
            return Fold(s1, x, y, s2, self.atom(scope), span=sp)
        return self.atom(scope)

    def atom(self, scope):
        sp = self.span()
        t = self.tok
        if self.at("nil"):
            self.advance()
            return Nil(span=sp)
        if t.kind == "ident":
            self.advance()
            name = t.text
            if name in scope:
                return Var(name, span=sp)
            if name in self.ops and self.at("("):
                self.advance()
                args = []
                if not self.at(")"):
                    args.append(self.term(scope))
                    while self.at(","):
                        self.advance()
                        args.append(self.term(scope))
                self.expect(")")
                return PrimApp(name, tuple(args), span=sp)
            if name in self.defs:
                body, ty = self.defs[name]
                return Ann(body, ty, span=sp)
            raise ParseError(f"unbound variable {name!r}", t.line, t.col)
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return UnitTm(span=sp)
            inner = self.term(scope)
            if self.at(","):
                self.advance()
                second = self.term(scope)
                self.expect(")")
                return Pair(inner, second, span=sp)
            if self.at(":"):
                self.advance()
                ty = self.ty()
                self.expect(")")
                return Ann(inner, ty, span=sp)
            self.expect(")")
            return inner
        self.fail("expected a term")

    # -- programs
    def program(self, sig_name=None, inputs=()):
        while self.at("type") or self.at("def"):
            if self.advance().text == "type":
                name = self.ident()
                self.expect("=")
                self.aliases[name] = self.ty()
            else:
                name = self.ident()
                self.expect(":")
                ty = self.ty()
                self.expect("=")
                self.defs[name] = (self.term([]), ty)
        self.expect("program")
        name = self.ident() if self.tok.kind == "ident" else "main"
        params = []
        while self.at("("):
            self.advance()
            x = self.ident()
            self.expect(":")
            params.append((x, self.ty()))
            self.expect(")")
        self.expect(":")
        result = self.ty()
        self.expect("=")
        body = self.term([x for x, _ in params])
        if self.tok.kind != "eof":
            self.fail("expected end of input")
        return Program(tuple(params), result, body, name, sig_name, tuple(inputs))


_PRAGMA = re.compile(r"^\s*--\s*(sig|input):\s*(.*?)\s*$", re.MULTILINE)


def pragmas(src: str) -> tuple[str | None, list[str]]:
    sig, inputs = None, []
    for key, val in _PRAGMA.findall(src):
        if key == "sig":
            sig = val
        else:
            inputs.append(val)
    return sig, inputs


def parseProgram(src: str, sig=None) -> Program:
    """Parse a program file.  ``sig`` (a signature) resolves op names and
    primitive types; without it, the ``-- sig:`` pragma is only recorded."""
    sig_name, inputs = pragmas(src)
    if sig is not None:
        p = Parser(src, sig.ops, sig.prim_types)
        sig_name = sig.name
    else:
        p = Parser(src)
    return p.program(sig_name, inputs)


def parseTerm(src: str, sig=None, scope=()):
    p = Parser(src, sig.ops if sig else (), sig.prim_types if sig else None)
    t = p.term(list(scope))
    if p.tok.kind != "eof":
        p.fail("expected end of input")
    return t


def parseType(src: str, prim_types=None):
    p = Parser(src, (), prim_types)
    t = p.ty()
    if p.tok.kind != "eof":
        p.fail("expected end of input")
    return t
