"""Types, terms and programs, plus a pretty printer that the parser reads back."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class Prim:
    name: str


@dataclass(frozen=True)
class Sum:
    left: "Ty"
    right: "Ty"


@dataclass(frozen=True)
class UnitTy:
    pass


@dataclass(frozen=True)
class ProdTy:
    left: "Ty"
    right: "Ty"


@dataclass(frozen=True)
class Arrow:
    dom: "Ty"
    cod: "Ty"


@dataclass(frozen=True)
class ListTy:
    elem: "Ty"


Ty = Union[Prim, Sum, UnitTy, ProdTy, Arrow, ListTy]
UNIT_TY = UnitTy()


def firstOrder(ty: Ty) -> bool:
    match ty:
        case Prim() | UnitTy():
            return True
        case Sum(a, b) | ProdTy(a, b):
            return firstOrder(a) and firstOrder(b)
        case ListTy(e):
            return firstOrder(e)
        case Arrow():
            return False
    raise TypeError(f"not a type: {ty!r}")


# -- terms ------------------------------------------------------------------

Span = Optional[tuple]   # (line, column), 1-based


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class PrimApp:
    op: str
    args: tuple
    span: Span = _span()


@dataclass(frozen=True)
class Inl:
    body: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Inr:
    body: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Case:
    scrutinee: "Term"
    x: str
    left: "Term"
    y: str
    right: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class UnitTm:
    span: Span = _span()


@dataclass(frozen=True)
class Pair:
    fst: "Term"
    snd: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Fst:
    body: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Snd:
    body: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Fun:
    x: str
    body: "Term"
    ann: Optional[Ty] = None
    span: Span = _span()


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Nil:
    span: Span = _span()


@dataclass(frozen=True)
class Cons:
    head: "Term"
    tail: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Fold:
    nil_case: "Term"
    x: str
    y: str
    cons_case: "Term"
    target: "Term"
    span: Span = _span()


@dataclass(frozen=True)
class Ann:
    body: "Term"
    ty: Ty
    span: Span = _span()


Term = Union[Var, PrimApp, Inl, Inr, Case, UnitTm, Pair, Fst, Snd, Fun, App,
             Nil, Cons, Fold, Ann]


@dataclass(frozen=True)
class Program:
    """A term together with its (ordered) inputs and annotated result type."""
    params: tuple        # ((name, Ty), ...)
    result: Ty
    body: Term
    name: str = "main"
    sig: Optional[str] = None
    inputs: tuple = ()   # raw input literal strings from ``-- input:`` pragmas


# -- printing ---------------------------------------------------------------

def show_ty(ty: Ty, prec: int = 0) -> str:
    """Precedences: 0 arrow, 1 sum, 2 product, 3 list application."""
    match ty:
        case Prim(name):
            return name
        case UnitTy():
            return "1"
        case ListTy(e):
            s = f"list {show_ty(e, 4)}"
            return f"({s})" if prec > 3 else s
        case ProdTy(a, b):
            s = f"{show_ty(a, 2)} * {show_ty(b, 3)}"
            return f"({s})" if prec > 2 else s
        case Sum(a, b):
            s = f"{show_ty(a, 1)} + {show_ty(b, 2)}"
            return f"({s})" if prec > 1 else s
        case Arrow(a, b):
            s = f"{show_ty(a, 1)} -> {show_ty(b, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(f"not a type: {ty!r}")


# term precedences: 0 binder forms, 1 cons, 2 application, 3 atoms
def show_term(t: Term, prec: int = 0) -> str:
    def wrap(s, level):
        return f"({s})" if prec > level else s

    match t:
        case Var(name):
            return name
        case PrimApp(op, args):
            return f"{op}({', '.join(show_term(a) for a in args)})"
        case UnitTm():
            return "()"
        case Nil():
            return "nil"
        case Pair(a, b):
            return f"({show_term(a)}, {show_term(b)})"
        case Ann(body, ty):
            return f"({show_term(body)} : {show_ty(ty)})"
        case Inl(b):
            return wrap(f"inl {show_term(b, 3)}", 2)
        case Inr(b):
            return wrap(f"inr {show_term(b, 3)}", 2)
        case Fst(b):
            return wrap(f"fst {show_term(b, 3)}", 2)
        case Snd(b):
            return wrap(f"snd {show_term(b, 3)}", 2)
        case App(f, a):
            return wrap(f"{show_term(f, 2)} {show_term(a, 3)}", 2)
        case Fold(s1, x, y, s2, target):
            return wrap(f"fold {show_term(s1, 3)} ({x} {y}. {show_term(s2)}) {show_term(target, 3)}", 2)
        case Cons(h, tl):
            return wrap(f"{show_term(h, 2)} :: {show_term(tl, 1)}", 1)
        case Fun(x, body, ann):
            binder = x if ann is None else f"({x} : {show_ty(ann)})"
            return wrap(f"\\{binder}. {show_term(body)}", 0)
        case Case(s, x, l, y, r):
            # the left branch is wrapped so a nested case cannot swallow "| inr"
            return wrap(f"case {show_term(s)} of inl {x} -> {show_term(l, 1)} | inr {y} -> {show_term(r)}", 0)
    raise TypeError(f"not a term: {t!r}")


def show_program(p: Program) -> str:
    lines = []
    if p.sig:
        lines.append(f"-- sig: {p.sig}")
    for raw in p.inputs:
        lines.append(f"-- input: {raw}")
    params = " ".join(f"({x} : {show_ty(ty)})" for x, ty in p.params)
    lines.append(f"program {p.name} {params} : {show_ty(p.result)} =")
    lines.append("  " + show_term(p.body))
    return "\n".join(lines) + "\n"
