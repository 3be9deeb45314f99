"""Bidirectional typechecking.

``synth`` infers a type; ``check`` pushes an expected type inward so that
``inl``, ``inr``, ``nil`` and unannotated lambdas need no annotation when
their type is known from context.  The result is a ``TypedTerm`` tree that the
interpreter walks.
"""
from __future__ import annotations

from dataclasses import dataclass

from gslice.lang.syntax import (
    UNIT_TY, Ann, App, Arrow, Case, Cons, Fold, Fst, Fun, Inl, Inr, ListTy, Nil,
    Pair, Prim, PrimApp, ProdTy, Program, Snd, Sum, UnitTm, Var, show_ty,
)


class TypeCheckError(TypeError):
    def __init__(self, message, span=None, expected=None, actual=None):
        where = f"{span[0]}:{span[1]}: " if span else ""
        extra = ""
        if expected is not None and actual is not None:
            extra = f" (expected {show_ty(expected)}, got {show_ty(actual)})"
        super().__init__(where + message + extra)
        self.span, self.expected, self.actual = span, expected, actual


class CannotSynth(TypeCheckError):
    """Raised for terms whose type must come from context."""


@dataclass(frozen=True, eq=False)
class TypedTerm:
    term: object
    ty: object
    ctx: tuple         # ((name, Ty), ...), innermost last
    sub: tuple = ()    # typed children, in a fixed order per node kind


class _Checker:
    def __init__(self, sig):
        self.sig = sig

    def valid_ty(self, ty, span):
        match ty:
            case Prim(name):
                if self.sig is not None and name not in self.sig.prim_types:
                    raise TypeCheckError(f"unknown primitive type {name!r}", span)
            case Sum(a, b) | ProdTy(a, b):
                self.valid_ty(a, span)
                self.valid_ty(b, span)
            case Arrow(a, b):
                self.valid_ty(a, span)
                self.valid_ty(b, span)
            case ListTy(e):
                self.valid_ty(e, span)

    def synth(self, t, ctx) -> TypedTerm:
        sp = t.span
        match t:
            case Var(name):
                for x, ty in reversed(ctx):
                    if x == name:
                        return TypedTerm(t, ty, ctx)
                raise TypeCheckError(f"unbound variable {name!r}", sp)
            case PrimApp(op, args):
                if self.sig is None or op not in self.sig.ops:
                    raise TypeCheckError(f"unknown operation {op!r}", sp)
                arg_names, res = self.sig.op_type(op)
                if len(args) != len(arg_names):
                    raise TypeCheckError(
                        f"{op} takes {len(arg_names)} argument(s), given {len(args)}", sp)
                subs = tuple(self.check(a, ctx, Prim(n)) for a, n in zip(args, arg_names))
                return TypedTerm(t, Prim(res), ctx, subs)
            case UnitTm():
                return TypedTerm(t, UNIT_TY, ctx)
            case Pair(a, b):
                ta, tb = self.synth(a, ctx), self.synth(b, ctx)
                return TypedTerm(t, ProdTy(ta.ty, tb.ty), ctx, (ta, tb))
            case Fst(b) | Snd(b):
                tb = self.synth(b, ctx)
                if not isinstance(tb.ty, ProdTy):
                    raise TypeCheckError(f"expected product, got {show_ty(tb.ty)}", sp)
                ty = tb.ty.left if isinstance(t, Fst) else tb.ty.right
                return TypedTerm(t, ty, ctx, (tb,))
            case Fun(x, body, ann):
                if ann is None:
                    raise CannotSynth(f"cannot infer the type of \\{x}; annotate the binder", sp)
                self.valid_ty(ann, sp)
                tb = self.synth(body, ctx + ((x, ann),))
                return TypedTerm(t, Arrow(ann, tb.ty), ctx, (tb,))
            case App(f, a):
                tf = self.synth(f, ctx)
                if not isinstance(tf.ty, Arrow):
                    raise TypeCheckError(f"applying a non-function of type {show_ty(tf.ty)}", sp)
                ta = self.check(a, ctx, tf.ty.dom)
                return TypedTerm(t, tf.ty.cod, ctx, (tf, ta))
            case Cons(h, tl):
                th = self.synth(h, ctx)
                ttl = self.check(tl, ctx, ListTy(th.ty))
                return TypedTerm(t, ListTy(th.ty), ctx, (th, ttl))
            case Fold(s1, x, y, s2, target):
                ttarget, elem = self._list(target, ctx)
                ts1 = self.synth(s1, ctx)
                ts2 = self.check(s2, ctx + ((x, elem), (y, ts1.ty)), ts1.ty)
                return TypedTerm(t, ts1.ty, ctx, (ts1, ts2, ttarget))
            case Case(s, x, left, y, right):
                ts, (a, b) = self._sum(s, ctx)
                try:
                    tl = self.synth(left, ctx + ((x, a),))
                    tr = self.check(right, ctx + ((y, b),), tl.ty)
                except CannotSynth:
                    tr = self.synth(right, ctx + ((y, b),))
                    tl = self.check(left, ctx + ((x, a),), tr.ty)
                return TypedTerm(t, tl.ty, ctx, (ts, tl, tr))
            case Ann(body, ty):
                self.valid_ty(ty, sp)
                tb = self.check(body, ctx, ty)
                return TypedTerm(t, ty, ctx, (tb,))
            case Inl() | Inr() | Nil():
                kind = type(t).__name__.lower()
                raise CannotSynth(f"cannot infer the type of {kind}; add an annotation", sp)
        raise TypeCheckError(f"not a term: {t!r}", sp)

    def _list(self, target, ctx):
        tt = self.synth(target, ctx)
        if not isinstance(tt.ty, ListTy):
            raise TypeCheckError(f"fold: expected list, got {show_ty(tt.ty)}", target.span)
        return tt, tt.ty.elem

    def _sum(self, s, ctx):
        ts = self.synth(s, ctx)
        if not isinstance(ts.ty, Sum):
            raise TypeCheckError(f"case: expected sum, got {show_ty(ts.ty)}", s.span)
        return ts, (ts.ty.left, ts.ty.right)

    def check(self, t, ctx, ty) -> TypedTerm:
        sp = t.span
        match t, ty:
            case Fun(x, body, ann), Arrow(dom, cod):
                if ann is not None and ann != dom:
                    raise TypeCheckError("lambda annotation mismatch", sp, dom, ann)
                tb = self.check(body, ctx + ((x, dom),), cod)
                return TypedTerm(t, ty, ctx, (tb,))
            case Inl(b), Sum(a, _):
                return TypedTerm(t, ty, ctx, (self.check(b, ctx, a),))
            case Inr(b), Sum(_, c):
                return TypedTerm(t, ty, ctx, (self.check(b, ctx, c),))
            case Nil(), ListTy():
                return TypedTerm(t, ty, ctx)
            case Pair(a, b), ProdTy(l, r):
                return TypedTerm(t, ty, ctx, (self.check(a, ctx, l), self.check(b, ctx, r)))
            case Cons(h, tl), ListTy(e):
                return TypedTerm(t, ty, ctx, (self.check(h, ctx, e), self.check(tl, ctx, ty)))
            case Case(s, x, left, y, right), _:
                ts, (a, b) = self._sum(s, ctx)
                tl = self.check(left, ctx + ((x, a),), ty)
                tr = self.check(right, ctx + ((y, b),), ty)
                return TypedTerm(t, ty, ctx, (ts, tl, tr))
            case Fold(s1, x, y, s2, target), _:
                ttarget, elem = self._list(target, ctx)
                ts1 = self.check(s1, ctx, ty)
                ts2 = self.check(s2, ctx + ((x, elem), (y, ty)), ty)
                return TypedTerm(t, ty, ctx, (ts1, ts2, ttarget))
            case (Inl() | Inr() | Nil() | Fun()), _:
                what = type(t).__name__.lower()
                raise TypeCheckError(f"{what} cannot have type {show_ty(ty)}", sp)
        tt = self.synth(t, ctx)
        if tt.ty != ty:
            raise TypeCheckError("type mismatch", sp, ty, tt.ty)
        return tt


def typecheck(t, sig=None, ctx=(), expected=None) -> TypedTerm:
    c = _Checker(sig)
    ctx = tuple(ctx)
    return c.synth(t, ctx) if expected is None else c.check(t, ctx, expected)


def typecheckProgram(p: Program, sig=None) -> TypedTerm:
    c = _Checker(sig)
    for _, ty in p.params:
        c.valid_ty(ty, None)
    c.valid_ty(p.result, None)
    return c.check(p.body, tuple(p.params), p.result)


__all__ = ["TypeCheckError", "CannotSynth", "TypedTerm", "typecheck",
           "typecheckProgram"]
