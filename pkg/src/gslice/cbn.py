"""Call-by-name translation: every type former gets a presence tag.

``T(X) = approx * X``.  Terms are translated over their typing derivation;
``let`` is encoded as an annotated lambda applied to the bound term.  Fresh
names contain ``%`` so they can never capture a source variable.
"""
from __future__ import annotations

import itertools

from gslice.fam import UNITV, InlV, InrV, ListV, PairV
from gslice.lattice import TOP
from gslice.lang.syntax import (
    Ann, App, Arrow, Case, Cons, Fold, Fst, Fun, Inl, Inr, ListTy, Nil, Pair,
    Prim, PrimApp, ProdTy, Program, Snd, Sum, UnitTm, UnitTy, Var,
)
from gslice.lang.typecheck import TypedTerm

APPROX = Prim("approx")


def T(ty):
    return ProdTy(APPROX, ty)


def cbnType(ty):
    match ty:
        case Prim() | UnitTy():
            return ty
        case Sum(a, b):
            return Sum(T(cbnType(a)), T(cbnType(b)))
        case ProdTy(a, b):
            return ProdTy(T(cbnType(a)), T(cbnType(b)))
        case Arrow(a, b):
            return Arrow(T(cbnType(a)), T(cbnType(b)))
        case ListTy(e):
            return ListTy(T(cbnType(e)))
    raise TypeError(f"not a type: {ty!r}")


def _let(x, ty, bound, body):
    return App(Fun(x, body, ty), bound)


def _eta(v):
    return Pair(PrimApp("top", ()), v)


class _Translator:
    def __init__(self):
        self.fresh_ids = itertools.count()

    def fresh(self, hint):
        return f"{hint}%{next(self.fresh_ids)}"

    def bind(self, m, inner_ty, x, body, result_inner_ty):
        """``m : T(A)``, ``x : A`` in ``body : T(B)``; tags combine with ``and``."""
        mm, r = self.fresh("m"), self.fresh("r")
        tagged = Pair(PrimApp("and", (Fst(Var(mm)), Fst(Var(r)))), Snd(Var(r)))
        return _let(mm, T(inner_ty), m,
                    _let(x, inner_ty, Snd(Var(mm)),
                         _let(r, T(result_inner_ty), body, tagged)))

    def term(self, tt: TypedTerm):
        t, sub = tt.term, tt.sub
        out_ty = cbnType(tt.ty)
        match t:
            case Var(name):
                return Var(name)
            case Ann():
                return self.term(sub[0])
            case UnitTm():
                return _eta(UnitTm())
            case Nil():
                return _eta(Ann(Nil(), out_ty))
            case Inl():
                return _eta(Ann(Inl(self.term(sub[0])), out_ty))
            case Inr():
                return _eta(Ann(Inr(self.term(sub[0])), out_ty))
            case Pair():
                return _eta(Pair(self.term(sub[0]), self.term(sub[1])))
            case Fun(x):
                return _eta(Fun(x, self.term(sub[0]), T(cbnType(tt.ty.dom))))
            case PrimApp(op):
                names = [self.fresh("v") for _ in sub]
                body = _eta(PrimApp(op, tuple(Var(n) for n in names)))
                for n, s in reversed(list(zip(names, sub))):
                    body = self.bind(self.term(s), cbnType(s.ty), n, body, out_ty)
                return body
            case Fst() | Snd():
                v = self.fresh("p")
                proj = Fst(Var(v)) if isinstance(t, Fst) else Snd(Var(v))
                return self.bind(self.term(sub[0]), cbnType(sub[0].ty), v, proj, out_ty)
            case App():
                f = self.fresh("f")
                return self.bind(self.term(sub[0]), cbnType(sub[0].ty), f,
                                 App(Var(f), self.term(sub[1])), out_ty)
            case Case(_, x, _, y, _):
                v = self.fresh("s")
                body = Case(Var(v), x, self.term(sub[1]), y, self.term(sub[2]))
                return self.bind(self.term(sub[0]), cbnType(sub[0].ty), v, body, out_ty)
            case Cons():
                lst = self.fresh("l")
                body = _eta(Cons(self.term(sub[0]), Var(lst)))
                return self.bind(self.term(sub[1]), out_ty, lst, body, out_ty)
            case Fold(_, x, y, _, _):
                lst = self.fresh("l")
                body = Fold(self.term(sub[0]), x, y, self.term(sub[1]), Var(lst))
                return self.bind(self.term(sub[2]), cbnType(sub[2].ty), lst, body, out_ty)
        raise TypeError(f"cannot translate {t!r}")


def cbnTerm(tt: TypedTerm):
    """Translate a typed term; the result has type ``T(cbnType(ty))`` in the
    context where each ``x : s`` becomes ``x : T(cbnType(s))``."""
    return _Translator().term(tt)


def cbnProgram(p: Program, tt: TypedTerm) -> Program:
    params = tuple((x, T(cbnType(ty))) for x, ty in p.params)
    return Program(params, T(cbnType(p.result)), cbnTerm(tt), p.name, "cbn-num", p.inputs)


# -- values -----------------------------------------------------------------

def cbn_value(ty, v):
    """Embed a value of ``ty`` as a value of ``T(cbnType(ty))``."""
    return PairV(UNITV, _inner(ty, v))


def _inner(ty, v):
    match ty:
        case Prim() | UnitTy():
            return v
        case Sum(a, b):
            return InlV(cbn_value(a, v.value)) if isinstance(v, InlV) else InrV(cbn_value(b, v.value))
        case ProdTy(a, b):
            return PairV(cbn_value(a, v.fst), cbn_value(b, v.snd))
        case ListTy(e):
            return ListV(cbn_value(e, x) for x in v.items)
    raise TypeError(f"cannot embed a value of type {ty!r}")


def erase(ty, w):
    """Inverse of ``cbn_value``: drop every tag."""
    v = w.snd
    match ty:
        case Prim() | UnitTy():
            return v
        case Sum(a, b):
            return InlV(erase(a, v.value)) if isinstance(v, InlV) else InrV(erase(b, v.value))
        case ProdTy(a, b):
            return PairV(erase(a, v.fst), erase(b, v.snd))
        case ListTy(e):
            return ListV(erase(e, x) for x in v.items)
    raise TypeError(f"cannot erase at type {ty!r}")


# -- tag view ---------------------------------------------------------------

def tag_view(ty, w, t):
    """Project a tangent at ``T(cbnType(ty))`` onto its tags.

    Products show their components only; lists show their own tag followed
    by the elements; sums hide payloads that carry no tag of their own.
    The result is a nested tuple of ``lattice`` elements.
    """
    tag, inner, v = t[0], t[1], w.snd
    match ty:
        case Prim() | UnitTy():
            return tag
        case ProdTy(a, b):
            return (tag_view(a, v.fst, inner[0]), tag_view(b, v.snd, inner[1]))
        case ListTy(e):
            out = [tag]
            for x in v.items:
                out.append(tag_view(e, x, inner[0]))
                inner = inner[1]
            return tuple(out)
        case Sum(a, b):
            sub_ty = a if isinstance(v, InlV) else b
            if isinstance(sub_ty, UnitTy):
                return tag
            return (tag, tag_view(sub_ty, v.value, inner))
    raise TypeError(f"no tag view at type {ty!r}")


def tag_view_ctx(ctx, values, tangent):
    """Tag view of a whole context tangent, one entry per variable."""
    parts = []
    for (_, ty), v in reversed(list(zip(ctx, values))):
        parts.append(tag_view(ty, v, tangent[1]))
        tangent = tangent[0]
    parts.reverse()
    return parts[0] if len(parts) == 1 else tuple(parts)


def show_tags(view) -> str:
    """``^``/``_`` rendering of a tag view."""
    if isinstance(view, tuple):
        return "(" + ", ".join(map(show_tags, view)) + ")"
    return "^" if view == TOP else "_"
