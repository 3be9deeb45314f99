"""Typed terms as morphisms, a plain reference evaluator, and slice sessions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from gslice import lattice as L
from gslice.fam import (
    UNITV, ClosureV, HomObj, InlV, InrV, ListObj, ListV, Morphism, Obj, PairV,
    PrimV, ProdObj, SumObj, UnitObj, caseM, compose, consM, curry, evalM, foldM,
    identity, inj1, inj2, nilM, pairM, proj1, proj2, terminal,
)
from gslice.lang.syntax import (
    Ann, App, Arrow, Case, Cons, Fold, Fst, Fun, Inl, Inr, ListTy, Nil, Pair,
    Prim, PrimApp, ProdTy, Snd, Sum, UnitTm, UnitTy, Var, firstOrder, show_ty,
)
from gslice.lang.typecheck import TypedTerm
from gslice.prims import SignatureInterp


def interpTy(sig: SignatureInterp, ty) -> Obj:
    match ty:
        case Prim(name):
            if name not in sig.prim_types:
                raise ValueError(f"unknown primitive type {name!r} in signature {sig.name}")
            return sig.prim_types[name]
        case UnitTy():
            return UnitObj()
        case Sum(a, b):
            return SumObj(interpTy(sig, a), interpTy(sig, b))
        case ProdTy(a, b):
            return ProdObj(interpTy(sig, a), interpTy(sig, b))
        case Arrow(a, b):
            return HomObj(interpTy(sig, a), interpTy(sig, b))
        case ListTy(e):
            return ListObj(interpTy(sig, e))
    raise TypeError(f"not a type: {ty!r}")


def ctx_objs(sig, ctx) -> list[Obj]:
    """Prefix objects ``P_0 = 1, P_k = P_(k-1) x T_k``."""
    out = [UnitObj()]
    for _, ty in ctx:
        out.append(ProdObj(out[-1], interpTy(sig, ty)))
    return out


def ctxObj(sig, ctx) -> Obj:
    return ctx_objs(sig, ctx)[-1]


def ctx_value(values) -> Any:
    """Left-nested context value ``((((), x1), x2), ...)``."""
    env = UNITV
    for v in values:
        env = PairV(env, v)
    return env


def ctx_values(env, n: int) -> list:
    out = []
    for _ in range(n):
        out.append(env.snd)
        env = env.fst
    return out[::-1]


def _var(sig, ctx, name) -> Morphism:
    n = len(ctx)
    i = max(k for k, (x, _) in enumerate(ctx) if x == name)
    prefix = ctx_objs(sig, ctx)
    m = proj2(prefix[i], interpTy(sig, ctx[i][1]))
    for k in range(i + 1, n):
        m = compose(m, proj1(prefix[k], interpTy(sig, ctx[k][1])))
    return m


def _strip_ann(tt: TypedTerm) -> TypedTerm:
    while isinstance(tt.term, Ann):
        tt = tt.sub[0]
    return tt


def interpTerm(tt: TypedTerm, sig: SignatureInterp, beta: bool = True) -> Morphism:
    """Compile a typed term to a morphism ``[ctx] -> [ty]``.

    With ``beta`` set, a lambda applied on the spot compiles to
    ``body . <id, arg>`` instead of ``eval . <curry(body), arg>``.  The two
    agree (beta law), but the curried form runs the body's tangent maps once
    per side, which is exponential in the nesting depth of such redexes.
    """
    t, ctx, sub = tt.term, tt.ctx, tt.sub
    gamma = ctxObj(sig, ctx)
    rec = lambda s: interpTerm(s, sig, beta)  # noqa: E731
    match t:
        case Var(name):
            return _var(sig, ctx, name)
        case PrimApp(op):
            spec = sig.ops[op]
            args = [rec(s) for s in sub]
            if not args:
                return compose(spec.morphism, terminal(gamma))
            tupled = args[-1]
            for a in reversed(args[:-1]):
                tupled = pairM(a, tupled, gamma)
            return compose(spec.morphism, tupled)
        case Inl():
            return compose(inj1(), rec(sub[0]))
        case Inr():
            return compose(inj2(), rec(sub[0]))
        case Case():
            s, left, right = sub
            return compose(caseM(rec(left), rec(right)), pairM(identity(), rec(s), gamma))
        case UnitTm():
            return terminal(gamma)
        case Pair():
            return pairM(rec(sub[0]), rec(sub[1]), gamma)
        case Fst() | Snd():
            ty = sub[0].ty
            a, b = interpTy(sig, ty.left), interpTy(sig, ty.right)
            p = proj1(a, b) if isinstance(t, Fst) else proj2(a, b)
            return compose(p, rec(sub[0]))
        case Fun():
            dom = interpTy(sig, tt.ty.dom)
            cod = interpTy(sig, tt.ty.cod)
            return curry(rec(sub[0]), gamma, dom, cod)
        case App():
            fn, arg = sub
            lam = _strip_ann(fn)
            if beta and isinstance(lam.term, Fun):
                return compose(rec(lam.sub[0]), pairM(identity(), rec(arg), gamma))
            return compose(evalM(interpTy(sig, fn.ty.dom), interpTy(sig, fn.ty.cod)),
                           pairM(rec(fn), rec(arg), gamma))
        case Nil():
            return compose(nilM(), terminal(gamma))
        case Cons():
            return compose(consM(), pairM(rec(sub[0]), rec(sub[1]), gamma))
        case Fold():
            s1, s2, target = sub
            elem = interpTy(sig, target.ty.elem)
            acc = interpTy(sig, tt.ty)
            return compose(foldM(rec(s1), rec(s2), gamma, elem, acc),
                           pairM(identity(), rec(target), gamma))
        case Ann():
            return rec(sub[0])
    raise TypeError(f"cannot interpret {t!r}")


# -- reference evaluator ----------------------------------------------------
# Environments are plain dicts and functions are Python closures; nothing
# below touches the morphism algebra.

def evalPlain(tt: TypedTerm, env, sig: SignatureInterp) -> Any:
    names = [x for x, _ in tt.ctx]
    scope = dict(zip(names, ctx_values(env, len(names))))
    return _eval(tt, scope, sig)


def _eval(tt, scope, sig):
    t, sub = tt.term, tt.sub
    ev = lambda s, sc=scope: _eval(s, sc, sig)  # noqa: E731
    match t:
        case Var(name):
            return scope[name]
        case PrimApp(op):
            return sig.ops[op].plain(*[ev(s) for s in sub])
        case Inl():
            return InlV(ev(sub[0]))
        case Inr():
            return InrV(ev(sub[0]))
        case Case(_, x, _, y, _):
            v = ev(sub[0])
            if isinstance(v, InlV):
                return ev(sub[1], {**scope, x: v.value})
            return ev(sub[2], {**scope, y: v.value})
        case UnitTm():
            return UNITV
        case Pair():
            return PairV(ev(sub[0]), ev(sub[1]))
        case Fst():
            return ev(sub[0]).fst
        case Snd():
            return ev(sub[0]).snd
        case Fun(x):
            body = sub[0]
            return lambda v: _eval(body, {**scope, x: v}, sig)
        case App():
            f = ev(sub[0])
            a = ev(sub[1])
            return f.apply(a) if isinstance(f, ClosureV) else f(a)
        case Nil():
            return ListV(())
        case Cons():
            return ListV((ev(sub[0]),) + ev(sub[1]).items)
        case Fold(_, x, y, _, _):
            acc = ev(sub[0])
            for item in reversed(ev(sub[2]).items):
                acc = ev(sub[1], {**scope, x: item, y: acc})
            return acc
        case Ann():
            return ev(sub[0])
    raise TypeError(f"cannot evaluate {t!r}")


# -- values against types ---------------------------------------------------

def conformsValue(ty, v, sig=None) -> bool:
    match ty, v:
        case UnitTy(), _:
            return v == UNITV
        case Prim(), PrimV():
            return True
        case Prim("approx"), _:
            return v == UNITV
        case Sum(a, _), InlV(x):
            return conformsValue(a, x, sig)
        case Sum(_, b), InrV(x):
            return conformsValue(b, x, sig)
        case ProdTy(a, b), PairV(x, y):
            return conformsValue(a, x, sig) and conformsValue(b, y, sig)
        case ListTy(e), ListV(items):
            return all(conformsValue(e, x, sig) for x in items)
        case Arrow(), _:
            return isinstance(v, ClosureV) or callable(v)
    return False


# -- slice sessions ---------------------------------------------------------

class SliceError(ValueError):
    pass


@dataclass(frozen=True)
class SliceSession:
    """One run of a first-order program: the output and its two slice maps."""
    tt: TypedTerm
    sig: SignatureInterp
    morphism: Morphism
    input: Any
    output: Any
    input_fibre: L.FibreDesc
    output_fibre: L.FibreDesc

    def fwd(self, dx):
        L.check(self.input_fibre, dx)
        return self.morphism.fwd(self.input, dx)

    def bwd(self, dy):
        L.check(self.output_fibre, dy)
        return self.morphism.bwd(self.input, dy)

    @property
    def ctx(self):
        return self.tt.ctx

    @property
    def ty(self):
        return self.tt.ty


def runSlice(tt: TypedTerm, sig: SignatureInterp, input) -> SliceSession:
    for x, ty in tt.ctx:
        if not firstOrder(ty):
            raise SliceError(f"slice queries require first-order type; {x} : {show_ty(ty)}")
    if not firstOrder(tt.ty):
        raise SliceError(f"slice queries require first-order type; result : {show_ty(tt.ty)}")
    values = ctx_values(input, len(tt.ctx))
    for (x, ty), v in zip(tt.ctx, values):
        if not conformsValue(ty, v, sig):
            raise SliceError(f"input {x} does not have type {show_ty(ty)}: {v!r}")
    m = interpTerm(tt, sig)
    out = m.apply(input)
    return SliceSession(tt, sig, m, input, out,
                        ctxObj(sig, tt.ctx).fibre(input), interpTy(sig, tt.ty).fibre(out))


__all__ = ["interpTy", "interpTerm", "evalPlain", "runSlice", "SliceSession",
           "SliceError", "ctxObj", "ctx_value", "ctx_values", "conformsValue"]
