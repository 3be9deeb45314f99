"""Primitive objects and operations, and the built-in signatures.

Everything here lives in the first-order fragment: fibres are the same on
the meet and join sides, and each primitive's ``(bwd, fwd)`` is meant to be
a Galois connection at every point (checked by the oracle, not assumed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from gslice import lattice as L
from gslice.fam import (
    UNITV, LiftObj, Morphism, Obj, PairV, PrimObj, PrimV, ProdObj, UnitObj,
    compose, compose_all, identity, pairM, proj2, swap, terminal,
)
from gslice.lattice import BOT, TOP, UNIT, Interval, Tuple, Up


# -- op domains -------------------------------------------------------------

def arg_obj(objs) -> Obj:
    """Domain object of an n-ary op: 1, X, X x Y, X x (Y x Z), ..."""
    objs = list(objs)
    if not objs:
        return UnitObj()
    out = objs[-1]
    for o in reversed(objs[:-1]):
        out = ProdObj(o, out)
    return out


def pack_args(values):
    values = list(values)
    if not values:
        return UNITV
    out = values[-1]
    for v in reversed(values[:-1]):
        out = PairV(v, out)
    return out


def unpack_args(x, n: int) -> list:
    if n == 0:
        return []
    out = []
    for _ in range(n - 1):
        out.append(x.fst)
        x = x.snd
    out.append(x)
    return out


# -- discrete ---------------------------------------------------------------

def discObj(name: str) -> PrimObj:
    """A set with no approximation information: every fibre is ``One``."""
    return PrimObj(name, lambda v: L.ONE)


def discOp(fn: Callable, dom: Obj, arity: int, name: str = "") -> Morphism:
    """Embed a plain function on payloads; tangent maps are the unique ones."""
    def apply(x):
        return PrimV(fn(*[a.payload for a in unpack_args(x, arity)]))

    return Morphism(apply, lambda x, dx: UNIT, lambda x, dy: dom.bottom(x), name)


# -- lifting ----------------------------------------------------------------

def liftObj(o: Obj) -> LiftObj:
    return LiftObj(o)


def etaLift(inner: Obj) -> Morphism:
    def bwd(x, dy):
        return inner.bottom(x) if dy == BOT else dy.inner

    return Morphism(lambda x: x, lambda x, dx: Up(dx), bwd, "eta")


def bindLift(f: Morphism, gamma: Obj) -> Morphism:
    """Kleisli extension ``G x Lift X -> Lift Y`` of ``f: G x X -> Lift Y``.

    An absent scrutinee makes the result absent; demanding any part of the
    result demands the scrutinee.
    """
    def fwd(p, dp):
        denv, dx = dp[0], dp[1]
        if dx == BOT:
            return BOT
        return f.fwd(p, Tuple((denv, dx.inner)))

    def bwd(p, dy):
        if dy == BOT:
            return Tuple((gamma.bottom(p.fst), BOT))
        denv, dx = f.bwd(p, dy)
        return Tuple((denv, Up(dx)))

    return Morphism(f.apply, fwd, bwd, "bind")


def lifted_op(fn: Callable, base: Obj, arity: int, name: str = "") -> Morphism:
    """An op on ``Lift(base)`` that is strict in every argument.

    Built as nested binds, left to right, around ``eta . disc(fn)``.
    """
    lifted = LiftObj(base)
    if arity == 0:
        return compose(etaLift(base), discOp(fn, UnitObj(), 0, name))
    if arity == 1:
        # bind with a trivial environment: X ~ 1 x X
        body = compose_all(etaLift(base), discOp(fn, base, 1, name), proj2(UnitObj(), base))
        bound = bindLift(body, UnitObj())
        return compose(bound, pairM(terminal(lifted), identity(), lifted))
    if arity == 2:
        # let b1 <= x in let b2 <= y in eta(fn(b1, b2))
        inner = compose_all(etaLift(base), discOp(fn, ProdObj(base, base), 2, name))
        # inner: (b1, b2) -> Lift; bind over y with environment b1
        over_y = bindLift(inner, base)                       # (b1, y) -> Lift
        over_x = bindLift(compose(over_y, swap(lifted, base)), lifted)   # (y, x) -> Lift
        return compose(over_x, swap(lifted, lifted))
    raise NotImplementedError("lifted ops of arity > 2")


# -- approximation object ---------------------------------------------------

def approxObj() -> PrimObj:
    """One value, fibre ``{Bot < Top}``: pure presence/absence."""
    return PrimObj("approx", lambda v: L.TWO)


def andOp() -> Morphism:
    return Morphism(lambda x: UNITV,
                    lambda x, dx: L.meet(L.TWO, dx[0], dx[1]),
                    lambda x, dy: Tuple((dy, dy)),
                    "and")


def topOp() -> Morphism:
    return Morphism(lambda x: UNITV, lambda x, dx: TOP, lambda x, dy: UNIT, "top")


# -- intervals --------------------------------------------------------------

def intervalRealObj(name: str = "num") -> PrimObj:
    return PrimObj(name, lambda v: L.IntervalAt(v.payload))


def _at(v):
    return L.IntervalAt(v.payload)


def addI() -> Morphism:
    def apply(p):
        return PrimV(p.fst.payload + p.snd.payload)

    def fwd(p, dp):
        x1, x2 = p.fst.payload, p.snd.payload
        i1, i2 = dp[0], dp[1]
        L.check(_at(p.fst), i1)
        L.check(_at(p.snd), i2)
        if i1 == BOT or i2 == BOT:
            return BOT
        return Interval(min(i1.lo + x2, i2.lo + x1), max(i1.hi + x2, i2.hi + x1))

    def bwd(p, dy):
        x1, x2 = p.fst.payload, p.snd.payload
        L.check(L.IntervalAt(x1 + x2), dy)
        if dy == BOT:
            return Tuple((BOT, BOT))
        return Tuple((Interval(dy.lo - x2, dy.hi - x2), Interval(dy.lo - x1, dy.hi - x1)))

    return Morphism(apply, fwd, bwd, "add")


def negI() -> Morphism:
    def fwd(x, dx):
        L.check(_at(x), dx)
        return BOT if dx == BOT else Interval(-dx.hi, -dx.lo)

    def bwd(x, dy):
        L.check(L.IntervalAt(-x.payload), dy)
        return BOT if dy == BOT else Interval(-dy.hi, -dy.lo)

    return Morphism(lambda x: PrimV(-x.payload), fwd, bwd, "neg")


def scaleI(r) -> Morphism:
    """Multiplication by the constant ``r``; bounds swap when ``r < 0``.

    For ``r == 0`` the backward map is constantly bottom, so its right
    adjoint is constantly top, absent input included.
    """
    r = Fraction(r)

    def fwd(x, dx):
        L.check(_at(x), dx)
        if r == 0:
            return Interval(0, 0)
        if dx == BOT:
            return BOT
        lo, hi = r * dx.lo, r * dx.hi
        return Interval(min(lo, hi), max(lo, hi))

    def bwd(x, dy):
        L.check(L.IntervalAt(r * x.payload), dy)
        if r == 0 or dy == BOT:
            return BOT
        lo, hi = dy.lo / r, dy.hi / r
        return Interval(min(lo, hi), max(lo, hi))

    return Morphism(lambda x: PrimV(r * x.payload), fwd, bwd, f"scale({r})")


def constI(q) -> Morphism:
    """A constant ``1 -> num``; its forward map hits the exact point."""
    q = Fraction(q)
    return Morphism(lambda u: PrimV(q), lambda u, du: Interval(q, q),
                    lambda u, dy: UNIT, f"const({q})")


# -- signatures -------------------------------------------------------------

@dataclass(frozen=True)
class OpSpec:
    args: tuple          # primitive type names
    result: str
    morphism: Morphism
    plain: Callable      # plain set-level function on Values


@dataclass
class SignatureInterp:
    name: str
    prim_types: dict = field(default_factory=dict)
    ops: dict = field(default_factory=dict)

    def op_type(self, op: str):
        spec = self.ops[op]
        return spec.args, spec.result


def _plain(fn, arity):
    def run(*vals):
        assert len(vals) == arity
        return PrimV(fn(*[v.payload for v in vals]))
    return run


_NUM_OPS = {
    "zero": (0, lambda: Fraction(0)),
    "one": (0, lambda: Fraction(1)),
    "add": (2, lambda a, b: a + b),
    "neg": (1, lambda a: -a),
}


def _num_sig(name: str, num: Obj, morphisms: dict) -> SignatureInterp:
    sig = SignatureInterp(name, {"num": num})
    for op, (arity, fn) in _NUM_OPS.items():
        sig.ops[op] = OpSpec(("num",) * arity, "num", morphisms[op], _plain(fn, arity))
    return sig


def _disc_num(name="disc-num") -> SignatureInterp:
    num = discObj("num")
    ms = {op: discOp(fn, arg_obj([num] * a), a, op) for op, (a, fn) in _NUM_OPS.items()}
    return _num_sig(name, num, ms)


def _lift_num() -> SignatureInterp:
    base = discObj("num")
    ms = {op: lifted_op(fn, base, a, op) for op, (a, fn) in _NUM_OPS.items()}
    return _num_sig("lift-num", LiftObj(base), ms)


def _interval_num() -> SignatureInterp:
    ms = {"zero": constI(0), "one": constI(1), "add": addI(), "neg": negI()}
    return _num_sig("interval-num", intervalRealObj(), ms)


def _cbn_num() -> SignatureInterp:
    # Numbers stay discrete: under the tagging monad each number already
    # carries a presence tag, and T(Disc X) ~ Lift(Disc X).
    sig = _disc_num("cbn-num")
    sig.prim_types["approx"] = approxObj()
    sig.ops["top"] = OpSpec((), "approx", topOp(), lambda: UNITV)
    sig.ops["and"] = OpSpec(("approx", "approx"), "approx", andOp(), lambda a, b: UNITV)
    return sig


SIGNATURES = {
    "disc-num": _disc_num,
    "lift-num": _lift_num,
    "interval-num": _interval_num,
    "cbn-num": _cbn_num,
}


def builtinSignature(name: str) -> SignatureInterp:
    try:
        return SIGNATURES[name]()
    except KeyError:
        raise ValueError(f"unknown signature {name!r}; expected one of {sorted(SIGNATURES)}") from None
