"""Families of lattices: values with per-point forward and backward maps.

A morphism is a triple ``(apply, fwd, bwd)``.  ``fwd(x, dx)`` pushes an
approximation of the input at ``x`` to an approximation of the output at
``apply(x)``; ``bwd(x, dy)`` pulls an output approximation back to the least
input approximation.  Composition is the chain rule.

Objects (``Obj``) say which lattice sits over each value.  At first-order
objects the meet side and the join side are the same finite lattice
(described by :mod:`gslice.lattice`).  At function type they split: the meet
side is a pointwise function (``FunMeet``) and the join side a finite formal
join of point/tangent entries (``FunJoin``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from gslice import lattice as L
from gslice.lattice import UNIT, Tuple


# -- values -----------------------------------------------------------------

@dataclass(frozen=True)
class UnitV:
    def __repr__(self):
        return "()"

    def __hash__(self):
        return hash("UnitV")


UNITV = UnitV()


@dataclass(frozen=True)
class PrimV:
    payload: Any  # Fraction, bool or str


@dataclass(frozen=True)
class PairV:
    fst: Any
    snd: Any


@dataclass(frozen=True)
class InlV:
    value: Any


@dataclass(frozen=True)
class InrV:
    value: Any


@dataclass(frozen=True)
class ListV:
    items: tuple

    def __init__(self, items=()):
        object.__setattr__(self, "items", tuple(items))


@dataclass(frozen=True, eq=False)
class ClosureV:
    """A function value: a morphism restricted to one environment.

    ``fwd_at(x, dx)`` and ``bwd_at(x, dy)`` are the derivatives with respect
    to the argument only.
    """
    apply: Callable
    fwd_at: Callable
    bwd_at: Callable

    def __repr__(self):
        return "<closure>"


Value = Any


def num(q) -> PrimV:
    return PrimV(Fraction(q))


def first_order_value(v) -> bool:
    match v:
        case ClosureV():
            return False
        case PairV(a, b):
            return first_order_value(a) and first_order_value(b)
        case InlV(a) | InrV(a):
            return first_order_value(a)
        case ListV(items):
            return all(first_order_value(i) for i in items)
    return True


# -- function-type tangents ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class FunMeet:
    """Meet-side tangent of a function: a tangent of the result at every point."""
    at_point: Callable

    def __call__(self, x):
        return self.at_point(x)


@dataclass(frozen=True)
class FunJoin:
    """Join-side tangent of a function: a finite formal join of (point, tangent)."""
    entries: tuple = ()

    def __init__(self, entries=()):
        object.__setattr__(self, "entries", tuple(entries))


# -- objects ----------------------------------------------------------------

class Obj:
    """An object of the family category: a lattice over every value."""

    first_order = True

    def fibre(self, v) -> L.FibreDesc:
        raise TypeError(f"{self!r} has no first-order fibre")

    def sides(self, v):
        """(meet side, join side) fibres at ``v``; identical at first order."""
        d = self.fibre(v)
        return d, d

    def top(self, v):
        return L.top(self.fibre(v))

    def bottom(self, v):
        return L.bottom(self.fibre(v))

    def meet(self, v, a, b):
        return L.meet(self.fibre(v), a, b)

    def join(self, v, a, b):
        return L.join(self.fibre(v), a, b)

    def leq(self, v, a, b) -> bool:
        return L.leq(self.fibre(v), a, b)


@dataclass(frozen=True, repr=False)
class UnitObj(Obj):
    def fibre(self, v):
        return L.ONE

    def __repr__(self):
        return "1"


@dataclass(frozen=True, repr=False)
class PrimObj(Obj):
    """A primitive object given by a fibre-valued function of the value."""
    name: str
    fibre_fn: Callable = None

    def fibre(self, v):
        return self.fibre_fn(v)

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class LiftObj(Obj):
    inner: Obj

    def __post_init__(self):
        if not self.inner.first_order:
            raise TypeError("lifting is only defined on first-order objects")

    def fibre(self, v):
        return L.Lifted(self.inner.fibre(v))

    def __repr__(self):
        return f"Lift({self.inner!r})"


@dataclass(frozen=True, repr=False)
class ProdObj(Obj):
    left: Obj
    right: Obj

    @property
    def first_order(self):
        return self.left.first_order and self.right.first_order

    def fibre(self, v):
        return L.Prod((self.left.fibre(v.fst), self.right.fibre(v.snd)))

    def top(self, v):
        return Tuple((self.left.top(v.fst), self.right.top(v.snd)))

    def bottom(self, v):
        return Tuple((self.left.bottom(v.fst), self.right.bottom(v.snd)))

    def meet(self, v, a, b):
        return Tuple((self.left.meet(v.fst, a[0], b[0]), self.right.meet(v.snd, a[1], b[1])))

    def join(self, v, a, b):
        return Tuple((self.left.join(v.fst, a[0], b[0]), self.right.join(v.snd, a[1], b[1])))

    def leq(self, v, a, b):
        return self.left.leq(v.fst, a[0], b[0]) and self.right.leq(v.snd, a[1], b[1])

    def __repr__(self):
        return f"({self.left!r} x {self.right!r})"


@dataclass(frozen=True, repr=False)
class SumObj(Obj):
    """Coproduct: the fibre at an injected value is the fibre of its payload."""
    left: Obj
    right: Obj

    @property
    def first_order(self):
        return self.left.first_order and self.right.first_order

    def _side(self, v):
        if isinstance(v, InlV):
            return self.left, v.value
        if isinstance(v, InrV):
            return self.right, v.value
        raise TypeError(f"expected an injection, got {v!r}")

    def fibre(self, v):
        o, x = self._side(v)
        return o.fibre(x)

    def top(self, v):
        o, x = self._side(v)
        return o.top(x)

    def bottom(self, v):
        o, x = self._side(v)
        return o.bottom(x)

    def meet(self, v, a, b):
        o, x = self._side(v)
        return o.meet(x, a, b)

    def join(self, v, a, b):
        o, x = self._side(v)
        return o.join(x, a, b)

    def leq(self, v, a, b):
        o, x = self._side(v)
        return o.leq(x, a, b)

    def __repr__(self):
        return f"({self.left!r} + {self.right!r})"


@dataclass(frozen=True, repr=False)
class ListObj(Obj):
    """Lists as the coproduct of finite powers; the fibre at ``[v1..vn]``
    is ``d(v1) x (d(v2) x (... x (d(vn) x 1)))``."""
    elem: Obj

    @property
    def first_order(self):
        return self.elem.first_order

    def fibre(self, v):
        d = L.ONE
        for x in reversed(v.items):
            d = L.Prod((self.elem.fibre(x), d))
        return d

    def _fold(self, v, leaf, f):
        out = leaf
        for x in reversed(v.items):
            out = Tuple((f(x), out))
        return out

    def top(self, v):
        return self._fold(v, UNIT, self.elem.top)

    def bottom(self, v):
        return self._fold(v, UNIT, self.elem.bottom)

    def _zip(self, v, a, b, op):
        heads = []
        for x in v.items:
            heads.append(op(x, a[0], b[0]))
            a, b = a[1], b[1]
        out = UNIT
        for t in reversed(heads):
            out = Tuple((t, out))
        return out

    def meet(self, v, a, b):
        return self._zip(v, a, b, self.elem.meet)

    def join(self, v, a, b):
        return self._zip(v, a, b, self.elem.join)

    def leq(self, v, a, b):
        for x in v.items:
            if not self.elem.leq(x, a[0], b[0]):
                return False
            a, b = a[1], b[1]
        return True

    def __repr__(self):
        return f"List({self.elem!r})"


@dataclass(frozen=True, repr=False)
class HomObj(Obj):
    """Internal hom.  Its fibres are not finite lattices, so only the
    operations the combinators need exist: top/meet on the meet side,
    bottom/join on the join side."""
    dom: Obj
    cod: Obj
    first_order = False

    def top(self, cl):
        return FunMeet(lambda x: self.cod.top(cl.apply(x)))

    def bottom(self, cl):
        return FunJoin(())

    def meet(self, cl, f, g):
        return FunMeet(lambda x: self.cod.meet(cl.apply(x), f(x), g(x)))

    def join(self, cl, f, g):
        return self.normalize(cl, FunJoin(f.entries + g.entries))

    def normalize(self, cl, fj: FunJoin) -> FunJoin:
        """Merge entries at equal points and drop bottom entries.

        Points are merged only when the domain is first order; otherwise no
        equality is available and entries are kept as they are.
        """
        if not self.dom.first_order:
            return fj
        merged: dict = {}
        for x, dy in fj.entries:
            if x in merged:
                merged[x] = self.cod.join(cl.apply(x), merged[x], dy)
            else:
                merged[x] = dy
        kept = [(x, dy) for x, dy in merged.items()
                if not _is_bottom(self.cod, cl.apply(x), dy)]
        kept.sort(key=lambda e: repr(e[0]))
        return FunJoin(kept)

    def leq(self, cl, a, b):
        raise TypeError("function-type tangents are not ordered")

    def __repr__(self):
        return f"({self.dom!r} -> {self.cod!r})"


def _is_bottom(obj: Obj, v, t) -> bool:
    if obj.first_order:
        return t == obj.bottom(v)
    if isinstance(t, FunJoin):
        return not t.entries
    return False


# -- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """``apply(x)``, ``fwd(x, dx)``, ``bwd(x, dy)``."""
    apply: Callable
    fwd: Callable
    bwd: Callable
    name: str = ""

    def __repr__(self):
        return f"<Morphism {self.name}>" if self.name else "<Morphism>"


def identity() -> Morphism:
    return Morphism(lambda x: x, lambda x, dx: dx, lambda x, dy: dy, "id")


_NOTHING = object()


def _last_call(fn: Callable) -> Callable:
    """Remember the most recent call, keyed on argument identity.

    Slice queries hit one point with many tangents; without this, every
    composite recomputes the primal values of everything beneath it.
    """
    cell = (_NOTHING, None)

    def run(x):
        nonlocal cell
        key, val = cell
        if key is x:
            return val
        val = fn(x)
        cell = (x, val)
        return val

    return run


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g . f``: forward maps chain in order, backward maps in reverse."""
    f_apply = _last_call(f.apply)

    def fwd(x, dx):
        return g.fwd(f_apply(x), f.fwd(x, dx))

    def bwd(x, dz):
        return f.bwd(x, g.bwd(f_apply(x), dz))

    return Morphism(lambda x: g.apply(f_apply(x)), fwd, bwd)


def compose_all(*ms: Morphism) -> Morphism:
    """``compose_all(h, g, f) == h . g . f``."""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def pairM(f: Morphism, g: Morphism, dom: Obj) -> Morphism:
    """``<f, g>``; the backward map joins the two pullbacks in ``dom``."""
    def bwd(x, dy):
        return dom.join(x, f.bwd(x, dy[0]), g.bwd(x, dy[1]))

    return Morphism(_last_call(lambda x: PairV(f.apply(x), g.apply(x))),
                    lambda x, dx: Tuple((f.fwd(x, dx), g.fwd(x, dx))),
                    bwd)


def proj1(left: Obj, right: Obj) -> Morphism:
    return Morphism(lambda p: p.fst,
                    lambda p, dp: dp[0],
                    lambda p, da: Tuple((da, right.bottom(p.snd))),
                    "fst")


def proj2(left: Obj, right: Obj) -> Morphism:
    return Morphism(lambda p: p.snd,
                    lambda p, dp: dp[1],
                    lambda p, db: Tuple((left.bottom(p.fst), db)),
                    "snd")


def terminal(dom: Obj) -> Morphism:
    return Morphism(lambda x: UNITV, lambda x, dx: UNIT,
                    lambda x, du: dom.bottom(x), "!")


def swap(left: Obj, right: Obj) -> Morphism:
    return pairM(proj2(left, right), proj1(left, right), ProdObj(left, right))


def inj1() -> Morphism:
    return Morphism(InlV, lambda x, dx: dx, lambda x, dy: dy, "inl")


def inj2() -> Morphism:
    return Morphism(InrV, lambda x, dx: dx, lambda x, dy: dy, "inr")


def dispatch(select: Callable[[Value], Morphism], name: str = "") -> Morphism:
    """A morphism that picks its behaviour from the input value."""
    return Morphism(lambda x: select(x).apply(x),
                    lambda x, dx: select(x).fwd(x, dx),
                    lambda x, dy: select(x).bwd(x, dy),
                    name)


def caseM(f: Morphism, g: Morphism) -> Morphism:
    """Parameterised copairing ``G x (A + B) -> C`` from ``f: G x A -> C`` and
    ``g: G x B -> C``.  The tangent at ``(gamma, inl a)`` is already a tangent
    at ``(gamma, a)``, so it is passed through untouched."""
    @_last_call
    def strip(p):
        return PairV(p.fst, p.snd.value)

    def branch(p):
        match p.snd:
            case InlV():
                return f
            case InrV():
                return g
        raise TypeError(f"case on a non-injection {p.snd!r}")

    return Morphism(lambda p: branch(p).apply(strip(p)),
                    lambda p, dp: branch(p).fwd(strip(p), dp),
                    lambda p, dc: branch(p).bwd(strip(p), dc),
                    "case")


def curry(h: Morphism, gamma: Obj, arg: Obj, res: Obj) -> Morphism:
    """``lambda(h)`` for ``h: G x X -> Y``.

    The closure carries the partial derivatives in the argument; the
    morphism's own derivatives are the partials in the environment, with the
    argument held at its zero tangent (top forwards, bottom backwards).
    """
    def close(env):
        return ClosureV(
            apply=lambda x: h.apply(PairV(env, x)),
            fwd_at=lambda x, dx: h.fwd(PairV(env, x), Tuple((gamma.top(env), dx))),
            bwd_at=lambda x, dy: h.bwd(PairV(env, x), dy)[1],
        )

    def fwd(env, denv):
        return FunMeet(lambda x: h.fwd(PairV(env, x), Tuple((denv, arg.top(x)))))

    def bwd(env, dfun):
        out = gamma.bottom(env)
        for x, dy in dfun.entries:
            out = gamma.join(env, out, h.bwd(PairV(env, x), dy)[0])
        return out

    return Morphism(close, fwd, bwd, "curry")


def evalM(arg: Obj, res: Obj) -> Morphism:
    """Evaluation ``(X => Y) x X -> Y``."""
    def check(cl):
        if not isinstance(cl, ClosureV):
            raise TypeError(f"applying a non-function {cl!r}; was the program typechecked?")
        return cl

    def fwd(p, dp):
        cl, x = check(p.fst), p.snd
        return res.meet(cl.apply(x), dp[0](x), cl.fwd_at(x, dp[1]))

    def bwd(p, dy):
        cl, x = check(p.fst), p.snd
        return Tuple((FunJoin(((x, dy),)), cl.bwd_at(x, dy)))

    return Morphism(lambda p: check(p.fst).apply(p.snd), fwd, bwd, "eval")


# -- lists ------------------------------------------------------------------

def nilM() -> Morphism:
    return Morphism(lambda u: ListV(()), lambda u, du: UNIT, lambda u, dl: UNIT, "nil")


def consM() -> Morphism:
    """``A x List A -> List A``; the list fibre is the product fibre, so the
    tangent maps are identities."""
    return Morphism(lambda p: ListV((p.fst,) + p.snd.items),
                    lambda p, dp: dp, lambda p, dl: dl, "cons")


def unconsM() -> Morphism:
    """Inverse of ``consM`` on non-empty lists."""
    return Morphism(_last_call(lambda l: PairV(l.items[0], ListV(l.items[1:]))),
                    lambda l, dl: dl, lambda l, dp: dp, "uncons")


def foldM(s1: Morphism, s2: Morphism, gamma: Obj, elem: Obj, acc: Obj) -> Morphism:
    """``fold(s1, s2): G x List S -> T`` by recursion on the list spine.

    ``s1: G -> T`` and ``s2: (G x S) x T -> T``.  Each unrolled step is built
    from the other combinators, so its tangent maps come from the chain rule
    and contributions to ``G`` from different iterations meet (forwards) or
    join (backwards) through pairing.
    """
    lst = ListObj(elem)
    dom = ProdObj(gamma, lst)
    p_env = proj1(gamma, lst)
    p_list = proj2(gamma, lst)
    p_head = compose_all(proj1(elem, lst), unconsM(), p_list)
    p_tail = compose_all(proj2(elem, lst), unconsM(), p_list)
    steps: dict[int, Morphism] = {}

    def unrolled(n: int) -> Morphism:
        if n not in steps:
            if n == 0:
                steps[n] = compose(s1, p_env)
            else:
                rest = compose(unrolled(n - 1), pairM(p_env, p_tail, dom))
                step_dom = pairM(pairM(p_env, p_head, dom), rest, dom)
                steps[n] = compose(s2, step_dom)
        return steps[n]

    return dispatch(lambda p: unrolled(len(p.snd.items)), "fold")
