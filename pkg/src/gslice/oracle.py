"""Brute-force checks on finite structures.

Two engines live here.  ``checkGalois`` and friends enumerate fibres and test
a (bwd, fwd) pair directly.  ``classify`` works on plain finite posets and
decides monotonicity, conditional multiplicativity and stability.  They
cross-check each other through ``embed``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable

from gslice import lattice as L
from gslice.fam import compose
from gslice.literals import format_elem

PAIRWISE_LIMIT = 1 << 20


@dataclass
class Report:
    name: str = ""
    violations: list = field(default_factory=list)
    checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, msg: str):
        self.violations.append(msg)

    def merge(self, other: "Report") -> "Report":
        self.violations += other.violations
        self.checked += other.checked
        self.notes += other.notes
        return self

    def lines(self) -> list[str]:
        out = [f"VIOLATION {v}" for v in self.violations]
        status = "PASS" if self.ok else "FAIL"
        label = f" {self.name}" if self.name else ""
        out.append(f"{status}{label}: {self.checked} checks, {len(self.violations)} violations")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _show(d, a) -> str:
    try:
        return format_elem(d, a)
    except Exception:  # malformed element; show it raw
        return repr(a)


def checkGalois(dX, dY, fwd: Callable, bwd: Callable, name: str = "") -> Report:
    """Exhaustive check that ``bwd -| fwd`` between ``dY`` and ``dX``.

    Both maps must land in their fibres and be monotone (checked along
    covering pairs, which suffices by transitivity).  The biconditional
    ``y <= fwd(x) <=> bwd(y) <= x`` is tested on every pair when there are at
    most ``PAIRWISE_LIMIT`` pairs; above that the equivalent unit/counit
    form ``bwd(fwd(x)) <= x`` and ``y <= fwd(bwd(y))`` is used instead.
    """
    rep = Report(name)
    xs, ys = L.enumerate_fibre(dX), L.enumerate_fibre(dY)
    F = {x: fwd(x) for x in xs}
    B = {y: bwd(y) for y in ys}
    bad = False
    for x, fx in F.items():
        rep.checked += 1
        if not L.conforms(dY, fx):
            rep.fail(f"fwd({_show(dX, x)}) = {fx!r} is not in {L.describe(dY)}")
            bad = True
    for y, by in B.items():
        rep.checked += 1
        if not L.conforms(dX, by):
            rep.fail(f"bwd({_show(dY, y)}) = {by!r} is not in {L.describe(dX)}")
            bad = True
    if bad:
        return rep

    for d_in, d_out, table, which in ((dX, dY, F, "fwd"), (dY, dX, B, "bwd")):
        for a, fa in table.items():
            for b in L.covers(d_in, a):
                rep.checked += 1
                if not L.leq(d_out, fa, table[b]):
                    rep.fail(f"{which} not monotone: {_show(d_in, a)} <= {_show(d_in, b)} but "
                             f"{which}(..) = {_show(d_out, fa)} vs {_show(d_out, table[b])}")

    if len(xs) * len(ys) <= PAIRWISE_LIMIT:
        for y, x in itertools.product(ys, xs):
            rep.checked += 1
            left, right = L.leq(dY, y, F[x]), L.leq(dX, B[y], x)
            if left != right:
                rep.fail(f"adjunction fails at y={_show(dY, y)}, x={_show(dX, x)}: "
                         f"y <= fwd(x) is {left}, bwd(y) <= x is {right}")
    else:
        rep.notes.append("adjunction via unit/counit")
        for x, fx in F.items():
            rep.checked += 1
            if not L.leq(dX, B[fx], x):
                rep.fail(f"bwd(fwd(x)) <= x fails at x={_show(dX, x)}")
        for y, by in B.items():
            rep.checked += 1
            if not L.leq(dY, y, F[by]):
                rep.fail(f"y <= fwd(bwd(y)) fails at y={_show(dY, y)}")
    return rep


def checkPreservation(dX, dY, fwd: Callable, bwd: Callable, name: str = "") -> Report:
    """fwd preserves top and binary meets; bwd preserves bottom and binary joins."""
    rep = Report(name)
    xs, ys = L.enumerate_fibre(dX), L.enumerate_fibre(dY)
    F = {x: fwd(x) for x in xs}
    B = {y: bwd(y) for y in ys}
    rep.checked += 2
    if F[L.top(dX)] != L.top(dY):
        rep.fail("fwd(top) is not top")
    if B[L.bottom(dY)] != L.bottom(dX):
        rep.fail("bwd(bottom) is not bottom")
    for a, b in itertools.combinations(xs, 2):
        rep.checked += 1
        if F[L.meet(dX, a, b)] != L.meet(dY, F[a], F[b]):
            rep.fail(f"fwd does not preserve the meet of {_show(dX, a)} and {_show(dX, b)}")
    for a, b in itertools.combinations(ys, 2):
        rep.checked += 1
        if B[L.join(dY, a, b)] != L.join(dX, B[a], B[b]):
            rep.fail(f"bwd does not preserve the join of {_show(dY, a)} and {_show(dY, b)}")
    return rep


def checkMorphismAt(m, dom, cod, x, name: str = "") -> Report:
    """checkGalois for a morphism at one first-order point."""
    return checkGalois(dom.fibre(x), cod.fibre(m.apply(x)),
                       lambda dx: m.fwd(x, dx), lambda dy: m.bwd(x, dy), name)


def checkChainRule(f, g, samples, dom, cod, name: str = "") -> Report:
    """Compare ``compose(g, f)`` with the hand-chained tangent maps.

    ``dom`` and ``cod`` are the objects at the two ends; ``samples`` are
    points of ``dom``.
    """
    rep = Report(name)
    h = compose(g, f)
    for x in samples:
        fx = f.apply(x)
        rep.checked += 1
        if h.apply(x) != g.apply(fx):
            rep.fail(f"apply differs at {x!r}")
            continue
        for dx in L.enumerate_fibre(dom.fibre(x)):
            rep.checked += 1
            if h.fwd(x, dx) != g.fwd(fx, f.fwd(x, dx)):
                rep.fail(f"fwd differs at {x!r}, {dx!r}")
        for dz in L.enumerate_fibre(cod.fibre(g.apply(fx))):
            rep.checked += 1
            if h.bwd(x, dz) != f.bwd(x, g.bwd(fx, dz)):
                rep.fail(f"bwd differs at {x!r}, {dz!r}")
    return rep


# -- finite posets and functions ---------------------------------------------

@dataclass(frozen=True, eq=False)
class FinPoset:
    elements: tuple
    leq: frozenset

    def __init__(self, elements, leq):
        elements = tuple(dict.fromkeys(elements))
        pairs = frozenset(leq) | {(e, e) for e in elements}
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", pairs)
        for a, b in pairs:
            if a != b and (b, a) in pairs:
                raise ValueError(f"not antisymmetric at {a!r}, {b!r}")
        for a, b, c in itertools.product(elements, repeat=3):
            if (a, b) in pairs and (b, c) in pairs and (a, c) not in pairs:
                raise ValueError(f"not transitive at {a!r}, {b!r}, {c!r}")

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def down(self, x) -> list:
        return [e for e in self.elements if self.le(e, x)]

    def glb(self, a, b):
        lower = [c for c in self.elements if self.le(c, a) and self.le(c, b)]
        best = [c for c in lower if all(self.le(d, c) for d in lower)]
        return best[0] if best else None

    def least(self, subset):
        for c in subset:
            if all(self.le(c, d) for d in subset):
                return c
        return None

    def downset_lattice(self, x) -> L.Fin:
        els = self.down(x)
        return L.Fin(els, [(a, b) for a in els for b in els if self.le(a, b)])


def flat(*values: Hashable, bottom: Hashable = "bot") -> FinPoset:
    """A flat poset: ``bottom`` below each of ``values``."""
    return FinPoset((bottom,) + values, [(bottom, v) for v in values])


def product(*ps: FinPoset) -> FinPoset:
    els = list(itertools.product(*(p.elements for p in ps)))
    leq = [(a, b) for a in els for b in els
           if all(p.le(x, y) for p, x, y in zip(ps, a, b))]
    return FinPoset(els, leq)


@dataclass(frozen=True, eq=False)
class FinFun:
    dom: FinPoset
    cod: FinPoset
    table: dict
    name: str = ""

    def __post_init__(self):
        for x in self.dom.elements:
            if x not in self.table:
                raise ValueError(f"{self.name or 'function'} undefined at {x!r}")
            if self.table[x] not in self.cod.elements:
                raise ValueError(f"{self.name or 'function'} maps {x!r} outside its codomain")

    def __call__(self, x):
        return self.table[x]


def tabulate(dom: FinPoset, cod: FinPoset, fn: Callable, name: str = "") -> FinFun:
    return FinFun(dom, cod, {x: fn(x) for x in dom.elements}, name)


@dataclass
class Classification:
    monotone: bool
    cm: bool
    stable: bool
    monotone_witnesses: list = field(default_factory=list)   # (a, b): a <= b, f a !<= f b
    cm_witnesses: list = field(default_factory=list)         # (x, a, b)
    stable_witnesses: list = field(default_factory=list)     # (x, y)


def leastPreimage(f: FinFun, x, y):
    """Least ``x0 <= x`` with ``y <= f(x0)``, or None when there is no least one."""
    if not f.cod.le(y, f(x)):
        raise ValueError(f"precondition: {y!r} is not below f({x!r}) = {f(x)!r}")
    hits = [x0 for x0 in f.dom.down(x) if f.cod.le(y, f(x0))]
    return f.dom.least(hits)


def stable_at(f: FinFun, x) -> list:
    """Outputs below ``f(x)`` with no least preimage below ``x``."""
    return [y for y in f.cod.down(f(x)) if leastPreimage(f, x, y) is None]


def classify(f: FinFun) -> Classification:
    P, Q = f.dom, f.cod
    mono = [(a, b) for a in P.elements for b in P.elements
            if P.le(a, b) and not Q.le(f(a), f(b))]
    cm_bad = []
    for x in P.elements:
        below = P.down(x)
        for a, b in itertools.combinations(below, 2):
            m = P.glb(a, b)
            if m is None:
                continue
            if Q.glb(f(a), f(b)) != f(m):
                cm_bad.append((x, a, b))
    unstable = []
    if not mono:
        for x in P.elements:
            unstable += [(x, y) for y in stable_at(f, x)]
    monotone = not mono
    return Classification(monotone, monotone and not cm_bad, monotone and not unstable,
                          mono, cm_bad, unstable)


def embed(f: FinFun, x):
    """The family member of ``f`` at ``x`` as (dX, dY, fwd, bwd).

    ``fwd`` is ``f`` restricted to the downset.  ``bwd`` picks the least
    preimage when it exists and otherwise the first minimal one, so the pair
    is a Galois connection exactly when ``f`` is stable (and monotone) at x.
    """
    dX = f.dom.downset_lattice(x)
    dY = f.cod.downset_lattice(f(x))

    def fwd(a):
        return L.FinElem(f(a.id))

    def bwd(b):
        hits = [x0 for x0 in f.dom.down(x) if f.cod.le(b.id, f(x0))]
        least = f.dom.least(hits)
        if least is None:
            least = next(h for h in hits if not any(k != h and f.dom.le(k, h) for k in hits))
        return L.FinElem(least)

    return dX, dY, fwd, bwd


# -- sampling (for fibres that cannot be enumerated) -------------------------

GRID = tuple(Fraction(n, d) for n, d in ((0, 1), (1, 10), (1, 4), (1, 2), (1, 1), (2, 1), (7, 3)))


def sample_elem(d, rng: random.Random):
    match d:
        case L.One():
            return L.UNIT
        case L.Two():
            return rng.choice((L.BOT, L.TOP))
        case L.Lifted(inner):
            return L.BOT if rng.random() < 0.25 else L.Up(sample_elem(inner, rng))
        case L.Prod(cs):
            return L.Tuple(sample_elem(c, rng) for c in cs) if cs else L.UNIT
        case L.IntervalAt(p):
            if rng.random() < 0.2:
                return L.BOT
            return L.Interval(p - rng.choice(GRID), p + rng.choice(GRID))
        case L.Fin():
            return L.FinElem(rng.choice(d.elements))
    raise TypeError(f"not a fibre description: {d!r}")


def checkGaloisSampled(dX, dY, fwd, bwd, rng: random.Random, pairs: int = 20,
                       name: str = "") -> Report:
    """Sampled version of ``checkGalois``.

    Random pairs rarely sit on the boundary of the biconditional, so each
    sampled element is also paired with its image under the other map
    (unit and counit), and monotonicity is tested along ``a meet b <= a``.
    """
    rep = Report(name)
    for _ in range(pairs):
        x, y = sample_elem(dX, rng), sample_elem(dY, rng)
        fx, by = fwd(x), bwd(y)
        rep.checked += 5
        if L.leq(dY, y, fx) != L.leq(dX, by, x):
            rep.fail(f"adjunction fails at y={_show(dY, y)}, x={_show(dX, x)}")
        if not L.leq(dX, bwd(fx), x):
            rep.fail(f"bwd(fwd(x)) <= x fails at x={_show(dX, x)}")
        if not L.leq(dY, y, fwd(by)):
            rep.fail(f"y <= fwd(bwd(y)) fails at y={_show(dY, y)}")
        x2, y2 = sample_elem(dX, rng), sample_elem(dY, rng)
        if not L.leq(dY, fwd(L.meet(dX, x, x2)), fx):
            rep.fail(f"fwd not monotone below x={_show(dX, x)}")
        if not L.leq(dX, bwd(L.meet(dY, y, y2)), by):
            rep.fail(f"bwd not monotone below y={_show(dY, y)}")
    return rep
