"""Finite bounded lattices of approximations.

A fibre description (``FibreDesc``) names the lattice of approximations
attached to a single value; lattice elements (``LatticeElem``) are plain
immutable values that only make sense relative to a fibre.  Every operation
takes the fibre explicitly and checks conformance of its arguments.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Union


class ConformanceError(ValueError):
    """An element does not belong to the fibre it was used with."""


class NotEnumerable(ValueError):
    pass


# -- elements ---------------------------------------------------------------

@dataclass(frozen=True)
class UnitElem:
    def __repr__(self):
        return "Unit"

    def __hash__(self):  # field-less dataclasses would all hash alike
        return hash("Unit")


@dataclass(frozen=True)
class BotElem:
    def __repr__(self):
        return "Bot"

    def __hash__(self):  # field-less dataclasses would all hash alike
        return hash("Bot")


@dataclass(frozen=True)
class TopElem:
    def __repr__(self):
        return "Top"

    def __hash__(self):  # field-less dataclasses would all hash alike
        return hash("Top")


UNIT = UnitElem()
BOT = BotElem()
TOP = TopElem()


@dataclass(frozen=True)
class Up:
    inner: "LatticeElem"

    def __hash__(self):
        return hash((Up, self.inner))


@dataclass(frozen=True)
class Tuple:
    elems: tuple

    def __init__(self, elems: Iterable = ()):
        elems = tuple(elems)
        object.__setattr__(self, "elems", elems)
        object.__setattr__(self, "_hash", None)

    def __hash__(self):
        # elements are dict keys throughout the oracle; hash deep tuples once
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((Tuple, self.elems)))
        return self._hash

    def __getitem__(self, i):
        return self.elems[i]

    def __len__(self):
        return len(self.elems)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        object.__setattr__(self, "lo", Fraction(lo))
        object.__setattr__(self, "hi", Fraction(hi))


@dataclass(frozen=True)
class FinElem:
    id: Hashable


LatticeElem = Union[UnitElem, BotElem, TopElem, Up, Tuple, Interval, FinElem]


# -- fibres -----------------------------------------------------------------

@dataclass(frozen=True)
class One:
    """The one-element lattice."""


@dataclass(frozen=True)
class Two:
    """The lattice {Bot < Top}."""


@dataclass(frozen=True)
class Lifted:
    """``inner`` with a fresh bottom adjoined below it."""
    inner: "FibreDesc"


@dataclass(frozen=True)
class Prod:
    components: tuple

    def __init__(self, components: Iterable = ()):
        object.__setattr__(self, "components", tuple(components))
        object.__setattr__(self, "_hash", hash((Prod, self.components)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class IntervalAt:
    """Intervals around ``point`` under reverse inclusion, plus a bottom."""
    point: Fraction

    def __init__(self, point):
        object.__setattr__(self, "point", Fraction(point))


@dataclass(frozen=True, eq=False)
class Fin:
    """An explicit finite bounded lattice.

    ``leq`` is a set of ``(a, b)`` pairs meaning ``a <= b``; it is closed
    reflexively here, then validated as a lattice order.
    """
    elements: tuple
    leq: frozenset

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple]):
        elements = tuple(dict.fromkeys(elements))
        pairs = set(leq) | {(e, e) for e in elements}
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", frozenset(pairs))
        self._validate()

    def __eq__(self, other):
        return (isinstance(other, Fin) and set(self.elements) == set(other.elements)
                and self.leq == other.leq)

    def __hash__(self):
        return hash((frozenset(self.elements), self.leq))

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def _bound(self, a, b, upper: bool):
        if upper:
            cands = [c for c in self.elements if self.le(a, c) and self.le(b, c)]
            best = [c for c in cands if all(self.le(c, d) for d in cands)]
        else:
            cands = [c for c in self.elements if self.le(c, a) and self.le(c, b)]
            best = [c for c in cands if all(self.le(d, c) for d in cands)]
        return best[0] if best else None

    def _validate(self):
        els = self.elements
        if not els:
            raise ValueError("a finite lattice needs at least one element")
        known = set(els)
        for a, b in self.leq:
            if a not in known or b not in known:
                raise ValueError(f"order mentions unknown element {a!r} or {b!r}")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise ValueError(f"order is not antisymmetric at {a!r}, {b!r}")
        for a, b, c in itertools.product(els, repeat=3):
            if self.le(a, b) and self.le(b, c) and not self.le(a, c):
                raise ValueError(f"order is not transitive at {a!r} <= {b!r} <= {c!r}")
        for a, b in itertools.combinations(els, 2):
            if self._bound(a, b, upper=False) is None:
                raise ValueError(f"no meet for {a!r}, {b!r}")
            if self._bound(a, b, upper=True) is None:
                raise ValueError(f"no join for {a!r}, {b!r}")

    @cached_property
    def top(self):
        return next(e for e in self.elements if all(self.le(d, e) for d in self.elements))

    @cached_property
    def bottom(self):
        return next(e for e in self.elements if all(self.le(e, d) for d in self.elements))

    @cached_property
    def meets(self) -> dict:
        return {(a, b): self._bound(a, b, upper=False)
                for a in self.elements for b in self.elements}

    @cached_property
    def joins(self) -> dict:
        return {(a, b): self._bound(a, b, upper=True)
                for a in self.elements for b in self.elements}

    def __repr__(self):
        return f"Fin({list(self.elements)!r})"


FibreDesc = Union[One, Two, Lifted, Prod, IntervalAt, Fin]

ONE = One()
TWO = Two()


def prod(*components) -> FibreDesc:
    """Product fibre; the empty product is ``One``."""
    return Prod(components) if components else ONE


# -- conformance ------------------------------------------------------------

def conforms(d: FibreDesc, a) -> bool:
    try:
        hash(a)
    except TypeError:  # unhashable junk is never an element
        return False
    return _conforms_cached(d, a)


@lru_cache(maxsize=1 << 16)
def _conforms_cached(d, a) -> bool:
    return _conforms(d, a)


def _conforms(d: FibreDesc, a) -> bool:
    match d:
        case One():
            return a == UNIT or a == Tuple()
        case Two():
            return a == BOT or a == TOP
        case Lifted(inner):
            return a == BOT or (isinstance(a, Up) and _conforms(inner, a.inner))
        case Prod(components):
            if not components:
                return a == UNIT or a == Tuple()
            return (isinstance(a, Tuple) and len(a) == len(components)
                    and all(_conforms(c, e) for c, e in zip(components, a.elems)))
        case IntervalAt(point):
            return a == BOT or (isinstance(a, Interval) and a.lo <= point <= a.hi)
        case Fin():
            return isinstance(a, FinElem) and a.id in set(d.elements)
    raise TypeError(f"not a fibre description: {d!r}")


def check(d: FibreDesc, *elems) -> None:
    for a in elems:
        if not conforms(d, a):
            raise ConformanceError(f"{a!r} is not an element of {describe(d)}")


def _is_unit_like(d) -> bool:
    return isinstance(d, One) or (isinstance(d, Prod) and not d.components)


# -- lattice operations -----------------------------------------------------

def top(d: FibreDesc):
    match d:
        case One():
            return UNIT
        case Two():
            return TOP
        case Lifted(inner):
            return Up(top(inner))
        case Prod(components):
            return Tuple(top(c) for c in components) if components else UNIT
        case IntervalAt(point):
            return Interval(point, point)
        case Fin():
            return FinElem(d.top)
    raise TypeError(f"not a fibre description: {d!r}")


def bottom(d: FibreDesc):
    match d:
        case One():
            return UNIT
        case Two() | Lifted() | IntervalAt():
            return BOT
        case Prod(components):
            return Tuple(bottom(c) for c in components) if components else UNIT
        case Fin():
            return FinElem(d.bottom)
    raise TypeError(f"not a fibre description: {d!r}")


def meet(d: FibreDesc, a, b):
    check(d, a, b)
    return _meet(d, a, b)


def _meet(d, a, b):
    if _is_unit_like(d):
        return UNIT
    match d:
        case Two():
            return TOP if a == TOP and b == TOP else BOT
        case Lifted(inner):
            if a == BOT or b == BOT:
                return BOT
            return Up(_meet(inner, a.inner, b.inner))
        case Prod(components):
            return Tuple(_meet(c, x, y) for c, x, y in zip(components, a.elems, b.elems))
        case IntervalAt():
            if a == BOT or b == BOT:
                return BOT
            return Interval(min(a.lo, b.lo), max(a.hi, b.hi))
        case Fin():
            return FinElem(d.meets[a.id, b.id])
    raise TypeError(f"not a fibre description: {d!r}")


def join(d: FibreDesc, a, b):
    check(d, a, b)
    return _join(d, a, b)


def _join(d, a, b):
    if _is_unit_like(d):
        return UNIT
    match d:
        case Two():
            return TOP if a == TOP or b == TOP else BOT
        case Lifted(inner):
            if a == BOT:
                return b
            if b == BOT:
                return a
            return Up(_join(inner, a.inner, b.inner))
        case Prod(components):
            return Tuple(_join(c, x, y) for c, x, y in zip(components, a.elems, b.elems))
        case IntervalAt():
            if a == BOT:
                return b
            if b == BOT:
                return a
            # both contain the nominated point, so the intersection is nonempty
            return Interval(max(a.lo, b.lo), min(a.hi, b.hi))
        case Fin():
            return FinElem(d.joins[a.id, b.id])
    raise TypeError(f"not a fibre description: {d!r}")


def leq(d: FibreDesc, a, b) -> bool:
    check(d, a, b)
    return _leq(d, a, b)


def _leq(d, a, b) -> bool:
    if _is_unit_like(d):
        return True
    match d:
        case Two():
            return a == BOT or b == TOP
        case Lifted(inner):
            if a == BOT:
                return True
            if b == BOT:
                return False
            return _leq(inner, a.inner, b.inner)
        case Prod(components):
            return all(_leq(c, x, y) for c, x, y in zip(components, a.elems, b.elems))
        case IntervalAt():
            if a == BOT:
                return True
            if b == BOT:
                return False
            return a.lo <= b.lo and b.hi <= a.hi
        case Fin():
            return d.le(a.id, b.id)
    raise TypeError(f"not a fibre description: {d!r}")


def enumerable(d: FibreDesc) -> bool:
    match d:
        case IntervalAt():
            return False
        case Lifted(inner):
            return enumerable(inner)
        case Prod(components):
            return all(enumerable(c) for c in components)
    return True


def size(d: FibreDesc) -> int:
    match d:
        case One():
            return 1
        case Two():
            return 2
        case Lifted(inner):
            return size(inner) + 1
        case Prod(components):
            n = 1
            for c in components:
                n *= size(c)
            return n
        case Fin():
            return len(d.elements)
        case IntervalAt():
            raise NotEnumerable("fibre not enumerable: interval fibres are infinite")
    raise TypeError(f"not a fibre description: {d!r}")


def enumerate_fibre(d: FibreDesc) -> list:
    """All elements of ``d``, each exactly once, bottom-ish first."""
    match d:
        case One():
            return [UNIT]
        case Two():
            return [BOT, TOP]
        case Lifted(inner):
            return [BOT] + [Up(a) for a in enumerate_fibre(inner)]
        case Prod(components):
            if not components:
                return [UNIT]
            return [Tuple(t) for t in itertools.product(*map(enumerate_fibre, components))]
        case Fin():
            return [FinElem(e) for e in d.elements]
        case IntervalAt():
            raise NotEnumerable("fibre not enumerable: interval fibres are infinite")
    raise TypeError(f"not a fibre description: {d!r}")


def covers(d: FibreDesc, a) -> list:
    """Elements immediately above ``a``.

    Monotonicity of a map out of ``d`` only needs checking along covers, which
    keeps the oracle linear in the fibre size instead of quadratic.
    """
    if _is_unit_like(d):
        return []
    match d:
        case Two():
            return [TOP] if a == BOT else []
        case Lifted(inner):
            if a == BOT:
                return [Up(bottom(inner))]
            return [Up(b) for b in covers(inner, a.inner)]
        case Prod(components):
            out = []
            for i, c in enumerate(components):
                for b in covers(c, a.elems[i]):
                    out.append(Tuple(a.elems[:i] + (b,) + a.elems[i + 1:]))
            return out
        case Fin():
            above = [e for e in d.elements if e != a.id and d.le(a.id, e)]
            return [FinElem(e) for e in above
                    if not any(f != e and d.le(f, e) for f in above)]
        case IntervalAt():
            raise NotEnumerable("fibre not enumerable: interval fibres are infinite")
    raise TypeError(f"not a fibre description: {d!r}")


def describe(d: FibreDesc) -> str:
    """Compact human-readable fibre description, e.g. ``1 x (1 x L(1))``."""
    match d:
        case One():
            return "1"
        case Two():
            return "2"
        case Lifted(inner):
            return f"L({describe(inner)})"
        case Prod(components):
            if not components:
                return "1"
            return "(" + " x ".join(describe(c) for c in components) + ")"
        case IntervalAt(point):
            return f"Intv({point})"
        case Fin():
            return f"Fin[{len(d.elements)}]"
    raise TypeError(f"not a fibre description: {d!r}")
