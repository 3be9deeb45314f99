from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gslice import lattice as L
from gslice.lattice import BOT, TOP, UNIT, Interval, Lifted, Prod, Tuple, Up

TWO, ONE = L.TWO, L.ONE


def fibres(max_leaves=4):
    base = st.sampled_from([ONE, TWO])
    return st.recursive(
        base,
        lambda inner: st.one_of(st.builds(Lifted, inner),
                                st.lists(inner, min_size=1, max_size=3).map(Prod)),
        max_leaves=max_leaves)


@st.composite
def fibre_with(draw, n):
    d = draw(fibres())
    els = L.enumerate_fibre(d)
    return (d, *[draw(st.sampled_from(els)) for _ in range(n)])


def test_top_examples():
    assert L.top(TWO) == TOP
    assert L.top(L.IntervalAt(1)) == Interval(1, 1)
    assert L.top(Prod([TWO, TWO])) == Tuple([TOP, TOP])


def test_bottom_examples():
    assert L.bottom(TWO) == BOT
    assert L.bottom(Lifted(Prod([TWO, TWO]))) == BOT
    assert L.bottom(L.IntervalAt(1)) == BOT


def test_meet_join_leq_examples():
    d = Prod([TWO, TWO])
    assert L.meet(d, Tuple([TOP, BOT]), Tuple([BOT, TOP])) == Tuple([BOT, BOT])
    assert not L.leq(d, Tuple([TOP, BOT]), Tuple([BOT, TOP]))
    i = L.IntervalAt(1)
    assert L.meet(i, Interval(0, 1), Interval(1, 2)) == Interval(0, 2)
    assert L.join(i, Interval(0, 2), Interval(1, 3)) == Interval(1, 2)
    assert L.leq(i, Interval(0, 2), Interval(1, 1))
    assert L.join(TWO, BOT, TOP) == TOP
    assert L.leq(TWO, BOT, TOP)


def test_enumerate_examples():
    assert L.enumerate_fibre(TWO) == [BOT, TOP]
    assert len(L.enumerate_fibre(Lifted(TWO))) == 3
    assert len(L.enumerate_fibre(Prod([TWO, TWO, TWO]))) == 8
    with pytest.raises(L.NotEnumerable, match="fibre not enumerable"):
        L.enumerate_fibre(Prod([TWO, L.IntervalAt(0)]))


def test_nested_lifting_keeps_both_bottoms():
    d = Lifted(Lifted(TWO))
    assert L.enumerate_fibre(d) == [BOT, Up(BOT), Up(Up(BOT)), Up(Up(TOP))]
    assert L.leq(d, BOT, Up(BOT)) and not L.leq(d, Up(BOT), BOT)


def test_conformance_errors():
    with pytest.raises(L.ConformanceError):
        L.meet(TWO, TOP, UNIT)
    with pytest.raises(L.ConformanceError):
        L.leq(L.IntervalAt(5), Interval(0, 1), BOT)
    assert L.conforms(Prod([]), UNIT)


def test_fin_lattice_validation():
    good = L.Fin(["b", "x", "y", "t"], {("b", "x"), ("b", "y"), ("x", "t"), ("y", "t"), ("b", "t")})
    assert L.join(good, L.FinElem("x"), L.FinElem("y")) == L.FinElem("t")
    with pytest.raises(ValueError):
        L.Fin(["b", "x", "y"], {("b", "x"), ("b", "y")})  # no top


@given(fibre_with(3))
@settings(max_examples=200)
def test_lattice_laws(case):
    d, a, b, c = case
    m, j = L.meet, L.join
    assert m(d, a, m(d, b, c)) == m(d, m(d, a, b), c)
    assert j(d, a, j(d, b, c)) == j(d, j(d, a, b), c)
    assert m(d, a, b) == m(d, b, a) and j(d, a, b) == j(d, b, a)
    assert m(d, a, a) == a == j(d, a, a)
    assert m(d, a, j(d, a, b)) == a == j(d, a, m(d, a, b))
    assert L.leq(d, a, b) == (m(d, a, b) == a) == (j(d, a, b) == b)
    assert m(d, L.top(d), a) == a == j(d, L.bottom(d), a)


@given(fibre_with(1))
def test_enumeration_is_exact(case):
    d, _ = case
    els = L.enumerate_fibre(d)
    assert len(els) == len(set(els)) == L.size(d)
    assert all(L.conforms(d, e) for e in els)


rat = st.fractions(min_value=-5, max_value=5, max_denominator=8)


@st.composite
def intervals_around(draw, p):
    if draw(st.integers(0, 5)) == 0:
        return BOT
    lo = p - abs(draw(rat))
    hi = p + abs(draw(rat))
    return Interval(lo, hi)


@given(rat.flatmap(lambda p: st.tuples(st.just(p), intervals_around(p), intervals_around(p),
                                        intervals_around(p))))
@settings(max_examples=300)
def test_interval_glb_lub(case):
    p, a, b, c = case
    d = L.IntervalAt(p)
    m, j = L.meet(d, a, b), L.join(d, a, b)
    assert L.conforms(d, m) and L.conforms(d, j)
    assert L.leq(d, m, a) and L.leq(d, m, b)
    assert L.leq(d, a, j) and L.leq(d, b, j)
    if L.leq(d, c, a) and L.leq(d, c, b):
        assert L.leq(d, c, m)
    if L.leq(d, a, c) and L.leq(d, b, c):
        assert L.leq(d, j, c)


def test_interval_exact_rationals():
    d = L.IntervalAt(Q(1, 3))
    assert L.join(d, Interval(Q(1, 10), 1), Interval(0, Q(1, 2))) == Interval(Q(1, 10), Q(1, 2))
