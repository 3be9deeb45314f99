import pytest

from gslice import lattice as L
from gslice.corpus import cbn_entry, corpus, load
from gslice.fam import UNITV, ClosureV, ListV, num
from gslice.interp import (
    SliceError, ctx_value, evalPlain, interpTerm, interpTy, runSlice,
)
from gslice.lang import ListTy, Prim, ProdTy, Sum, UnitTy, parseProgram, typecheckProgram
from gslice.lattice import BOT, UNIT, Tuple, Up
from gslice.literals import read_inputs, read_raw, read_value
from gslice.prims import builtinSignature

LIFT = builtinSignature("lift-num")
LABEL = Sum(UnitTy(), UnitTy())
DB_TY = ListTy(ProdTy(LABEL, Prim("num")))
DB = "[(inl (), 0), (inr (), 1), (inl (), 1)]"
P = Up(UNIT)


def row(d):
    return Tuple((UNIT, d))


def db_tangent(*ds):
    out = UNIT
    for d in reversed(ds):
        out = Tuple((row(d), out))
    return out


def query_session(label, sig="lift-num"):
    e = load("query", sig)
    prog = e.program
    env = ctx_value(read_inputs(prog.params, f"({label}, {DB})"))
    return runSlice(e.typed, e.sig, env)


def test_type_fibres():
    assert interpTy(LIFT, Prim("num")).fibre(num(4)) == L.Lifted(L.ONE)
    db = read_value(DB_TY, read_raw(DB))
    assert interpTy(LIFT, DB_TY).fibre(db) == L.Prod([
        L.Prod([L.ONE, L.Lifted(L.ONE)]),
        L.Prod([L.Prod([L.ONE, L.Lifted(L.ONE)]),
                L.Prod([L.Prod([L.ONE, L.Lifted(L.ONE)]), L.ONE])])])
    disc = builtinSignature("disc-num")
    pair = read_value(ProdTy(Prim("num"), Prim("num")), read_raw("(1, 2)"))
    assert interpTy(disc, ProdTy(Prim("num"), Prim("num"))).fibre(pair) == L.Prod([L.ONE, L.ONE])


def test_identity_lambda_gives_closure():
    prog = parseProgram("program f (x : num) : num -> num = \\y. y", LIFT)
    tt = typecheckProgram(prog, LIFT)
    cl = interpTerm(tt, LIFT).apply(ctx_value([num(1)]))
    assert isinstance(cl, ClosureV) and cl.apply(num(9)) == num(9)


def test_query_slices():
    a = query_session("inl ()")
    assert a.output == num(1) == evalPlain(a.tt, a.input, a.sig)
    assert a.bwd(P) == Tuple((Tuple((UNIT, UNIT)), db_tangent(P, BOT, P)))
    assert a.bwd(BOT) == Tuple((Tuple((UNIT, UNIT)), db_tangent(BOT, BOT, BOT)))
    assert a.fwd(Tuple((Tuple((UNIT, UNIT)), db_tangent(P, BOT, BOT)))) == BOT
    assert a.fwd(L.top(a.input_fibre)) == L.top(a.output_fibre)
    b = query_session("inr ()")
    assert b.bwd(P) == Tuple((Tuple((UNIT, UNIT)), db_tangent(BOT, P, BOT)))


def test_disc_query_is_trivial():
    s = query_session("inl ()", "disc-num")
    assert s.output == num(1)
    assert L.size(s.input_fibre) == 1 and L.size(s.output_fibre) == 1


def test_fold_over_empty_list():
    e = load("sum")
    env = ctx_value([ListV(())])
    assert evalPlain(e.typed, env, e.sig) == num(0)


def test_corpus_agreement(entries):
    for e in entries:
        m = interpTerm(e.typed, e.sig)
        for x in e.inputs:
            assert m.apply(x) == evalPlain(e.typed, x, e.sig), e.name


def test_fibre_sides_agree(entries):
    from gslice.interp import ctxObj
    for e in entries:
        obj = ctxObj(e.sig, e.typed.ctx)
        for x in e.inputs:
            meet_side, join_side = obj.sides(x)
            assert meet_side == join_side


@pytest.mark.parametrize("entry", [
    lambda: load("query_lambda"), lambda: load("twice"), lambda: load("compose_fns"),
    lambda: load("with_defs"), lambda: load("sum_cps"), lambda: cbn_entry("double"),
    lambda: cbn_entry("choose"), lambda: cbn_entry("pair_sum"),
])
def test_beta_shortcut_matches_curried_form(entry):
    e = entry()
    fast, slow = interpTerm(e.typed, e.sig), interpTerm(e.typed, e.sig, beta=False)
    for x in e.inputs:
        s = runSlice(e.typed, e.sig, x)
        assert fast.apply(x) == slow.apply(x)
        for dx in L.enumerate_fibre(s.input_fibre):
            assert fast.fwd(x, dx) == slow.fwd(x, dx)
        for dy in L.enumerate_fibre(s.output_fibre):
            assert fast.bwd(x, dy) == slow.bwd(x, dy)


def test_internal_lambda_matches_inlined_query():
    inlined, lam = load("query"), load("query_lambda")
    for raw in inlined.program.inputs[:2]:
        env = ctx_value(read_inputs(inlined.program.params, raw))
        a, b = runSlice(inlined.typed, inlined.sig, env), runSlice(lam.typed, lam.sig, env)
        assert a.output == b.output
        for dy in L.enumerate_fibre(a.output_fibre):
            assert a.bwd(dy) == b.bwd(dy)


def test_runslice_errors():
    prog = parseProgram("program f (x : num) : num -> num = \\y. add(x, y)", LIFT)
    tt = typecheckProgram(prog, LIFT)
    with pytest.raises(SliceError, match="slice queries require first-order type"):
        runSlice(tt, LIFT, ctx_value([num(1)]))
    s = query_session("inl ()")
    with pytest.raises(L.ConformanceError):
        s.bwd(UNIT)
    with pytest.raises(SliceError):
        runSlice(load("sum").typed, LIFT, ctx_value([UNITV]))


def test_sessions_are_pure():
    s = query_session("inl ()")
    assert s.bwd(P) == s.bwd(P)
    assert len(corpus()) >= 20
