from pathlib import Path

import pytest

from gslice.corpus import load, program_names, program_source
from gslice.lang import (
    Arrow, Case, Fold, Fst, Inl, ListTy, Pair, ParseError, Prim, ProdTy, Sum, TypeCheckError,
    UnitTm, UnitTy, firstOrder, parseProgram, parseTerm, parseType, show_program,
    show_term, typecheck, typecheckProgram,
)
from gslice.prims import builtinSignature

SIG = builtinSignature("lift-num")
NUM = Prim("num")
GOLDEN = Path(__file__).parent / "golden"


def test_parse_constructors():
    assert parseTerm("fst (inl (), ())") == Fst(Pair(Inl(UnitTm()), UnitTm()))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parseTerm("\\x.")
    assert err.value.line == 1
    with pytest.raises(ParseError, match="unbound"):
        parseTerm("\\x. y")
    with pytest.raises(ParseError):
        parseProgram("program p (x : num) : num =\n  add(x,", SIG)


def test_query_golden_ast():
    body = load("query").program.body
    assert isinstance(body, Fold) and isinstance(body.cons_case, Case)
    assert repr(body) == (GOLDEN / "query_ast.txt").read_text().strip()


def test_typecheck_examples():
    tt = typecheck(parseTerm("\\x. x"), SIG, expected=Arrow(NUM, NUM))
    assert tt.ty == Arrow(NUM, NUM)
    with pytest.raises(TypeCheckError, match="expected product"):
        typecheck(parseTerm("fst ()"), SIG)


def test_fold_step_context():
    tt = load("sum").typed
    step = tt.sub[1]
    assert [x for x, _ in step.ctx] == ["xs", "x", "acc"]
    assert step.ctx[-2:] == (("x", NUM), ("acc", NUM))


def test_type_errors_report_both_types():
    src = "program p (x : num) : 1 + 1 = add(x, x)"
    with pytest.raises(TypeCheckError) as err:
        typecheckProgram(parseProgram(src, SIG), SIG)
    assert err.value.expected is not None and err.value.actual is not None
    with pytest.raises(TypeCheckError):
        typecheckProgram(parseProgram("program p (x : num) : num = add(x)", SIG), SIG)


def test_unknown_primitive():
    with pytest.raises((ParseError, TypeCheckError)):
        typecheckProgram(parseProgram("program p (x : num) : num = mul(x, x)", SIG), SIG)


def test_first_order():
    label = Sum(UnitTy(), UnitTy())
    assert firstOrder(Sum(NUM, UnitTy()))
    assert not firstOrder(Arrow(UnitTy(), UnitTy()))
    assert firstOrder(ListTy(ProdTy(label, NUM)))
    assert parseType("list (1 + 1)") == ListTy(Sum(UnitTy(), UnitTy()))


@pytest.mark.parametrize("name", program_names())
def test_round_trip(name):
    prog = parseProgram(program_source(name), SIG)
    printed = show_program(prog)
    again = parseProgram(printed, SIG)
    assert again.body == prog.body and again.params == prog.params
    assert show_program(again) == printed
    typecheckProgram(again, SIG)


@pytest.mark.parametrize("name", program_names())
def test_typecheck_deterministic(name):
    prog = parseProgram(program_source(name), SIG)
    a, b = typecheckProgram(prog, SIG), typecheckProgram(prog, SIG)
    assert a.ty == b.ty == prog.result
    assert show_term(a.term) == show_term(b.term)
