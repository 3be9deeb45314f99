"""Fixtures: the finite-poset examples and the committed program corpus."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from importlib import resources

from gslice.cbn import cbn_value, cbnProgram
from gslice.fam import (
    PairV, PrimV, ProdObj, UnitObj, compose, dispatch, proj1, swap, terminal,
)
from gslice.interp import ctx_value
from gslice.lang import parseProgram, typecheckProgram
from gslice.lang.parser import pragmas
from gslice.literals import read_inputs
from gslice.oracle import FinFun, FinPoset, flat, product, tabulate
from gslice.prims import (
    bindLift, builtinSignature, discObj, discOp, etaLift, lifted_op, liftObj,
)

# -- finite posets ------------------------------------------------------------

BOT, TT, FF = "bot", "tt", "ff"
B_BOT = flat(TT, FF)
B2 = product(B_BOT, B_BOT)
B3 = product(B_BOT, B_BOT, B_BOT)
SIERPINSKI = flat("top")


def _strict_or(p):
    a, b = p
    if BOT in p:
        return BOT
    return TT if TT in (a, b) else FF


def _short_circuit_or(p):
    a, b = p
    if a == TT:
        return TT
    return b if a == FF else BOT


def _parallel_or(p):
    if TT in p:
        return TT
    return FF if p == (FF, FF) else BOT


def _gustave(p):
    patterns = [(TT, FF, None), (FF, None, TT), (None, TT, FF)]
    for pat in patterns:
        if all(want is None or have == want for want, have in zip(pat, p)):
            return "top"
    return BOT


strictOr = tabulate(B2, B_BOT, _strict_or, "strictOr")
shortCircuitOr = tabulate(B2, B_BOT, _short_circuit_or, "shortCircuitOr")
parallelOr = tabulate(B2, B_BOT, _parallel_or, "parallelOR")
gustave = tabulate(B3, SIERPINSKI, _gustave, "gustave")


def unstable_truncation(n: int) -> FinFun:
    """``bot < n < ... < 1 < 0`` mapped to ``{bot < top}``, all numbers to top.

    Every finite truncation has a least number, so this one is stable; the
    failure needs the infinite chain.
    """
    chain = ["bot"] + list(range(n, -1, -1))
    leq = [(chain[i], chain[j]) for i in range(len(chain)) for j in range(i, len(chain))]
    dom = FinPoset(chain, leq)
    return tabulate(dom, SIERPINSKI, lambda x: BOT if x == "bot" else "top", f"unstable[{n}]")


POSET_CORPUS = {f.name: f for f in (strictOr, shortCircuitOr, parallelOr, gustave)}


# -- the same functions as family morphisms over lifted booleans ---------------

BOOL = discObj("bool")
LBOOL = liftObj(BOOL)


def strictOrM():
    return lifted_op(lambda a, b: a or b, BOOL, 2, "strictOr")


def shortCircuitOrM():
    """``let b1 <= x in if b1 then eta(tt) else y``."""
    env_b = ProdObj(LBOOL, BOOL)                       # (y, b1)
    true_branch = compose(compose(etaLift(BOOL), discOp(lambda: True, UnitObj(), 0)),
                          terminal(env_b))
    body = dispatch(lambda p: true_branch if p.snd.payload else proj1(LBOOL, BOOL), "if")
    return compose(bindLift(body, LBOOL), swap(LBOOL, LBOOL))


def bools(a: bool, b: bool):
    return PairV(PrimV(a), PrimV(b))


# -- program corpus -------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    """One program under one signature, with its inputs as context values."""
    name: str
    program: object
    sig: object
    typed: object
    inputs: tuple       # context values
    cbn: bool = False


def program_names() -> list[str]:
    files = resources.files("gslice") / "programs"
    return sorted(p.name[:-3] for p in files.iterdir() if p.name.endswith(".gs"))


def program_source(name: str) -> str:
    return (resources.files("gslice") / "programs" / f"{name}.gs").read_text()


def load(name: str, sig_name: str | None = None) -> Entry:
    src = program_source(name)
    sig = builtinSignature(sig_name or pragmas(src)[0] or "lift-num")
    prog = parseProgram(src, sig)
    tt = typecheckProgram(prog, sig)
    inputs = tuple(ctx_value(read_inputs(prog.params, raw)) for raw in prog.inputs)
    return Entry(name, prog, sig, tt, inputs)


def cbn_entry(name: str, inputs=None) -> Entry:
    """CBN translation of a corpus program.  ``inputs`` (literals) replaces
    the program's own inputs, to keep the tagged fibres small."""
    base = load(name)
    prog = cbnProgram(base.program, base.typed)
    sig = builtinSignature("cbn-num")
    tt = typecheckProgram(prog, sig)
    values = []
    for raw in inputs or base.program.inputs:
        vals = read_inputs(base.program.params, raw)
        values.append(ctx_value(cbn_value(ty, v) for (_, ty), v in zip(base.program.params, vals)))
    return Entry(f"cbn:{name}", prog, sig, tt, tuple(values), cbn=True)


_SMALL_DB = ("(inl (), [(inl (), 0), (inr (), 1)])",
             "(inr (), [(inl (), 0), (inr (), 1)])",
             "(inl (), [(inl (), 2)])")
_TINY_DB = ("(inl (), [(inl (), 0)])", "(inr (), [(inl (), 0)])", "(inr (), [(inr (), 2)])")

# CBN variants, with replacement inputs where the originals give large fibres
CBN_VARIANTS = {
    "double": None, "choose": None, "swap": None, "maybe_add": None,
    "pair_sum": None, "compose_fns": None, "twice": None, "sum": None,
    "with_defs": None, "sum_either": None, "reverse": None, "sum_cps": None,
    "shift_all": ("(1, [1, 2])", "(0, [])", "(-1, [5])"),
    "query": _SMALL_DB, "query_lambda": _TINY_DB, "filter_label": _SMALL_DB,
}


@cache
def corpus() -> tuple[Entry, ...]:
    entries = [load(n) for n in program_names()]
    entries += [cbn_entry(n, inputs) for n, inputs in CBN_VARIANTS.items()]
    return tuple(entries)
