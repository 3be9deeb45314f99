
import pytest

from gslice import lattice as L
from gslice.corpus import (
    B2, B_BOT, LBOOL, POSET_CORPUS, bools, gustave, parallelOr, shortCircuitOr, strictOr,
    strictOrM, unstable_truncation,
)
from gslice.fam import Morphism, PairV, ProdObj, compose, identity, num, pairM
from gslice.lattice import BOT
from gslice.oracle import (
    FinPoset, checkChainRule, checkGalois, checkMorphismAt, classify, embed, flat,
    leastPreimage, stable_at, tabulate,
)
from gslice.prims import builtinSignature

LIFT = builtinSignature("lift-num")
N = LIFT.prim_types["num"]
ADD = LIFT.ops["add"].morphism


def test_known_verdicts():
    par = classify(parallelOr)
    assert par.monotone and not par.cm and not par.stable
    pairs = {frozenset((a, b)) for _, a, b in par.cm_witnesses}
    assert frozenset({("tt", "bot"), ("bot", "tt")}) in pairs
    g = classify(gustave)
    assert g.monotone and g.cm and g.stable
    sc = classify(shortCircuitOr)
    assert sc.monotone and sc.cm and sc.stable
    assert classify(strictOr).stable


def test_least_preimage():
    assert leastPreimage(shortCircuitOr, ("tt", "ff"), "tt") == ("tt", "bot")
    assert leastPreimage(parallelOr, ("tt", "tt"), "tt") is None
    with pytest.raises(ValueError):
        leastPreimage(strictOr, ("bot", "tt"), "tt")


@pytest.mark.parametrize("f", list(POSET_CORPUS.values()), ids=list(POSET_CORPUS))
def test_bottom_has_bottom_preimage(f):
    bottom = next(e for e in f.dom.elements if all(f.dom.le(e, d) for d in f.dom.elements))
    assert f(bottom) in ("bot",)
    for x in f.dom.elements:
        assert leastPreimage(f, x, "bot") == bottom


def test_unstable_truncations_are_stable():
    for n in (1, 3, 6):
        assert classify(unstable_truncation(n)).stable


def test_non_monotone_function():
    f = tabulate(B_BOT, B_BOT, lambda x: "tt" if x == "bot" else "ff", "flip")
    c = classify(f)
    assert not c.monotone and not c.cm and not c.stable and c.monotone_witnesses


@pytest.mark.parametrize("f", list(POSET_CORPUS.values()), ids=list(POSET_CORPUS))
def test_engines_agree(f):
    for x in f.dom.elements:
        rep = checkGalois(*embed(f, x))
        assert rep.ok == (not stable_at(f, x)), (f.name, x)


def test_galois_examples():
    assert checkMorphismAt(ADD, ProdObj(N, N), N, PairV(num(1), num(2))).ok
    assert checkMorphismAt(strictOrM(), ProdObj(LBOOL, LBOOL), LBOOL, bools(True, False)).ok
    rep = checkGalois(L.TWO, L.TWO, lambda x: BOT, lambda y: y)
    assert not rep.ok
    assert any("y=^" in v for v in rep.violations)
    lines = rep.lines()
    assert lines[0].startswith("VIOLATION ") and lines[-1].startswith("FAIL")


def test_galois_rejects_non_conforming_output():
    rep = checkGalois(L.TWO, L.TWO, lambda x: L.UNIT, lambda y: y)
    assert not rep.ok


def test_chain_rule_examples():
    NN = ProdObj(N, N)
    dup = pairM(identity(), identity(), N)
    pts = [num(0), num(2)]
    assert checkChainRule(dup, ADD, pts, N, N).ok
    assert checkChainRule(identity(), ADD, [PairV(num(1), num(1))], NN, N).ok


def test_chain_rule_catches_a_faulty_compose(monkeypatch):
    import gslice.oracle as oracle

    def skips_outer(g, f):
        h = compose(g, f)
        return Morphism(h.apply, h.fwd, lambda x, dz: f.bwd(x, dz))

    monkeypatch.setattr(oracle, "compose", skips_outer)
    rep = checkChainRule(identity(), ADD, [PairV(num(1), num(1))], ProdObj(N, N), N)
    assert not rep.ok and "bwd differs" in rep.violations[0]


def test_finposet_validation():
    with pytest.raises(ValueError):
        FinPoset(["a", "b"], [("a", "b"), ("b", "a")])
    assert flat("x").le("bot", "x")
    assert B2.glb(("tt", "bot"), ("bot", "tt")) == ("bot", "bot")


def test_embed_shapes():
    dX, dY, fwd, bwd = embed(shortCircuitOr, ("tt", "ff"))
    assert len(dX.elements) == 4
    assert bwd(L.FinElem("tt")) == L.FinElem(("tt", "bot"))
    assert fwd(L.FinElem(("bot", "ff"))) == L.FinElem("bot")
