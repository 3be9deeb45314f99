"""Text and JSON forms of values and tangents.

Literals are read in two steps: a raw tree from the shared lexer, then
elaboration against whatever gives it meaning (a fibre, or a type plus the
value the tangent sits over).  ``^`` and ``_`` stand for the top and bottom
of the fibre at their position, whatever its shape.

Display flattening: a list tangent ``(t1, (t2, ... ()))`` prints as
``(t1, t2, ...)`` with the terminating unit dropped, and a context prints as
one entry per variable.  ``--json`` output keeps the exact structure.
"""
from __future__ import annotations

from fractions import Fraction

from gslice import lattice as L
from gslice.fam import UNITV, InlV, InrV, ListV, PairV, PrimV
from gslice.interp import interpTy
from gslice.lang.parser import ParseError, tokenize
from gslice.lang.syntax import Arrow, ListTy, Prim, ProdTy, Sum, UnitTy, show_ty
from gslice.lattice import BOT, TOP, UNIT, Interval, Tuple, Up


# -- raw trees --------------------------------------------------------------
# ("top",) ("bot",) ("tuple", items) ("brack", items) ("up", r) ("num", q)
# ("inl", r) ("inr", r) ("ident", name)

class _Reader:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, text):
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def fail(self, msg):
        t = self.tok
        raise ParseError(f"{msg} in literal, found {t.text or 'end of input'!r}", t.line, t.col)

    def take(self, text):
        if not self.at(text):
            self.fail(f"expected {text!r}")
        self.i += 1

    def read(self):
        t = self.tok
        if self.at("^"):
            self.i += 1
            return ("top",)
        if self.at("_"):
            self.i += 1
            return ("bot",)
        if self.at("-") or t.kind == "num":
            return ("num", self.rational())
        if self.at("up") or self.at("inl") or self.at("inr"):
            self.i += 1
            if t.text == "up":
                self.take("(")
                inner = self.read()
                self.take(")")
                return ("up", inner)
            return (t.text, self.read())
        if self.at("("):
            return ("tuple", self.items("(", ")"))
        if self.at("["):
            return ("brack", self.items("[", "]"))
        if t.kind == "ident":
            self.i += 1
            return ("ident", t.text)
        self.fail("unexpected token")

    def rational(self):
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        if self.tok.kind != "num":
            self.fail("expected a number")
        q = Fraction(self.tok.text)
        self.i += 1
        return sign * q

    def items(self, open_, close):
        self.take(open_)
        out = []
        while not self.at(close):
            out.append(self.read())
            if self.at(","):
                self.i += 1
            elif not self.at(close):
                self.fail(f"expected ',' or {close!r}")
        self.take(close)
        return out


def read_raw(text: str):
    r = _Reader(text)
    tree = r.read()
    if r.tok.kind != "eof":
        r.fail("trailing input")
    return tree


class LiteralError(ValueError):
    pass


def _bad(raw, what):
    raise LiteralError(f"cannot read {show_raw(raw)} as {what}")


def show_raw(raw) -> str:
    match raw:
        case ("top",):
            return "^"
        case ("bot",):
            return "_"
        case ("num", q):
            return str(q)
        case ("ident", n):
            return n
        case ("up", r):
            return f"up({show_raw(r)})"
        case ("inl" | "inr" as k, r):
            return f"{k} {show_raw(r)}"
        case ("tuple", items):
            return "(" + ", ".join(map(show_raw, items)) + ")"
        case ("brack", items):
            return "[" + ", ".join(map(show_raw, items)) + "]"
    return repr(raw)


# -- tangents against a fibre -------------------------------------------------

def elab_elem(d: L.FibreDesc, raw):
    match raw:
        case ("top",):
            return L.top(d)
        case ("bot",):
            return L.bottom(d)
    match d:
        case L.One():
            if raw == ("tuple", []):
                return UNIT
        case L.Lifted(inner):
            if raw[0] == "up":
                return Up(elab_elem(inner, raw[1]))
        case L.Prod(cs):
            if raw[0] == "tuple" and len(raw[1]) == len(cs):
                return Tuple(elab_elem(c, r) for c, r in zip(cs, raw[1]))
        case L.IntervalAt(point):
            if raw[0] == "brack" and len(raw[1]) == 2 and all(r[0] == "num" for r in raw[1]):
                lo, hi = raw[1][0][1], raw[1][1][1]
                if not lo <= point <= hi:
                    raise L.ConformanceError(f"[{lo},{hi}] does not contain {point}")
                return Interval(lo, hi)
        case L.Fin():
            if raw[0] == "ident":
                for e in d.elements:
                    if str(e) == raw[1]:
                        return L.FinElem(e)
    raise L.ConformanceError(f"{show_raw(raw)} is not an element of {L.describe(d)}")


def parse_elem(d: L.FibreDesc, text: str):
    return elab_elem(d, read_raw(text))


def _rat(q: Fraction) -> str:
    return str(q)


def format_elem(d: L.FibreDesc, a) -> str:
    """Exact, unflattened printing of an element of ``d``."""
    match d:
        case L.One():
            return "()"
        case L.Two():
            return "^" if a == TOP else "_"
        case L.Lifted(inner):
            if a == BOT:
                return "_"
            if isinstance(inner, L.One) or (isinstance(inner, L.Prod) and not inner.components):
                return "^"
            return f"up({format_elem(inner, a.inner)})"
        case L.Prod(cs):
            if not cs:
                return "()"
            return "(" + ", ".join(format_elem(c, x) for c, x in zip(cs, a)) + ")"
        case L.IntervalAt():
            return "_" if a == BOT else f"[{_rat(a.lo)},{_rat(a.hi)}]"
        case L.Fin():
            return str(a.id)
    raise TypeError(f"not a fibre description: {d!r}")


# -- type-directed display ----------------------------------------------------

def _list_parts(t, n):
    parts = []
    for _ in range(n):
        parts.append(t[0])
        t = t[1]
    return parts


def _tuple_text(parts):
    if len(parts) == 1:
        return f"({parts[0]},)"
    return "(" + ", ".join(parts) + ")"


def show_tangent(ty, v, t, sig) -> str:
    """Display a tangent at value ``v : ty`` with lists flattened."""
    match ty:
        case UnitTy():
            return "()"
        case Prim(name):
            return format_elem(sig.prim_types[name].fibre(v), t)
        case Sum(a, b):
            return show_tangent(a if isinstance(v, InlV) else b, v.value, t, sig)
        case ProdTy(a, b):
            return f"({show_tangent(a, v.fst, t[0], sig)}, {show_tangent(b, v.snd, t[1], sig)})"
        case ListTy(e):
            parts = [show_tangent(e, x, dx, sig) for x, dx in zip(v.items, _list_parts(t, len(v.items)))]
            return _tuple_text(parts) if parts else "()"
    raise LiteralError(f"no tangent display at type {show_ty(ty)}")


def read_tangent(ty, v, raw, sig):
    """Inverse of ``show_tangent`` on raw trees (``^``/``_`` allowed anywhere)."""
    match raw:
        case ("top",):
            return _obj(ty, sig).top(v)
        case ("bot",):
            return _obj(ty, sig).bottom(v)
    match ty:
        case UnitTy():
            if raw == ("tuple", []):
                return UNIT
        case Prim(name):
            return elab_elem(sig.prim_types[name].fibre(v), raw)
        case Sum(a, b):
            return read_tangent(a if isinstance(v, InlV) else b, v.value, raw, sig)
        case ProdTy(a, b):
            if raw[0] == "tuple" and len(raw[1]) == 2:
                return Tuple((read_tangent(a, v.fst, raw[1][0], sig),
                              read_tangent(b, v.snd, raw[1][1], sig)))
        case ListTy(e):
            if raw[0] == "tuple" and len(raw[1]) == len(v.items):
                out = UNIT
                for x, r in reversed(list(zip(v.items, raw[1]))):
                    out = Tuple((read_tangent(e, x, r, sig), out))
                return out
    raise L.ConformanceError(
        f"{show_raw(raw)} is not a tangent at {show_value(ty, v)} : {show_ty(ty)}")


def _obj(ty, sig):
    return interpTy(sig, ty)


# contexts: one entry per variable, left-nested underneath

def _ctx_split(t, n):
    parts = []
    for _ in range(n):
        parts.append(t[1])
        t = t[0]
    return parts[::-1]


def show_ctx_tangent(ctx, values, t, sig) -> str:
    parts = [show_tangent(ty, v, dt, sig)
             for (_, ty), v, dt in zip(ctx, values, _ctx_split(t, len(ctx)))]
    if len(parts) == 1:
        return parts[0]
    return "(" + ", ".join(parts) + ")"


def read_ctx_tangent(ctx, values, text, sig):
    raw = read_raw(text) if isinstance(text, str) else text
    if raw in (("top",), ("bot",)):
        raws = [raw] * len(ctx)
    elif len(ctx) == 1:
        raws = [raw]
    elif raw[0] == "tuple" and len(raw[1]) == len(ctx):
        raws = raw[1]
    else:
        raise L.ConformanceError(f"expected one tangent per input ({len(ctx)}), got {show_raw(raw)}")
    out = UNIT
    for (_, ty), v, r in zip(ctx, values, raws):
        out = Tuple((out, read_tangent(ty, v, r, sig)))
    return out


# -- values -----------------------------------------------------------------

def read_value(ty, raw):
    match ty, raw:
        case _, ("tuple", [inner]):
            return read_value(ty, inner)
        case UnitTy(), ("tuple", []):
            return UNITV
        case Prim("approx"), ("tuple", []):
            return UNITV
        case Prim(), ("num", q):
            return PrimV(q)
        case Prim(), ("ident", "tt" | "true"):
            return PrimV(True)
        case Prim(), ("ident", "ff" | "false"):
            return PrimV(False)
        case Sum(a, _), ("inl", r):
            return InlV(read_value(a, r))
        case Sum(_, b), ("inr", r):
            return InrV(read_value(b, r))
        case ProdTy(a, b), ("tuple", items) if len(items) >= 2:
            rest = items[1] if len(items) == 2 else ("tuple", items[1:])
            return PairV(read_value(a, items[0]), read_value(b, rest))
        case ListTy(e), ("brack", items):
            return ListV(read_value(e, r) for r in items)
    raise LiteralError(f"cannot read {show_raw(raw)} as a value of type {show_ty(ty)}")


def read_inputs(ctx, text):
    """An input literal: one value per parameter (a tuple when there are several)."""
    raw = read_raw(text)
    if len(ctx) == 0:
        if raw != ("tuple", []):
            _bad(raw, "an empty input")
        return []
    if len(ctx) == 1:
        return [read_value(ctx[0][1], raw)]
    if raw[0] != "tuple" or len(raw[1]) != len(ctx):
        raise LiteralError(f"expected {len(ctx)} inputs, got {show_raw(raw)}")
    return [read_value(ty, r) for (_, ty), r in zip(ctx, raw[1])]


def show_value(ty, v) -> str:
    match ty:
        case UnitTy():
            return "()"
        case Prim():
            if v == UNITV:
                return "()"
            p = v.payload
            if isinstance(p, bool):
                return "tt" if p else "ff"
            return _rat(p) if isinstance(p, Fraction) else str(p)
        case Sum(a, b):
            if isinstance(v, InlV):
                return f"inl {_atom(a, v.value)}"
            return f"inr {_atom(b, v.value)}"
        case ProdTy(a, b):
            return f"({show_value(a, v.fst)}, {show_value(b, v.snd)})"
        case ListTy(e):
            return "[" + ", ".join(show_value(e, x) for x in v.items) + "]"
        case Arrow():
            return "<function>"
    raise LiteralError(f"no value display at type {show_ty(ty)}")


def _atom(ty, v):
    s = show_value(ty, v)
    return f"({s})" if s.startswith(("inl", "inr", "-")) else s


def show_inputs(ctx, values) -> str:
    parts = [show_value(ty, v) for (_, ty), v in zip(ctx, values)]
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


# -- JSON -------------------------------------------------------------------

def elem_json(a):
    match a:
        case L.UnitElem():
            return "()"
        case L.BotElem():
            return "_"
        case L.TopElem():
            return "^"
        case Up(inner):
            return {"up": elem_json(inner)}
        case Tuple(elems):
            return [elem_json(x) for x in elems]
        case Interval(lo, hi):
            return {"interval": [_rat(lo), _rat(hi)]}
        case L.FinElem(i):
            return {"fin": str(i)}
    raise TypeError(f"not a lattice element: {a!r}")


def value_json(v):
    match v:
        case PrimV(p):
            if isinstance(p, Fraction):
                return _rat(p)
            return p
        case PairV(a, b):
            return [value_json(a), value_json(b)]
        case InlV(x):
            return {"inl": value_json(x)}
        case InrV(x):
            return {"inr": value_json(x)}
        case ListV(items):
            return {"list": [value_json(x) for x in items]}
    if v == UNITV:
        return "()"
    raise TypeError(f"no JSON form for {v!r}")
