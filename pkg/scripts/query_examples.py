"""Slice the label query under each number signature and under the CBN translation."""
from gslice.cbn import show_tags, tag_view_ctx
from gslice.corpus import cbn_entry, load
from gslice.interp import ctx_value, ctx_values, runSlice
from gslice.lattice import BOT, TOP, UNIT, Interval, Tuple, Up
from gslice.literals import (
    read_inputs, show_ctx_tangent, show_inputs, show_tangent, show_value,
)

DB = "[(inl (), 0), (inr (), 1), (inl (), 1)]"
QUERIES = {
    "disc-num": [UNIT],
    "lift-num": [BOT, Up(UNIT)],
    "interval-num": [Interval("9/10", "11/10"), Interval(1, 1)],
}


def main():
    for sig, demands in QUERIES.items():
        e = load("query", sig)
        for label in ("inl ()", "inr ()"):
            env = ctx_value(read_inputs(e.program.params, f"({label}, {DB})"))
            s = runSlice(e.typed, e.sig, env)
            values = ctx_values(env, 2)
            out = show_value(e.typed.ty, s.output)
            print(f"[{sig}] query {show_inputs(e.program.params, values)} = {out}")
            for dy in demands:
                demand = show_tangent(e.typed.ty, s.output, dy, e.sig)
                shown = show_ctx_tangent(e.program.params, values, s.bwd(dy), e.sig)
                print(f"    bwd {demand:<14} -> {shown}")
    e = cbn_entry("query", (f"(inl (), {DB})",))
    s = runSlice(e.typed, e.sig, e.inputs[0])
    params = load("query").program.params
    view = tag_view_ctx(params, ctx_values(e.inputs[0], 2), s.bwd(Tuple((TOP, UNIT))))
    print(f"[cbn] tags demanded by the result: {show_tags(view)}")


if __name__ == "__main__":
    main()
