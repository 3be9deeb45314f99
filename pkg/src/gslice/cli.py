"""gslice command line: run programs, answer slice queries, run the oracle."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from gslice import lattice as L
from gslice.cbn import cbn_value, cbnProgram, show_tags, tag_view_ctx
from gslice.interp import (
    SliceError, ctx_value, ctx_values, evalPlain, runSlice,
)
from gslice.lang import ParseError, TypeCheckError, parseProgram, typecheckProgram
from gslice.lang.parser import pragmas
from gslice.literals import (
    LiteralError, elem_json, read_ctx_tangent, read_inputs, read_raw, read_tangent,
    show_ctx_tangent, show_inputs, show_tangent, show_value, value_json,
)
from gslice.oracle import Report, checkGalois, checkGaloisSampled
from gslice.prims import builtinSignature

USER_ERRORS = (ParseError, TypeCheckError, LiteralError, L.ConformanceError, SliceError,
               OSError, ValueError)


class Loaded:
    """A program ready to run: possibly CBN-translated, with its signature."""

    def __init__(self, path: str, sig_name: str | None, cbn: bool):
        src = Path(path).read_text(encoding="utf-8")
        pragma_sig, self.pragma_inputs = pragmas(src)
        if cbn:
            sig_name = "cbn-num"
        self.sig = builtinSignature(sig_name or pragma_sig or "lift-num")
        self.source_program = parseProgram(src, self.sig)
        self.source_typed = typecheckProgram(self.source_program, self.sig)
        self.cbn = cbn
        if cbn:
            self.program = cbnProgram(self.source_program, self.source_typed)
            self.typed = typecheckProgram(self.program, self.sig)
        else:
            self.program, self.typed = self.source_program, self.source_typed

    @property
    def params(self):
        return self.program.params

    def input_values(self, literal: str) -> list:
        vals = read_inputs(self.source_program.params, literal)
        if self.cbn:
            vals = [cbn_value(ty, v) for (_, ty), v in zip(self.source_program.params, vals)]
        return vals

    def default_input(self) -> str:
        if not self.pragma_inputs:
            raise LiteralError("no --input given and the program has no '-- input:' pragma")
        return self.pragma_inputs[0]


def cmd_run(args, out) -> int:
    prog = Loaded(args.file, args.sig, args.cbn)
    values = prog.input_values(args.input or prog.default_input())
    session = runSlice(prog.typed, prog.sig, ctx_value(values))
    result_ty = prog.typed.ty
    if args.json:
        json.dump({"output": value_json(session.output),
                   "fibre": {"input": L.describe(session.input_fibre),
                             "output": L.describe(session.output_fibre)},
                   "tangent": None}, out, sort_keys=True)
        out.write("\n")
        return 0
    out.write(f"output: {show_value(result_ty, session.output)}\n")
    out.write(f"input fibre: {show_ctx_tangent(prog.params, values, L.top(session.input_fibre), prog.sig)}"
              f"  [{L.describe(session.input_fibre)}]\n")
    out.write(f"output fibre: {show_tangent(result_ty, session.output, L.top(session.output_fibre), prog.sig)}"
              f"  [{L.describe(session.output_fibre)}]\n")
    return 0


def cmd_slice(args, out) -> int:
    prog = Loaded(args.file, args.sig, args.cbn)
    values = prog.input_values(args.input or prog.default_input())
    session = runSlice(prog.typed, prog.sig, ctx_value(values))
    result_ty = prog.typed.ty
    if args.bwd is not None:
        dy = read_tangent(result_ty, session.output, read_raw(args.bwd), prog.sig)
        dx = session.bwd(dy)
        text = show_ctx_tangent(prog.params, values, dx, prog.sig)
        tangent = dx
    else:
        dx = read_ctx_tangent(prog.params, values, args.fwd, prog.sig)
        dy = session.fwd(dx)
        text = show_tangent(result_ty, session.output, dy, prog.sig)
        tangent = dy
    if args.json:
        json.dump({"output": value_json(session.output),
                   "fibre": {"input": L.describe(session.input_fibre),
                             "output": L.describe(session.output_fibre)},
                   "tangent": elem_json(tangent)}, out, sort_keys=True)
        out.write("\n")
        return 0
    out.write(text + "\n")
    if args.cbn and args.bwd is not None:
        view = tag_view_ctx(prog.source_program.params, values, tangent)
        out.write(f"tags: {show_tags(view)}\n")
    return 0


def _input_literals(spec: str | None, fallback: list[str]) -> list[str]:
    if spec is None:
        return list(fallback)
    path = Path(spec)
    if path.is_file():
        lines = path.read_text(encoding="utf-8").splitlines()
        return [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("--")]
    return [part.strip() for part in spec.split(";") if part.strip()]


def cmd_check(args, out) -> int:
    prog = Loaded(args.file, args.sig, args.cbn)
    literals = _input_literals(args.inputs, prog.pragma_inputs)
    if not literals:
        raise LiteralError("no inputs: pass --inputs or add '-- input:' pragmas")
    seed = int(os.environ.get("GSLICE_SEED", "0"))
    rng = random.Random(seed)
    total = Report("all inputs")
    for lit in literals:
        values = prog.input_values(lit)
        env = ctx_value(values)
        session = runSlice(prog.typed, prog.sig, env)
        if args.sampled:
            rep = checkGaloisSampled(session.input_fibre, session.output_fibre,
                                     session.fwd, session.bwd, rng, args.samples)
        else:
            if not (L.enumerable(session.input_fibre) and L.enumerable(session.output_fibre)):
                raise SliceError(f"fibres under {prog.sig.name} are not enumerable; "
                                 "use --sampled for a sampled check")
            rep = checkGalois(session.input_fibre, session.output_fibre, session.fwd, session.bwd)
        rep.checked += 1
        plain = evalPlain(prog.typed, env, prog.sig)
        if plain != session.output:
            rep.fail(f"plain evaluator gives {show_value(prog.typed.ty, plain)}, "
                     f"interpretation gives {show_value(prog.typed.ty, session.output)}")
        rep.name = f"input {show_inputs(prog.params, ctx_values(env, len(prog.params)))}"
        for line in rep.lines():
            out.write(line + "\n")
        total.merge(rep)
    mode = f"sampled, seed {seed}" if args.sampled else "exhaustive"
    out.write(f"{'PASS' if total.ok else 'FAIL'}: {len(literals)} inputs, {total.checked} checks, "
              f"{len(total.violations)} violations ({mode})\n")
    return 0 if total.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gslice", description="Galois slicing for a small functional language.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="program file (.gs)")
        p.add_argument("--sig", help="signature: disc-num, lift-num, interval-num or cbn-num")
        p.add_argument("--cbn", action="store_true", help="apply the call-by-name translation first")

    run = sub.add_parser("run", help="evaluate a program and show its fibres")
    common(run)
    run.add_argument("--input", help="input literal, one value per parameter")
    run.add_argument("--json", action="store_true")
    run.set_defaults(fn=cmd_run)

    sl = sub.add_parser("slice", help="forward or backward slice at an input")
    common(sl)
    sl.add_argument("--input", help="input literal, one value per parameter")
    which = sl.add_mutually_exclusive_group(required=True)
    which.add_argument("--bwd", metavar="TANGENT", help="output tangent to slice backwards")
    which.add_argument("--fwd", metavar="TANGENT", help="input tangent to push forwards")
    sl.add_argument("--json", action="store_true")
    sl.set_defaults(fn=cmd_slice)

    ch = sub.add_parser("check", help="run the oracle at each input")
    common(ch)
    ch.add_argument("--inputs", help="file with one input literal per line, or literals separated by ';'")
    ch.add_argument("--sampled", action="store_true", help="sample tangents instead of enumerating")
    ch.add_argument("--samples", type=int, default=200, help="sampled pairs per input (default 200)")
    ch.set_defaults(fn=cmd_check)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except USER_ERRORS as err:
        print(f"gslice: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
