"""Run the exhaustive oracle over the whole program corpus and print a table."""
import argparse
import time

from gslice import lattice as L
from gslice.corpus import corpus
from gslice.interp import evalPlain, runSlice
from gslice.oracle import checkGalois


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", help="substring filter on entry names")
    args = ap.parse_args()
    failures = 0
    start = time.perf_counter()
    for e in corpus():
        if args.only and args.only not in e.name:
            continue
        t0 = time.perf_counter()
        sizes, ok = [], True
        for x in e.inputs:
            s = runSlice(e.typed, e.sig, x)
            rep = checkGalois(s.input_fibre, s.output_fibre, s.fwd, s.bwd, e.name)
            ok &= rep.ok and s.output == evalPlain(e.typed, x, e.sig)
            sizes.append((L.size(s.input_fibre), L.size(s.output_fibre)))
        failures += not ok
        status = "ok" if ok else "FAIL"
        print(f"{e.name:18} {e.sig.name:8} {status:4} fibres {sizes} {time.perf_counter() - t0:.2f}s")
    print(f"total {time.perf_counter() - start:.1f}s, {failures} failing entries")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
