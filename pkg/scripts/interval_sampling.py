"""Sampled adjunction checks for the interval primitives at random rational points."""
import argparse
import random
from fractions import Fraction

from gslice import lattice as L
from gslice.fam import PairV, num
from gslice.oracle import checkGaloisSampled
from gslice.prims import addI, negI, scaleI


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=100)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    ops = [("add", addI(), 2), ("neg", negI(), 1)]
    ops += [(f"scale({r})", scaleI(r), 1) for r in (2, -3, 0, Fraction(1, 2))]
    for name, op, arity in ops:
        checked = bad = 0
        for _ in range(args.points):
            vals = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(arity)]
            x = PairV(num(vals[0]), num(vals[1])) if arity == 2 else num(vals[0])
            dX = L.Prod([L.IntervalAt(v) for v in vals]) if arity == 2 else L.IntervalAt(vals[0])
            dY = L.IntervalAt(op.apply(x).payload)
            rep = checkGaloisSampled(dX, dY, lambda d, x=x: op.fwd(x, d),
                                     lambda d, x=x: op.bwd(x, d), rng, args.pairs)
            checked += rep.checked
            bad += len(rep.violations)
            for v in rep.violations[:3]:
                print(f"  VIOLATION {name}: {v}")
        print(f"{name:12} {checked} checks, {bad} violations")


if __name__ == "__main__":
    main()
