"""Classify the finite poset examples (monotone / cm / stable) with witnesses."""
from gslice.corpus import POSET_CORPUS, shortCircuitOr, unstable_truncation
from gslice.oracle import checkGalois, classify, embed, leastPreimage


def main():
    funcs = list(POSET_CORPUS.values()) + [unstable_truncation(4)]
    for f in funcs:
        c = classify(f)
        print(f"{f.name:16} monotone={c.monotone!s:5} cm={c.cm!s:5} stable={c.stable!s:5}")
        for x, a, b in c.cm_witnesses[:2]:
            print(f"    meet not preserved below {x}: {a} and {b}")
        for x, y in c.stable_witnesses[:2]:
            print(f"    no least preimage of {y} below {x}")
        galois = sum(checkGalois(*embed(f, x)).ok for x in f.dom.elements)
        print(f"    Galois at {galois}/{len(f.dom.elements)} points")
    print("least preimage of tt below (tt, ff) under shortCircuitOr:",
          leastPreimage(shortCircuitOr, ("tt", "ff"), "tt"))


if __name__ == "__main__":
    main()
