"""Compare the compiled and pure-Python edit-distance kernels.

    python3 benchmarks/bench_levenshtein.py [--pairs N] [--repeat R]

Pairs mimic evaluation strings: flattened annotations of 10 to 80
characters with a few edits.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from histcoords import kernels


def make_pairs(n: int, seed: int = 0):
    rng = random.Random(seed)
    alphabet = "0123456789 NSEW'\"[],"
    golds, preds = [], []
    for _ in range(n):
        gold = "".join(rng.choice(alphabet) for _ in range(rng.randint(10, 80)))
        pred = list(gold)
        for _ in range(rng.randint(0, 4)):
            i = rng.randrange(len(pred) + 1)
            op = rng.randrange(3)
            if op == 0:
                pred.insert(i, rng.choice(alphabet))
            elif pred and i < len(pred):
                if op == 1:
                    del pred[i]
                else:
                    pred[i] = rng.choice(alphabet)
        golds.append(gold)
        preds.append("".join(pred))
    return golds, preds


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=5000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    golds, preds = make_pairs(args.pairs)
    impls = [("python", kernels.pure)]
    if kernels.compiled is not None:
        impls.insert(0, ("cython", kernels.compiled))
    else:
        print("compiled kernel not built; timing the fallback only", file=sys.stderr)

    results = {}
    for name, mod in impls:
        best = min(timeit.repeat(lambda: mod.distances(golds, preds), number=1, repeat=args.repeat))
        results[name] = (best, mod.distances(golds, preds))
        print(f"{name:<8}{best * 1e3:>10.1f} ms  ({args.pairs / best:,.0f} pairs/s)")
    if len(results) == 2:
        assert results["cython"][1] == results["python"][1], "kernels disagree"
        print(f"speed-up {results['python'][0] / results['cython'][0]:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
