"""Derivation forms of depth k evaluated in finite groups.

For each group the script counts how many of the first N forms land in each
term of the derived series; every form of depth k must land in level k.
"""
import argparse

from configeq import corpus
from configeq.groups import derived_series
from configeq.words import derivation_form_pairs, evaluate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", default="S3,D4,Q8,A4,S4")
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--depth", type=int, default=2)
    args = ap.parse_args()

    for name in args.groups.split(","):
        G = corpus.get(name)
        gens = G.standard_generators()
        series = derived_series(G, args.depth)
        orders = [len(series.level(k)) for k in range(args.depth + 1)]
        cells = []
        for k in range(1, args.depth + 1):
            forms = list(derivation_form_pairs(len(gens), k, args.count))
            hits = sum(evaluate(p, gens) in series.level(k) for p in forms)
            distinct = len({evaluate(p, gens) for p in forms})
            cells.append(f"k={k}: {hits}/{len(forms)} in level, {distinct} values")
        print(f"{name:<4} orders {orders}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
