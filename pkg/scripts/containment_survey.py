"""Pairwise configuration containment over the small corpus.

Prints a matrix: "<=" when G is contained in H within the bounds, "." when a
witness separates them. Isomorphic pairs must always show "<=".
"""
import argparse
import itertools
import time

from configeq import corpus
from configeq.search import configuration_contained


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--max-n", type=int, default=2)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    names = [k for k in corpus.NAMES if corpus.get(k).order <= args.max_order]
    width = max(map(len, names)) + 1
    print(" " * width + "".join(n.rjust(width) for n in names))
    t0 = time.perf_counter()
    for g in names:
        row = []
        for h in names:
            cert = configuration_contained(corpus.get(g), corpus.get(h), args.max_n, args.max_m,
                                           threads=args.threads)
            row.append("<=" if cert.contained else ".")
        print(g.ljust(width) + "".join(c.rjust(width) for c in row))
    pairs = len(list(itertools.product(names, repeat=2)))
    print(f"\n{pairs} pairs, n <= {args.max_n}, m <= {args.max_m}, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
