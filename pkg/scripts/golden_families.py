"""Run every check on the built-in golden candidates and print one line each."""
import argparse
import time

from configeq import corpus
from configeq.configurations import configuration_set_ball
from configeq.golden import (
    dinf_partition, free_block_absorption_check, free_group_partition, verify_block_predicates,
    verify_golden_implication, verify_translation_relations, znf_sigma_candidate,
)


def line(label, rep, t0):
    status = "ok" if rep.ok else f"{rep.violation_count} violations"
    print(f"{label:<52} checked {rep.checked:>7}  {status}  ({time.perf_counter() - t0:.2f}s)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=8)
    ap.add_argument("--max-len", type=int, default=6)
    args = ap.parse_args()

    for n in (2, 3):
        t0 = time.perf_counter()
        line(f"F{n} first-letter: translation relations", verify_translation_relations(free_group_partition(n), args.radius), t0)
    t0 = time.perf_counter()
    line("F2 first-letter: block absorption", free_block_absorption_check(2, args.max_len), t0)

    c = dinf_partition()
    t0 = time.perf_counter()
    line("D_inf five-block: block predicates", verify_block_predicates(c, args.radius + 2), t0)
    cs = configuration_set_ball(c.group, c.gens, c.part, args.radius, stability_window=2)
    print(f"{'D_inf five-block: configurations':<52} {len(cs)} sets, saturated={cs.saturated}, radius={cs.radius}")

    for n, fname in ((1, "Z2"), (2, "Z2"), (1, "S3")):
        c = znf_sigma_candidate(n, corpus.get(fname))
        t0 = time.perf_counter()
        rep = verify_golden_implication(c, c.gens, c.part, 3, 4)
        line(f"Z^{n} x {fname}: implication against itself ({c.part.m} atoms)", rep, t0)


if __name__ == "__main__":
    main()
