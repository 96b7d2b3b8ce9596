"""Configurations and configuration sets of a configuration pair (gens, partition)."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .errors import DomainError, InfiniteGroupError
from .groups import Group, GeneratingTuple, spheres
from .partitions import BlockMergeMap, ExplicitPartition, Partition

EXACT = "exact"
BALL_OBSERVED = "ball-observed"


@dataclass(frozen=True)
class ConfigurationSet:
    n: int
    m: int
    configurations: tuple  # sorted tuple of (n+1)-tuples of labels
    exactness: str = EXACT
    radius: int | None = None
    saturated: bool | None = None

    def __post_init__(self):
        configs = tuple(sorted(set(tuple(c) for c in self.configurations)))
        for c in configs:
            if len(c) != self.n + 1 or not all(1 <= v <= self.m for v in c):
                raise ValueError(f"malformed configuration {c} for n={self.n}, m={self.m}")
        object.__setattr__(self, "configurations", configs)

    def __len__(self):
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)

    def __contains__(self, c):
        return tuple(c) in set(self.configurations)

    def same_set(self, other: ConfigurationSet) -> bool:
        """Labeled equality, ignoring exactness metadata."""
        return (self.n, self.m, self.configurations) == (other.n, other.m, other.configurations)

    def issubset(self, other: ConfigurationSet) -> bool:
        return set(self.configurations) <= set(other.configurations)

    def to_document(self) -> dict:
        doc = {
            "n": self.n,
            "m": self.m,
            "configurations": [list(c) for c in self.configurations],
            "exactness": self.exactness,
        }
        if self.exactness == BALL_OBSERVED:
            doc["radius"] = self.radius
            doc["saturated"] = self.saturated
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> ConfigurationSet:
        return cls(doc["n"], doc["m"], tuple(map(tuple, doc["configurations"])),
                   doc.get("exactness", EXACT), doc.get("radius"), doc.get("saturated"))


def configuration_of(x0, gens: GeneratingTuple, part: Partition) -> tuple:
    """``(label(x0), label(g1 x0), ..., label(gn x0))``."""
    G = gens.group
    return (part.label(x0),) + tuple(part.label(G._mul(g, x0)) for g in gens)


def _check_finite(G: Group):
    if not G.finite:
        raise InfiniteGroupError("exact configuration sets are only computed for finite groups")


def con_labels(table, labels: tuple, gens: tuple) -> frozenset:
    """Configuration set from raw data: a finite group's table, a 1-based
    label per element, and generator indices."""
    rows = [table[g] for g in gens]
    return frozenset(tuple([labels[x]] + [labels[r[x]] for r in rows]) for x in range(len(labels)))


def configuration_set_finite(G: Group, gens: GeneratingTuple, part: Partition) -> ConfigurationSet:
    _check_finite(G)
    if gens.group is not G or part.group is not G:
        raise ValueError("generating tuple and partition must belong to the same group")
    if isinstance(part, ExplicitPartition):
        configs = con_labels(G.table, part.labels, gens.elements)
    else:
        configs = {configuration_of(x, gens, part) for x in G.elements()}
    return ConfigurationSet(len(gens), part.m, tuple(configs))


def configuration_set_ball(G: Group, gens: GeneratingTuple, part: Partition, max_radius: int,
                           stability_window: int = 2) -> ConfigurationSet:
    """Configurations observed from base points in growing balls.

    Radius grows until no new configuration has appeared for
    ``stability_window`` consecutive radii (saturated) or ``max_radius`` is
    reached.  Base points whose translates leave a partial partition's
    domain are skipped.  The result is always a subset of the true set.
    When saturated, ``radius`` is the last radius that contributed a new
    configuration; otherwise it is the largest radius examined.
    """
    if max_radius < 0 or stability_window < 1:
        raise ValueError("max_radius must be >= 0 and stability_window >= 1")
    found = set()
    quiet = 0
    last_new = 0
    radius = 0
    for radius, layer in enumerate(spheres(gens, max_radius)):
        before = len(found)
        for x in layer:
            try:
                found.add(configuration_of(x, gens, part))
            except DomainError:
                continue
        if len(found) > before:
            quiet, last_new = 0, radius
        else:
            quiet += 1
        if quiet >= stability_window:
            break
    if not found:
        raise DomainError("no base point of the ball is classifiable")
    saturated = quiet >= stability_window
    return ConfigurationSet(len(gens), part.m, tuple(found), BALL_OBSERVED,
                            last_new if saturated else radius, saturated)


def coarsen_config_set(cs: ConfigurationSet, merge: BlockMergeMap) -> ConfigurationSet:
    if merge.s != cs.m:
        raise ValueError(f"merge map domain 1..{merge.s} does not match m={cs.m}")
    configs = {tuple(merge(v) for v in c) for c in cs}
    return ConfigurationSet(cs.n, merge.r, tuple(configs), cs.exactness, cs.radius, cs.saturated)


def relabel_config_set(cs: ConfigurationSet, perm) -> ConfigurationSet:
    """Apply a label bijection given as ``perm[old - 1] = new``."""
    configs = {tuple(perm[v - 1] for v in c) for c in cs}
    return ConfigurationSet(cs.n, cs.m, tuple(configs), cs.exactness, cs.radius, cs.saturated)


# -- relabeling ------------------------------------------------------------------------


def label_fingerprints(configs, n: int, m: int) -> list[tuple]:
    """Per label, how often it occurs at each position; invariant under
    relabeling."""
    pos = [[0] * (n + 1) for _ in range(m)]
    for c in configs:
        for i, v in enumerate(c):
            pos[v - 1][i] += 1
    return [tuple(p) for p in pos]


def sets_equal_up_to_relabel(a: ConfigurationSet, b: ConfigurationSet) -> tuple | None:
    """First (lexicographic) label bijection ``pi`` with ``pi(a) == b``.

    Returned as a tuple with ``pi[k - 1]`` the image of label ``k``.
    Candidates are restricted to labels with equal occurrence fingerprints.
    """
    if a.n != b.n or a.m != b.m or len(a) != len(b):
        return None
    return _find_bijection(a.configurations, frozenset(b.configurations), a.n, a.m,
                           label_fingerprints(b.configurations, b.n, b.m))


def _find_bijection(a_configs, b_set: frozenset, n: int, m: int, fp_b: list) -> tuple | None:
    fp_a = label_fingerprints(a_configs, n, m)
    if Counter(fp_a) != Counter(fp_b):
        return None
    candidates = [[t for t in range(1, m + 1) if fp_b[t - 1] == fp_a[k]] for k in range(m)]
    perm = [0] * m
    used = [False] * (m + 1)

    def rec(k):
        if k == m:
            return all(tuple(perm[v - 1] for v in c) in b_set for c in a_configs)
        for t in candidates[k]:
            if not used[t]:
                perm[k] = t
                used[t] = True
                if rec(k + 1):
                    return True
                used[t] = False
        return False

    return tuple(perm) if rec(0) else None


def canonical_form(configs, n: int, m: int) -> tuple:
    """Relabeling-invariant key of a configuration set.

    Labels are first ordered by fingerprint; ties are broken by taking the
    lexicographically least sorted set over all orderings within tied
    classes.
    """
    configs = tuple(configs)
    fps = label_fingerprints(configs, n, m)
    classes = {}
    for k, fp in enumerate(fps, 1):
        classes.setdefault(fp, []).append(k)
    ordered = [classes[fp] for fp in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        perm = [0] * m
        new = 1
        for group in choice:
            for k in group:
                perm[k - 1] = new
                new += 1
        key = tuple(sorted(tuple(perm[v - 1] for v in c) for c in configs))
        if best is None or key < best:
            best = key
    return tuple(sorted(Counter(fps).items())), best
