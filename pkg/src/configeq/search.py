"""Exhaustive containment searches over finite groups, with certificates.

Everything here is bounded: a "contained" verdict only covers configuration
pairs with at most ``max_n`` generators and ``max_m`` blocks.  Searches walk
generating tuples in lexicographic order, then partitions as restricted
growth strings, so the certificate found is the same for any thread count.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .configurations import (
    ConfigurationSet, canonical_form, con_labels, sets_equal_up_to_relabel,
)
from .errors import BudgetExceeded, InfiniteGroupError
from .groups import FiniteGroup, GeneratingTuple, generating_tuples, generates
from .partitions import ExplicitPartition, restricted_growth_strings, sigma_algebra_of

CONTAINED = "contained"
NOT_CONTAINED = "not-contained"


def _require_finite(*groups):
    for G in groups:
        if not G.finite:
            raise InfiniteGroupError(f"{G!r} is infinite; containment is only searched for finite groups")


@lru_cache(maxsize=256)
def _cached_gens(G: FiniteGroup, n: int) -> list[tuple]:
    return list(generating_tuples(G, n))


def _map(fn, items, threads: int):
    if threads <= 1:
        return list(map(fn, items))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _index_for_tuple(H: FiniteGroup, h: tuple, n: int, m: int) -> dict:
    out = {}
    for labels in restricted_growth_strings(H.order, m):
        key = canonical_form(con_labels(H.table, labels, h), n, m)
        out.setdefault(key, labels)
    return out


class MatchIndex:
    """Canonical configuration sets of ``H`` -> first realizing ``(h, labels)``.

    Built lazily per ``(n, m)``; the per-tuple work may run on a thread pool
    and is merged in tuple order, keeping the first occurrence.
    """

    def __init__(self, H: FiniteGroup, threads: int = 1, gens: list[tuple] | None = None):
        self.H = H
        self.threads = threads
        self.fixed_gens = gens
        self._tables = {}
        self.searched = {}

    def _gens(self, n):
        if self.fixed_gens is not None:
            return [h for h in self.fixed_gens if len(h) == n]
        return _cached_gens(self.H, n)

    def table(self, n: int, m: int) -> dict:
        if (n, m) not in self._tables:
            tuples = self._gens(n)
            parts = _map(lambda h: _index_for_tuple(self.H, h, n, m), tuples, self.threads)
            merged = {}
            for h, part in zip(tuples, parts):
                for key, labels in part.items():
                    merged.setdefault(key, (h, labels))
            self._tables[(n, m)] = merged
            self.searched[(n, m)] = {
                "generating_tuples": len(tuples),
                "partitions_per_tuple": sum(1 for _ in restricted_growth_strings(self.H.order, m)),
            }
        return self._tables[(n, m)]

    def lookup(self, target: ConfigurationSet):
        """``(h, labels)`` whose configuration set equals ``target`` as
        labeled sets, or None."""
        hit = self.table(target.n, target.m).get(canonical_form(target.configurations, target.n, target.m))
        if hit is None:
            return None
        h, labels = hit
        found = ConfigurationSet(target.n, target.m, tuple(con_labels(self.H.table, labels, h)))
        perm = sets_equal_up_to_relabel(found, target)
        return h, tuple(perm[k - 1] for k in labels)


def search_matching_pair(target: ConfigurationSet, H: FiniteGroup, threads: int = 1):
    """Some ``(h, F)`` of ``H`` with ``Con(h, F) == target``, or None."""
    _require_finite(H)
    hit = MatchIndex(H, threads).lookup(target)
    if hit is None:
        return None
    h, labels = hit
    return GeneratingTuple(H, h), ExplicitPartition(H, labels)


# -- certificates ------------------------------------------------------------------


@dataclass
class Certificate:
    """Outcome of a bounded containment search.

    ``witness`` (for not-contained) and ``matches`` (for contained) hold raw
    element indices and 1-based labels; ``to_document`` renders names.
    """

    relation: str  # "configuration" or "strong"
    verdict: str
    bounds: dict
    G: FiniteGroup = field(repr=False)
    H: FiniteGroup = field(repr=False)
    witness: dict | None = None
    matches: list = field(default_factory=list)
    searched: dict = field(default_factory=dict)

    @property
    def contained(self) -> bool:
        return self.verdict == CONTAINED

    def to_document(self) -> dict:
        G, H = self.G, self.H

        def pair_doc(group, gens, labels):
            blocks = [[] for _ in range(max(labels))]
            for x, k in enumerate(labels):
                blocks[k - 1].append(group.format(x))
            return {"gens": [group.format(g) for g in gens], "blocks": blocks}

        doc = {
            "relation": self.relation,
            "verdict": self.verdict if self.verdict == NOT_CONTAINED else "contained-within-bounds",
            "G": G.name,
            "H": H.name,
            "bounds": dict(self.bounds),
        }
        if self.witness is not None:
            w = self.witness
            doc["witness"] = {
                **pair_doc(G, w["gens"], w["labels"]),
                "configurations": [list(c) for c in w["configurations"]],
                "exhausted": {f"n={n},m={m}": v for (n, m), v in sorted(self.searched.items())},
            }
        if self.matches:
            doc["matches"] = [
                {"G": pair_doc(G, mt["g"], mt["E"]), "H": pair_doc(H, mt["h"], mt["F"])}
                for mt in self.matches
            ]
        doc["version"] = __version__
        return doc

    @classmethod
    def from_document(cls, doc: dict, G: FiniteGroup, H: FiniteGroup) -> Certificate:
        def parse_pair(group, d):
            gens = tuple(group.parse(s) for s in d["gens"])
            labels = [0] * group.order
            for k, block in enumerate(d["blocks"], 1):
                for s in block:
                    labels[group.parse(s)] = k
            return gens, tuple(labels)

        verdict = NOT_CONTAINED if doc["verdict"] == NOT_CONTAINED else CONTAINED
        cert = cls(doc["relation"], verdict, dict(doc["bounds"]), G, H)
        if "witness" in doc:
            gens, labels = parse_pair(G, doc["witness"])
            cert.witness = {"gens": gens, "labels": labels,
                            "configurations": tuple(map(tuple, doc["witness"]["configurations"]))}
        for mt in doc.get("matches", []):
            g, E = parse_pair(G, mt["G"])
            h, F = parse_pair(H, mt["H"])
            cert.matches.append({"g": g, "E": E, "h": h, "F": F})
        return cert


def _g_pairs(G: FiniteGroup, max_n: int, max_m: int, gens: tuple | None = None):
    tuples = [gens] if gens is not None else None
    for n in range(1, max_n + 1):
        for g in tuples if tuples is not None else _cached_gens(G, n):
            if len(g) != n:
                continue
            for m in range(1, max_m + 1):
                for labels in restricted_growth_strings(G.order, m):
                    yield n, m, g, labels


def _contain(relation, G, H, max_n, max_m, index: MatchIndex, gens_g=None, gens_h=None) -> Certificate:
    bounds = {"max_n": max_n, "max_m": max_m}
    if gens_g is not None:
        bounds = {"max_m": max_m, "gens_G": [G.format(x) for x in gens_g],
                  "gens_H": [H.format(x) for x in gens_h]}
    cert = Certificate(relation, CONTAINED, bounds, G, H)
    memo = {}
    for n, m, g, labels in _g_pairs(G, max_n, max_m, gens_g):
        target = ConfigurationSet(n, m, tuple(con_labels(G.table, labels, g)))
        key = target.configurations
        if key not in memo:
            memo[key] = index.lookup(target)
        hit = memo[key]
        if hit is None:
            cert.verdict = NOT_CONTAINED
            cert.witness = {"gens": g, "labels": labels, "configurations": target.configurations}
            cert.matches = []
            cert.searched = {k: v for k, v in index.searched.items() if k == (n, m)}
            return cert
        cert.matches.append({"g": g, "E": labels, "h": hit[0], "F": hit[1]})
    return cert


def stirling2(N: int, m: int) -> int:
    """Number of partitions of an N-set into exactly m blocks."""
    row = [1] + [0] * m
    for _ in range(N):
        row = [0] + [k * row[k] + row[k - 1] for k in range(1, m + 1)]
    return row[m]


def search_size(G: FiniteGroup, max_n: int, max_m: int) -> int:
    """Configuration pairs of ``G`` a containment search has to match."""
    parts = sum(stirling2(G.order, m) for m in range(1, max_m + 1))
    return parts * sum(len(_cached_gens(G, n)) for n in range(1, max_n + 1))


def configuration_contained(G: FiniteGroup, H: FiniteGroup, max_n: int, max_m: int, threads: int = 1,
                            budget: int | None = None) -> Certificate:
    """Bounded check of ``Con(G) <= Con(H)``.

    ``budget`` caps the number of configuration pairs of either group the
    search may have to tabulate.
    """
    _require_finite(G, H)
    if max_n < 1 or max_m < 1:
        raise ValueError("bounds must be positive")
    if budget is not None:
        need = max(search_size(G, max_n, max_m), search_size(H, max_n, max_m))
        if need > budget:
            raise BudgetExceeded(f"search needs {need} configuration pairs, budget is {budget}")
    return _contain("configuration", G, H, max_n, max_m, MatchIndex(H, threads))


def strong_contained_finite(G: FiniteGroup, H: FiniteGroup, gens_g: GeneratingTuple, gens_h: GeneratingTuple,
                            max_m: int, threads: int = 1) -> Certificate:
    """Every partition of ``G`` (<= max_m blocks) is matched by a partition of
    ``H`` with the generating tuples held fixed."""
    _require_finite(G, H)
    if len(gens_g) != len(gens_h):
        raise ValueError("generating tuples must have equal length")
    if gens_g.group is not G or gens_h.group is not H:
        raise ValueError("generating tuples belong to other groups")
    n = len(gens_g)
    index = MatchIndex(H, threads, gens=[gens_h.elements])
    return _contain("strong", G, H, n, max_m, index, gens_g.elements, gens_h.elements)


def verify_certificate(cert: Certificate) -> list[str]:
    """Re-check a certificate against the definitions without searching.

    Returns a list of problems (empty when the certificate holds up).
    """
    G, H = cert.G, cert.H
    problems = []

    def con(group, gens, labels):
        return frozenset(con_labels(group.table, labels, gens))

    def valid(group, gens, labels, what):
        if not generates(group, gens):
            problems.append(f"{what}: tuple does not generate {group.name}")
            return False
        m = max(labels)
        if min(labels) < 1 or set(labels) != set(range(1, m + 1)):
            problems.append(f"{what}: labels are not a partition")
            return False
        return True

    if cert.verdict == NOT_CONTAINED:
        w = cert.witness
        if w is None:
            return ["not-contained certificate without witness"]
        if valid(G, w["gens"], w["labels"], "witness"):
            if con(G, w["gens"], w["labels"]) != frozenset(w["configurations"]):
                problems.append("witness configurations do not match its pair")
            if len(w["gens"]) > cert.bounds.get("max_n", len(w["gens"])) or max(w["labels"]) > cert.bounds["max_m"]:
                problems.append("witness lies outside the stated bounds")
            # the one claim that needs H: no pair of H realizes the witness's set
            target = ConfigurationSet(len(w["gens"]), max(w["labels"]), tuple(con(G, w["gens"], w["labels"])))
            fixed = None
            if cert.relation == "strong":
                fixed = [tuple(H.parse(s) for s in cert.bounds["gens_H"])]
            if MatchIndex(H, 1, gens=fixed).lookup(target) is not None:
                problems.append("H realizes the witness's configuration set")
        return problems

    seen = set()
    for i, mt in enumerate(cert.matches):
        if not (valid(G, mt["g"], mt["E"], f"match {i} (G)") and valid(H, mt["h"], mt["F"], f"match {i} (H)")):
            continue
        if con(G, mt["g"], mt["E"]) != con(H, mt["h"], mt["F"]):
            problems.append(f"match {i}: configuration sets differ")
        if cert.relation == "strong":
            fixed_g = tuple(G.parse(s) for s in cert.bounds["gens_G"])
            fixed_h = tuple(H.parse(s) for s in cert.bounds["gens_H"])
            if mt["g"] != fixed_g or mt["h"] != fixed_h:
                problems.append(f"match {i}: generating tuples are not the fixed ones")
        seen.add((tuple(mt["g"]), tuple(mt["E"])))
    if cert.relation == "strong":
        fixed_g = tuple(G.parse(s) for s in cert.bounds["gens_G"])
        expected = {(n, m, g, lab) for n, m, g, lab in _g_pairs(G, len(fixed_g), cert.bounds["max_m"], fixed_g)}
    else:
        expected = set(_g_pairs(G, cert.bounds["max_n"], cert.bounds["max_m"]))
    if {(g, lab) for _, _, g, lab in expected} != seen:
        problems.append("matches do not cover every configuration pair within the bounds")
    return problems


# -- translation lemma ---------------------------------------------------------------


def translation_violations(G, gens_g, E: ExplicitPartition, H, gens_h, F: ExplicitPartition) -> list[dict]:
    """Check, for corresponding blocks (equal labels) and every pair of
    sigma-algebra members, that ``g_r A1 <= A2`` implies ``h_r B1 <= B2``
    and ``g_r A1 = A2`` implies ``h_r B1 = B2``.

    Members are built as explicit element sets, so the check does not lean
    on the configuration sets it is meant to test.
    """
    if E.m != F.m:
        raise ValueError("partitions have different block counts")
    violations = []
    members = list(sigma_algebra_of(E).members())

    def union(part, member):
        return frozenset(x for x, k in enumerate(part.labels) if k in member)

    A = {I: union(E, I) for I in members}
    B = {I: union(F, I) for I in members}
    for r, (g, h) in enumerate(zip(gens_g, gens_h), 1):
        gA = {I: frozenset(G._mul(g, x) for x in A[I]) for I in members}
        hB = {I: frozenset(H._mul(h, x) for x in B[I]) for I in members}
        for I1, I2 in itertools.product(members, repeat=2):
            if gA[I1] <= A[I2] and not hB[I1] <= B[I2]:
                violations.append({"r": r, "A1": sorted(I1), "A2": sorted(I2), "kind": "subset"})
            if gA[I1] == A[I2] and hB[I1] != B[I2]:
                violations.append({"r": r, "A1": sorted(I1), "A2": sorted(I2), "kind": "equality"})
    return violations
