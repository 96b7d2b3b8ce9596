"""Golden configuration pair families and desk-scale checks of their relations.

Three curated families are provided: the first-letter partition of a free
group, the sign/F-component atoms of ``Z^n x F`` and the five-block partition
of ``D_inf``.  Goldenness itself quantifies over every rival configuration
pair with an equal configuration set, which cannot be searched; the checks
here test the defining implication against explicitly supplied rivals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groups import (
    FiniteGroup, FreeGroup, GeneratingTuple, Group, InfiniteDihedralGroup, ZnTimesFinite, ball,
)
from .partitions import Partition, SymbolicPartition
from .words import evaluate, format_pair, reduced_pairs

MAX_RECORDED_VIOLATIONS = 50


@dataclass
class GoldenCandidate:
    group: Group
    gens: GeneratingTuple
    part: Partition
    family: str
    params: dict = field(default_factory=dict)
    # named blocks -> labels, e.g. {0: 1, 1: 2, -1: 4} for the free family
    block_labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.gens.group is not self.group or self.part.group is not self.group:
            raise ValueError("generating tuple and partition must live on the candidate's group")

    @property
    def identity_label(self) -> int:
        return self.part.label(self.group.identity)


@dataclass
class GoldenReport:
    family: str
    params: dict
    check: str
    checked: int = 0
    max_len: int | None = None
    radius: int | None = None
    violations: list = field(default_factory=list)
    violation_count: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def add(self, violation: dict):
        self.violation_count += 1
        if len(self.violations) < MAX_RECORDED_VIOLATIONS:
            self.violations.append(violation)

    def to_document(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "check": self.check,
            "bounds": {"max_len": self.max_len, "radius": self.radius},
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": self.violations,
        }


# -- families ------------------------------------------------------------------------


def free_block_labels(n: int) -> dict:
    """``E_0 -> 1``, ``E_k -> k + 1``, ``E_-k -> n + 1 + k``."""
    labels = {0: 1}
    for k in range(1, n + 1):
        labels[k] = k + 1
        labels[-k] = n + 1 + k
    return labels


def free_group_partition(n: int) -> GoldenCandidate:
    """``E_0 = {e}`` and ``E_k`` / ``E_-k``: reduced words starting with
    ``f_k`` / ``f_k^-1``."""
    if n < 2:
        raise ValueError("the first-letter family needs a non-abelian free group (n >= 2)")
    F = FreeGroup(n)
    labels = free_block_labels(n)

    def classify(w):
        return labels[w[0]] if w else 1

    part = SymbolicPartition(F, 2 * n + 1, classify, "free-first-letter", {"rank": n})
    return GoldenCandidate(F, F.standard_generators(), part, "free-first-letter", {"rank": n}, labels)


def dinf_partition() -> GoldenCandidate:
    """``E1={e}, E2={x}, E3={y}``; ``E4``/``E5``: longer words starting with x/y."""
    D = InfiniteDihedralGroup()

    def classify(w):
        if len(w) <= 1:
            return {"": 1, "x": 2, "y": 3}[w]
        return 4 if w[0] == "x" else 5

    part = SymbolicPartition(D, 5, classify, "dinf-five-block")
    return GoldenCandidate(D, D.standard_generators(), part, "dinf-five", {}, {k: k for k in range(1, 6)})


def znf_sigma_candidate(n: int, F: FiniteGroup) -> GoldenCandidate:
    """Atoms of the sigma-algebra on ``Z^n x F`` generated by the singletons
    ``{g_i}``, ``{g_i g_j}`` (``1 <= i, j <= n``) and the cells
    ``E(tau, j) = tau(1)N x ... x tau(n)N x {x_j}`` with ``N = {1, 2, ...}``.

    Labels: the distinct singletons first (``g_1..g_n``, then ``g_i g_j`` in
    lexicographic ``(i, j)`` order), then one atom per cell minus those
    singletons, cells ordered by ``tau`` over ``(-1, 0, 1)^n`` and then ``j``
    (``x_0 = e_F`` first, the rest in table order).
    """
    if n < 1:
        raise ValueError("n must be positive")
    G = ZnTimesFinite(n, F)
    gens = G.standard_generators()
    eF = F.identity
    singles = []
    for i in range(n):
        singles.append(gens[i])
    for i, j in itertools.product(range(n), repeat=2):
        singles.append(G._mul(gens[i], gens[j]))
    single_label = {}
    for s in singles:
        single_label.setdefault(s, len(single_label) + 1)
    f_order = [eF] + [x for x in F.elements() if x != eF]
    f_pos = {x: j for j, x in enumerate(f_order)}
    taus = list(itertools.product((-1, 0, 1), repeat=n))
    tau_pos = {t: i for i, t in enumerate(taus)}
    s = len(single_label)
    m = s + len(taus) * len(f_order)

    def classify(a):
        if a in single_label:
            return single_label[a]
        vec, f = a
        tau = tuple((v > 0) - (v < 0) for v in vec)
        return s + 1 + tau_pos[tau] * len(f_order) + f_pos[f]

    params = {"rank": n, "finite": F.name}
    part = SymbolicPartition(G, m, classify, "znf-sign-atoms", params)
    blocks = {("single", G.format(a)): k for a, k in single_label.items()}
    for tau in taus:
        for j in range(len(f_order)):
            blocks[("cell", tau, j)] = s + 1 + tau_pos[tau] * len(f_order) + j
    return GoldenCandidate(G, gens, part, "znf-sign", params, blocks)


# -- checks ----------------------------------------------------------------------------


def verify_translation_relations(c: GoldenCandidate, radius: int) -> GoldenReport:
    """Check ``f_k(F \\ E_-k) = E_k`` and ``f_k E_-k = F \\ E_k`` on a ball.

    Since ``f_k`` is a bijection, each relation holds on the ball exactly
    when ``w`` in the source set iff ``f_k w`` in the target set, for every
    ``w`` whose image is still classifiable.
    """
    if c.family != "free-first-letter":
        raise ValueError(f"translation relations are stated for the free family, not {c.family}")
    report = GoldenReport(c.family, dict(c.params), "translation-relations", radius=radius)
    F, part, lab = c.group, c.part, c.block_labels
    domain = ball(c.gens, radius)
    for k in range(1, F.rank + 1):
        fk = c.gens[k - 1]
        for w in domain:
            v = F._mul(fk, w)
            if not (part.in_domain(w) and part.in_domain(v)):
                continue
            report.checked += 1
            in_minus = part.label(w) == lab[-k]
            in_plus = part.label(v) == lab[k]
            if (not in_minus) != in_plus:
                report.add({"k": k, "relation": f"f{k}(F\\E_-{k}) = E_{k}", "word": F.format(w)})
            if in_minus != (not in_plus):
                report.add({"k": k, "relation": f"f{k}E_-{k} = F\\E_{k}", "word": F.format(w)})
    return report


def verify_golden_implication(c: GoldenCandidate, rival_gens: GeneratingTuple, rival_part: Partition,
                              max_len: int, radius: int, rival_block: int | None = None) -> GoldenReport:
    """For every reduced pair with ``|J| <= max_len`` and nontrivial value on
    the candidate's tuple, check ``W(J, rho; g') E' \\cap E' = {}`` for the
    elements of ``E'`` inside ``ball(radius)``.

    ``E'`` is the rival block labeled ``rival_block`` (default: the block of
    the identity).
    """
    G = c.group
    if len(rival_gens) != len(c.gens):
        raise ValueError("rival generating tuple has a different length")
    if rival_gens.group is not G and rival_gens.group != G:
        raise ValueError("rival lives on another group")
    target = rival_part.label(G.identity) if rival_block is None else rival_block
    e_prime = [x for x in ball(c.gens, radius) if rival_part.in_domain(x) and rival_part.label(x) == target]
    report = GoldenReport(c.family, dict(c.params), "golden-implication", max_len=max_len, radius=radius)
    for p in reduced_pairs(len(c.gens), max_len, min_len=1):
        if evaluate(p, c.gens) == G.identity:
            continue
        report.checked += 1
        w = evaluate(p, rival_gens)
        for x in e_prime:
            y = G._mul(w, x)
            if rival_part.in_domain(y) and rival_part.label(y) == target:
                report.add({"pair": format_pair(p), "rival_value": G.format(w),
                            "from": G.format(x), "to": G.format(y)})
                break
    return report


def free_block_absorption_check(n: int, max_len: int) -> GoldenReport:
    """Every nonempty reduced pair evaluates in ``F_n`` into ``E_{rho(1)J(1)}``."""
    c = free_group_partition(n)
    report = GoldenReport(c.family, dict(c.params), "block-absorption", max_len=max_len)
    for p in reduced_pairs(n, max_len, min_len=1):
        report.checked += 1
        w = evaluate(p, c.gens)
        want = c.block_labels[p.rho[0] * p.J[0]]
        if c.part.label(w) != want:
            report.add({"pair": format_pair(p), "value": c.group.format(w), "label": c.part.label(w), "expected": want})
    return report


def dinf_block_predicates() -> dict:
    """First-principles membership tests for the five D_inf blocks."""
    def alternating(w):
        return all(a != b for a, b in zip(w, w[1:]))

    return {
        1: lambda w: w == "",
        2: lambda w: w == "x",
        3: lambda w: w == "y",
        4: lambda w: len(w) > 1 and w[0] == "x" and alternating(w),
        5: lambda w: len(w) > 1 and w[0] == "y" and alternating(w),
    }


def free_block_predicates(n: int) -> dict:
    labels = free_block_labels(n)
    preds = {labels[0]: lambda w: len(w) == 0}
    for k in range(1, n + 1):
        preds[labels[k]] = lambda w, k=k: len(w) > 0 and w[0] == k
        preds[labels[-k]] = lambda w, k=k: len(w) > 0 and w[0] == -k
    return preds


def verify_block_predicates(c: GoldenCandidate, radius: int, predicates: dict | None = None) -> GoldenReport:
    """Each element of the ball satisfies exactly one block predicate, and
    it is the one for its classifier label (a partition of the ball)."""
    if predicates is None:
        if c.family == "dinf-five":
            predicates = dinf_block_predicates()
        elif c.family == "free-first-letter":
            predicates = free_block_predicates(c.group.rank)
        else:
            raise ValueError(f"no built-in block predicates for {c.family}")
    report = GoldenReport(c.family, dict(c.params), "block-partition", radius=radius)
    for w in ball(c.gens, radius):
        report.checked += 1
        hits = [k for k, pred in sorted(predicates.items()) if pred(w)]
        if hits != [c.part.label(w)]:
            report.add({"word": c.group.format(w), "label": c.part.label(w), "predicates": hits})
    return report

