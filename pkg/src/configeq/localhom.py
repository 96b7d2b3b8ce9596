"""The word relation between two generating tuples, local homomorphisms,
bounded epimorphism checks, inner-automorphism separation and group laws."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InfiniteGroupError
from .groups import GeneratingTuple, Group, ball
from .words import (
    RepresentativePair, all_pairs, commutator_pair, concat, evaluate, evaluate_on, format_pair, inverse_pair, parse_pair,
)

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class PairSets:
    """All nonempty pairs with ``|J| <= 3 n0`` (S0), ``<= 2 n0`` (S1),
    ``<= n0`` (S2), sharing one enumeration order."""

    n: int
    n0: int
    S0: tuple
    S1: tuple
    S2: tuple


def tier_size(n: int, L: int) -> int:
    return sum((2 * n) ** p for p in range(1, L + 1))


def build_pair_sets(n: int, n0: int, budget: int = DEFAULT_BUDGET) -> PairSets:
    if n < 1 or n0 < 1:
        raise ValueError("n and n0 must be positive")
    need = tier_size(n, 3 * n0)
    if need > budget:
        raise BudgetExceeded(f"S0 would hold {need} pairs, budget is {budget}")
    S0 = tuple(all_pairs(n, 3 * n0, min_len=1))
    return PairSets(n, n0, S0, S0[: tier_size(n, 2 * n0)], S0[: tier_size(n, n0)])


@dataclass(frozen=True)
class TauRelation:
    """Pairs ``(W(p; g), W(p; h))`` for each representative pair ``p``.

    The direction is fixed: words on the first tuple map to the same words
    on the second.
    """

    pairs: tuple
    entries: tuple
    G: Group = field(compare=False)
    H: Group = field(compare=False)

    def images(self) -> dict:
        out = {}
        for (g, h), p in zip(self.entries, self.pairs):
            out.setdefault(g, {}).setdefault(h, p)
        return out

    def functional_witness(self, restrict=None):
        """First G-value with two distinct H-values, as ``(g, (h1, p1), (h2, p2))``."""
        for g, hs in self.images().items():
            if restrict is not None and g not in restrict:
                continue
            if len(hs) > 1:
                (h1, p1), (h2, p2) = list(hs.items())[:2]
                return g, (h1, p1), (h2, p2)
        return None

    def is_functional(self) -> bool:
        return self.functional_witness() is None


def tau_relation(gens_g: GeneratingTuple, gens_h: GeneratingTuple, pairs) -> TauRelation:
    if len(gens_g) != len(gens_h):
        raise ValueError("generating tuples must have equal length")
    pairs = tuple(pairs)
    entries = tuple((evaluate(p, gens_g), evaluate(p, gens_h)) for p in pairs)
    return TauRelation(pairs, entries, gens_g.group, gens_h.group)


@dataclass
class Verdict:
    ok: bool
    verdict: str
    witness: object = None
    checked: int = 0

    def __bool__(self):
        return self.ok


def is_local_homomorphism(rel: TauRelation, base) -> Verdict:
    """``phi(x y^-1) = phi(x) phi(y)^-1`` for all ``x, y`` in ``base``.

    Functionality on ``base . base^-1`` is checked first and reported as its
    own verdict (``not-functional``); a value missing from the relation gives
    ``undefined``.
    """
    G, H = rel.G, rel.H
    base = list(dict.fromkeys(base))
    needed = set(base) | {G._mul(x, G._inv(y)) for x in base for y in base}
    bad = rel.functional_witness(needed)
    if bad is not None:
        g, (h1, p1), (h2, p2) = bad
        return Verdict(False, "not-functional", {
            "value": G.format(g),
            "images": [[H.format(h1), format_pair(p1)], [H.format(h2), format_pair(p2)]],
        })
    phi = {g: next(iter(hs)) for g, hs in rel.images().items()}
    missing = sorted((G.format(x) for x in needed if x not in phi))
    if missing:
        return Verdict(False, "undefined", {"missing": missing})
    checked = 0
    for x in base:
        for y in base:
            checked += 1
            lhs = phi[G._mul(x, G._inv(y))]
            rhs = H._mul(phi[x], H._inv(phi[y]))
            if lhs != rhs:
                return Verdict(False, "identity-fails", {"x": G.format(x), "y": G.format(y)}, checked)
    return Verdict(True, "local-homomorphism", None, checked)


def is_bounded_epimorphism(gens_g: GeneratingTuple, gens_h: GeneratingTuple, max_len: int,
                           budget: int = DEFAULT_BUDGET) -> Verdict:
    """``W(p; g) = e  =>  W(p; h) = e`` for every pair with ``|J| <= max_len``."""
    if len(gens_g) != len(gens_h):
        raise ValueError("generating tuples must have equal length")
    n = len(gens_g)
    if tier_size(n, max_len) > budget:
        raise BudgetExceeded(f"{tier_size(n, max_len)} pairs exceed the budget of {budget}")
    G, H = gens_g.group, gens_h.group
    checked = 0
    for p in all_pairs(n, max_len, min_len=1):
        checked += 1
        if evaluate(p, gens_g) == G.identity and evaluate(p, gens_h) != H.identity:
            return Verdict(False, "relator-not-preserved", p, checked)
    return Verdict(True, "epimorphism-within-bounds", None, checked)


def conjugation_pair(p: RepresentativePair, q: RepresentativePair) -> RepresentativePair:
    """``p + q + p^-1``, evaluating to ``W(p) W(q) W(p)^-1``."""
    return concat(concat(p, q), inverse_pair(p))


def inner_separation_witness(G: Group, gens, p1: RepresentativePair, p2: RepresentativePair,
                             max_len: int) -> RepresentativePair | None:
    """First pair ``I`` (single letters first) on which conjugation by
    ``W(p1)`` and by ``W(p2)`` disagree, or None up to ``max_len``."""
    values = tuple(gens)
    for q in all_pairs(len(values), max_len, min_len=1):
        a = evaluate_on(conjugation_pair(p1, q), G, values)
        if a != evaluate_on(conjugation_pair(p2, q), G, values):
            return q
    return None


# -- group laws ----------------------------------------------------------------------

NAMED_LAWS = {
    "abelian": ("-1 -2 +1 +2", 2),
    "exponent2": ("+1 +1", 1),
    "exponent3": ("+1 +1 +1", 1),
}
# [[x1, x2], [x3, x4]]
NAMED_LAWS["metabelian"] = (format_pair(commutator_pair(
    commutator_pair(parse_pair("+1", 4), parse_pair("+2", 4)),
    commutator_pair(parse_pair("+3", 4), parse_pair("+4", 4)))), 4)


@dataclass(frozen=True)
class GroupLaw:
    """A word ``mu`` in variables ``x1..xn``; the law is ``mu = e``."""

    word: RepresentativePair
    name: str | None = None

    @property
    def n(self) -> int:
        return self.word.n


def parse_law(text: str, n: int | None = None) -> GroupLaw:
    """A named law (``abelian``, ...) or a signed-index word like ``"+1 +1"``."""
    if text in NAMED_LAWS:
        word, arity = NAMED_LAWS[text]
        return GroupLaw(parse_pair(word, arity), text)
    if n is None:
        n = max((int(t[1:]) for t in text.split() if t not in ("e",)), default=1)
    return GroupLaw(parse_pair(text, n))


def _law_domain(G: Group, domain, n: int):
    kind = domain[0] if isinstance(domain, tuple) else domain
    if kind == "all":
        if not G.finite:
            raise InfiniteGroupError("the 'all' domain needs a finite group")
        return itertools.product(G.elements(), repeat=n)
    if kind == "ball":
        elems = ball(G.standard_generators(), domain[1])
        return itertools.product(elems, repeat=n)
    if kind == "sample":
        _, k, seed = domain
        rng = random.Random(seed)
        if G.finite:
            elems = G.elements()
            return (tuple(rng.choice(elems) for _ in range(n)) for _ in range(k))
        gens = G.standard_generators()
        letters = list(gens) + [G._inv(g) for g in gens]

        def rand_elem():
            out = G.identity
            for _ in range(rng.randint(0, 8)):
                out = G._mul(out, rng.choice(letters))
            return out

        return (tuple(rand_elem() for _ in range(n)) for _ in range(k))
    raise ValueError(f"unknown law domain {domain!r}")


def check_group_law(G: Group, law: GroupLaw, domain="all") -> Verdict:
    """Evaluate ``mu`` on every tuple of the domain: ``"all"``,
    ``("ball", r)`` or ``("sample", k, seed)``."""
    if law.n < 1:
        raise ValueError("a law needs at least one variable")
    checked = 0
    for xs in _law_domain(G, domain, law.n):
        checked += 1
        if evaluate_on(law.word, G, xs) != G.identity:
            return Verdict(False, "law-fails", tuple(xs), checked)
    return Verdict(True, "law-holds", None, checked)
