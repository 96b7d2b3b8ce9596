"""Representative pairs ``(J, rho)``: symbolic words evaluated on any generating tuple."""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from .errors import EngineMismatch, ParseError
from .groups import FreeGroup, GeneratingTuple


@dataclass(frozen=True, order=True)
class RepresentativePair:
    """Index tuple ``J`` (entries in 1..n) and sign tuple ``rho`` of equal length."""

    n: int
    J: tuple = ()
    rho: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(self.J))
        object.__setattr__(self, "rho", tuple(self.rho))
        if self.n < 1:
            raise ValueError("ambient generator count must be positive")
        if len(self.J) != len(self.rho):
            raise ValueError("J and rho must have the same length")
        for j in self.J:
            if not 1 <= j <= self.n:
                raise ValueError(f"index {j} outside 1..{self.n}")
        for s in self.rho:
            if s not in (1, -1):
                raise ValueError(f"sign {s} is not +1 or -1")

    @classmethod
    def from_letters(cls, letters, n: int) -> RepresentativePair:
        """Build from signed letters, e.g. ``(1, -2, 1)``."""
        letters = tuple(letters)
        return cls(n, tuple(abs(s) for s in letters), tuple(1 if s > 0 else -1 for s in letters))

    @property
    def letters(self) -> tuple:
        return tuple(j * s for j, s in zip(self.J, self.rho))

    def __len__(self):
        return len(self.J)

    def __str__(self):
        return format_pair(self)


def parse_pair(text: str, n: int) -> RepresentativePair:
    """Parse ``"+1 -2 +1"``; ``"e"`` (or blank) is the empty pair."""
    toks = text.replace(",", " ").split()
    if toks in ([], ["e"]):
        return RepresentativePair(n)
    letters = []
    for tok in toks:
        if tok[0] not in "+-" or not tok[1:].isdigit():
            raise ParseError(f"bad signed index {tok!r}; expected e.g. +1 or -2")
        letters.append(int(tok))
    try:
        return RepresentativePair.from_letters(letters, n)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_pair(p: RepresentativePair) -> str:
    if not p.J:
        return "e"
    return " ".join(f"{'+' if s > 0 else '-'}{j}" for j, s in zip(p.J, p.rho))


def _check_ambient(p: RepresentativePair, q: RepresentativePair):
    if p.n != q.n:
        raise ValueError(f"ambient mismatch: n={p.n} vs n={q.n}")


def evaluate(p: RepresentativePair, gens: GeneratingTuple):
    """``W(J, rho; g) = prod_i g_{J(i)}^{rho(i)}`` in canonical form."""
    if p.n != len(gens):
        raise EngineMismatch(f"pair over {p.n} generators evaluated on a {len(gens)}-tuple")
    return evaluate_on(p, gens.group, gens.elements)


def evaluate_on(p: RepresentativePair, G, values):
    """Substitute arbitrary elements of ``G`` for the letters of ``p``."""
    if p.n != len(values):
        raise EngineMismatch(f"pair over {p.n} letters evaluated on {len(values)} values")
    letters = {}
    for i, g in enumerate(values, 1):
        letters[i] = g
        letters[-i] = G._inv(g)
    out = G.identity
    for s in p.letters:
        out = G._mul(out, letters[s])
    return out


def concat(p: RepresentativePair, q: RepresentativePair) -> RepresentativePair:
    _check_ambient(p, q)
    return RepresentativePair(p.n, p.J + q.J, p.rho + q.rho)


def inverse_pair(p: RepresentativePair) -> RepresentativePair:
    return RepresentativePair(p.n, p.J[::-1], tuple(-s for s in reversed(p.rho)))


def commutator_pair(p: RepresentativePair, q: RepresentativePair) -> RepresentativePair:
    """``[J, I] = J^-1 + I^-1 + J + I``, evaluating to ``x^-1 y^-1 x y``."""
    _check_ambient(p, q)
    return concat(concat(inverse_pair(p), inverse_pair(q)), concat(p, q))


def is_reduced(p: RepresentativePair) -> bool:
    return all(
        not (p.J[k] == p.J[k + 1] and p.rho[k] != p.rho[k + 1]) for k in range(len(p) - 1)
    )


def free_reduce(p: RepresentativePair) -> RepresentativePair:
    stack = []
    for s in p.letters:
        if stack and stack[-1] == -s:
            stack.pop()
        else:
            stack.append(s)
    return RepresentativePair.from_letters(stack, p.n)


def exponent_sums(p: RepresentativePair) -> tuple:
    sums = [0] * p.n
    for j, s in zip(p.J, p.rho):
        sums[j - 1] += s
    return tuple(sums)


def is_first_derivation_form(p: RepresentativePair) -> bool:
    """Membership of the free-group word in ``[F_n, F_n]``: all exponent sums vanish."""
    return not any(exponent_sums(p))


# -- enumeration ---------------------------------------------------------------


def letter_order(n: int) -> list[int]:
    """Signed letters in enumeration order: ``+1, -1, +2, -2, ...``."""
    return [s for i in range(1, n + 1) for s in (i, -i)]


def all_pairs(n: int, max_len: int, min_len: int = 0) -> Iterator[RepresentativePair]:
    """Every pair with ``min_len <= |J| <= max_len``, by length then letter order."""
    alphabet = letter_order(n)
    for L in range(min_len, max_len + 1):
        for letters in itertools.product(alphabet, repeat=L):
            yield RepresentativePair.from_letters(letters, n)


def reduced_pairs(n: int, max_len: int, min_len: int = 0) -> Iterator[RepresentativePair]:
    """Reduced pairs (no adjacent ``g g^-1``), by length then letter order."""
    alphabet = letter_order(n)

    def extend(prefix, L):
        if len(prefix) == L:
            yield prefix
            return
        for s in alphabet:
            if prefix and prefix[-1] == -s:
                continue
            yield from extend(prefix + (s,), L)

    for L in range(min_len, max_len + 1):
        for letters in extend((), L):
            yield RepresentativePair.from_letters(letters, n)


class _LazyStream:
    """Memoised random access into a (possibly infinite) iterator."""

    def __init__(self, it):
        self._it = iter(it)
        self._items = []

    def __getitem__(self, i):
        while len(self._items) <= i:
            self._items.append(next(self._it))
        return self._items[i]


def _nested_commutators(atoms: _LazyStream) -> Iterator[RepresentativePair]:
    # diagonal sweep over (i, j) index pairs of the previous level
    seen = set()
    for s in itertools.count():
        for i in range(s + 1):
            c = commutator_pair(atoms[i], atoms[s - i])
            if c in seen or not free_reduce(c).J:
                continue
            seen.add(c)
            yield c


def derivation_form_pairs(n: int, k: int, budget: int, start: int = 0) -> Iterator[RepresentativePair]:
    """Up to ``budget`` distinct pairs in kth derivation form, deterministically.

    Level 0 is every nonempty reduced pair (by length, then letter order).
    Level ``j`` takes commutators of level ``j-1`` items in a diagonal sweep
    over their stream indices, skipping repeats and commutators that freely
    reduce to the empty word.  ``start`` skips that many leading items, so a
    run can be resumed.
    """
    if n < 1 or k < 1 or budget < 1:
        raise ValueError("n, k and budget must be positive")
    level = _LazyStream(reduced_pairs(n, 10**9, min_len=1))
    for _ in range(k):
        level = _LazyStream(_nested_commutators(level))
    for i in range(start, start + budget):
        yield level[i]


def free_word(p: RepresentativePair) -> tuple:
    """Canonical element of ``F_n`` represented by ``p``."""
    return evaluate(p, FreeGroup(p.n).standard_generators())
