"""Group engines with canonical element payloads.

Elements are plain hashable payloads in canonical form, owned by an engine:

* finite groups: the element index ``0..N-1``
* free group ``F_n``: reduced word, a tuple of nonzero ints (``-2`` is ``f2^-1``)
* free abelian ``Z^n``: a tuple of ``n`` ints
* ``Z^n x F``: ``(vector, index into F)``
* infinite dihedral group: a reduced alternating string over ``"xy"``

Two elements of one engine are equal iff their payloads are equal.
"""
from __future__ import annotations

import itertools
import re
import warnings
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import EngineMismatch, InfiniteGroupError, InvalidTable, NotGenerating, ParseError

ASSOCIATIVITY_CHECK_LIMIT = 64


class Group:
    """Common interface of all engines."""

    kind = "abstract"
    finite = False
    identity = None

    def multiply(self, a, b):
        self.check(a, b)
        return self._mul(a, b)

    def invert(self, a):
        self.check(a)
        return self._inv(a)

    def check(self, *elements):
        for a in elements:
            if not self.contains(a):
                raise EngineMismatch(f"{a!r} is not an element of {self}")

    def contains(self, a) -> bool:
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def power(self, a, k: int):
        base = self._inv(a) if k < 0 else a
        out = self.identity
        for _ in range(abs(k)):
            out = self._mul(out, base)
        return out

    def commutator(self, a, b):
        """``[a, b] = a^-1 b^-1 a b``."""
        return self._mul(self._mul(self._inv(a), self._inv(b)), self._mul(a, b))

    def conjugate(self, g, x):
        """``g x g^-1``."""
        return self._mul(self._mul(g, x), self._inv(g))

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def standard_generators(self) -> GeneratingTuple:
        raise NotImplementedError

    def elements(self) -> list:
        raise InfiniteGroupError(f"{self} is infinite; cannot enumerate all elements")

    @property
    def order(self) -> int:
        raise InfiniteGroupError(f"{self} is infinite")


# -- finite groups -----------------------------------------------------------


class FiniteGroup(Group):
    """Finite group given by a multiplication table on indices ``0..N-1``.

    ``table[a][b]`` is the index of ``a*b``.  The table is validated on
    construction: Latin square, two-sided identity, and (for N <= 64)
    associativity.  Larger tables are accepted with
    ``meta["associativity_checked"] = False``.
    """

    kind = "finite"
    finite = True

    def __init__(self, names: Sequence[str], table, identity: int = 0, name: str = "G", generators=None):
        self.names = tuple(str(s) for s in names)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.identity = identity
        self.name = name
        self.meta = {"associativity_checked": False}
        self._validate()
        self._index = {s: i for i, s in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise InvalidTable("duplicate element names")
        e = identity
        self.inverses = tuple(row.index(e) for row in self.table)
        self._default_gens = None if generators is None else tuple(generators)

    def _validate(self):
        N = len(self.names)
        if N == 0:
            raise InvalidTable("invalid multiplication table: empty group")
        if len(self.table) != N or any(len(row) != N for row in self.table):
            raise InvalidTable("invalid multiplication table: table must be N x N")
        full = set(range(N))
        for row in self.table:
            if set(row) != full:
                raise InvalidTable("invalid multiplication table: row is not a permutation")
        for j in range(N):
            if {row[j] for row in self.table} != full:
                raise InvalidTable("invalid multiplication table: column is not a permutation")
        e = self.identity
        if not 0 <= e < N:
            raise InvalidTable("invalid multiplication table: identity index out of range")
        if self.table[e] != tuple(range(N)) or any(self.table[a][e] != a for a in range(N)):
            raise InvalidTable("invalid multiplication table: identity is not neutral")
        if N <= ASSOCIATIVITY_CHECK_LIMIT:
            t = self.table
            for a in range(N):
                ta = t[a]
                for b in range(N):
                    ab = ta[b]
                    tab, tb = t[ab], t[b]
                    for c in range(N):
                        if tab[c] != ta[tb[c]]:
                            raise InvalidTable("invalid multiplication table: not associative")
            self.meta["associativity_checked"] = True
        else:
            warnings.warn(f"associativity of {N}-element table not checked", stacklevel=3)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={len(self.names)})"

    def __len__(self):
        return len(self.names)

    @property
    def order(self) -> int:
        return len(self.names)

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < len(self.names)

    def _mul(self, a, b):
        return self.table[a][b]

    def _inv(self, a):
        return self.inverses[a]

    def elements(self) -> list:
        return list(range(len(self.names)))

    def format(self, a) -> str:
        return self.names[a]

    def parse(self, text: str):
        text = text.strip()
        if text in self._index:
            return self._index[text]
        raise ParseError(f"unknown element {text!r} of {self.name}")

    def standard_generators(self) -> GeneratingTuple:
        if self._default_gens is None:
            self._default_gens = minimal_generating_tuple(self)
        return GeneratingTuple(self, self._default_gens)

    @classmethod
    def from_operation(cls, elements: Sequence, op, name="G", fmt=str, generators=None) -> FiniteGroup:
        """Tabulate ``op`` on ``elements``; the identity is located by search."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[op(a, b)] for b in elements] for a in elements]
        N = len(elements)
        ident = next(
            (i for i in range(N) if table[i] == list(range(N))),
            None,
        )
        if ident is None:
            raise InvalidTable("invalid multiplication table: no identity")
        gens = None if generators is None else [index[g] for g in generators]
        return cls([fmt(x) for x in elements], table, ident, name=name, generators=gens)


def subgroup_closure(G: Group, gens: Iterable) -> frozenset:
    """Subgroup of a finite group generated by ``gens`` (breadth-first)."""
    gens = list(gens)
    letters = gens + [G._inv(g) for g in gens]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in letters:
                y = G._mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generates(G: FiniteGroup, gens: Iterable) -> bool:
    return len(subgroup_closure(G, gens)) == G.order


def minimal_generating_tuple(G: FiniteGroup) -> tuple:
    """Lexicographically first generating tuple of minimal length."""
    if G.order == 1:
        return (G.identity,)
    for n in itertools.count(1):
        for tup in itertools.product(range(G.order), repeat=n):
            if generates(G, tup):
                return tup


def _perm_name(p: tuple) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def parse_cycles(text: str, degree: int) -> tuple:
    """Parse 1-based cycle notation like ``(1 2)(3 4)`` into an image tuple."""
    img = list(range(degree))
    text = text.strip()
    if text in ("e", "()", ""):
        return tuple(img)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
        raise ParseError(f"bad cycle notation {text!r}")
    for cyc in reversed(cycles):  # rightmost cycle acts first
        pts = [int(s) - 1 for s in re.split(r"[\s,]+", cyc.strip()) if s]
        if any(not 0 <= q < degree for q in pts) or len(set(pts)) != len(pts):
            raise ParseError(f"bad cycle {cyc!r} for degree {degree}")
        step = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
        img = [step.get(v, v) for v in img]
    return tuple(img)


def compose_perms(p: tuple, q: tuple) -> tuple:
    """Product ``p*q`` acting on the left: first ``q``, then ``p``."""
    return tuple(p[q[i]] for i in range(len(q)))


def from_permutations(degree: int, generators: Sequence, name="G") -> FiniteGroup:
    """Finite group generated by permutations (image tuples, 0-based).

    Elements are ordered by their image tuples, so the identity is first.
    """
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise InvalidTable(f"{g} is not a permutation of degree {degree}")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose_perms(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = sorted(seen)
    G = FiniteGroup.from_operation(elems, compose_perms, name=name, fmt=_perm_name, generators=gens or [ident])
    G.permutations = tuple(elems)
    G.degree = degree
    return G


# -- infinite engines ----------------------------------------------------------


class FreeGroup(Group):
    """Free group on ``f1..fn``; elements are freely reduced letter tuples."""

    kind = "free"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        self.identity = ()

    def __repr__(self):
        return f"FreeGroup({self.rank})"

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("free", self.rank))

    def contains(self, a) -> bool:
        if not isinstance(a, tuple):
            return False
        for i, s in enumerate(a):
            if not isinstance(s, int) or s == 0 or abs(s) > self.rank:
                return False
            if i and a[i - 1] == -s:
                return False
        return True

    def _mul(self, a, b):
        i = 0
        k = min(len(a), len(b))
        while i < k and a[len(a) - 1 - i] == -b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def _inv(self, a):
        return tuple(-s for s in reversed(a))

    def generator(self, i: int):
        return (i,)

    def format(self, a) -> str:
        if not a:
            return "e"
        return " ".join(f"f{abs(s)}" if s > 0 else f"f{abs(s)}^-1" for s in a)

    def parse(self, text: str):
        text = text.strip()
        if text in ("e", ""):
            return ()
        out = ()
        for tok in text.split():
            m = re.fullmatch(r"f(\d+)(\^(-?\d+))?", tok)
            if not m:
                raise ParseError(f"bad free-group letter {tok!r}")
            i, k = int(m.group(1)), int(m.group(3) or 1)
            if not 1 <= i <= self.rank:
                raise ParseError(f"generator f{i} out of range")
            out = self._mul(out, self.power((i,), k))
        return out

    def standard_generators(self) -> GeneratingTuple:
        return GeneratingTuple(self, tuple((i,) for i in range(1, self.rank + 1)), trusted=True)


class FreeAbelianGroup(Group):
    """``Z^n`` with integer vectors as elements."""

    kind = "free-abelian"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        self.identity = (0,) * rank

    def __repr__(self):
        return f"FreeAbelianGroup({self.rank})"

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.rank
            and all(isinstance(v, int) and not isinstance(v, bool) for v in a)
        )

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    def format(self, a) -> str:
        return "(" + ",".join(map(str, a)) + ")"

    def parse(self, text: str):
        vals = _parse_int_vector(text)
        if len(vals) != self.rank:
            raise ParseError(f"expected {self.rank} coordinates in {text!r}")
        return vals

    def standard_generators(self) -> GeneratingTuple:
        gens = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        return GeneratingTuple(self, gens, trusted=True)


def _parse_int_vector(text: str) -> tuple:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"expected a parenthesised vector, got {text!r}")
    try:
        return tuple(int(s) for s in body[1:-1].split(",") if s.strip())
    except ValueError:
        raise ParseError(f"bad integer vector {text!r}") from None


class ZnTimesFinite(Group):
    """Direct product ``Z^n x F``; elements are ``(vector, index in F)``."""

    kind = "product-zn-f"

    def __init__(self, rank: int, finite: FiniteGroup):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        self.F = finite
        self.identity = ((0,) * rank, finite.identity)

    def __repr__(self):
        return f"ZnTimesFinite({self.rank}, {self.F.name})"

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and isinstance(a[0], tuple)
            and len(a[0]) == self.rank
            and all(isinstance(v, int) for v in a[0])
            and self.F.contains(a[1])
        )

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a[0], b[0])), self.F.table[a[1]][b[1]]

    def _inv(self, a):
        return tuple(-x for x in a[0]), self.F.inverses[a[1]]

    def format(self, a) -> str:
        return "((" + ",".join(map(str, a[0])) + ")," + self.F.format(a[1]) + ")"

    def parse(self, text: str):
        m = re.fullmatch(r"\s*\(\s*(\([^()]*\))\s*,\s*(.+?)\s*\)\s*", text)
        if not m:
            raise ParseError(f"expected ((v1,...,vn),x), got {text!r}")
        vec = _parse_int_vector(m.group(1))
        if len(vec) != self.rank:
            raise ParseError(f"expected {self.rank} coordinates in {text!r}")
        return vec, self.F.parse(m.group(2))

    def standard_generators(self) -> GeneratingTuple:
        """``(e_i, e_F)`` for each coordinate, then ``(0, x_j)`` for every
        non-identity ``x_j`` of ``F`` in table order."""
        zero = (0,) * self.rank
        gens = [(tuple(int(i == j) for j in range(self.rank)), self.F.identity) for i in range(self.rank)]
        gens += [(zero, x) for x in self.F.elements() if x != self.F.identity]
        return GeneratingTuple(self, tuple(gens), trusted=True)


class InfiniteDihedralGroup(Group):
    """``D_inf = <x, y | x^2 = y^2 = 1>``; elements are alternating strings."""

    kind = "dihedral-infinite"

    def __init__(self):
        self.identity = ""

    def __repr__(self):
        return "InfiniteDihedralGroup()"

    def __eq__(self, other):
        return isinstance(other, InfiniteDihedralGroup)

    def __hash__(self):
        return hash("dinf")

    def contains(self, a) -> bool:
        return isinstance(a, str) and set(a) <= {"x", "y"} and all(a[i] != a[i + 1] for i in range(len(a) - 1))

    def _mul(self, a, b):
        i = 0
        k = min(len(a), len(b))
        while i < k and a[len(a) - 1 - i] == b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def _inv(self, a):
        return a[::-1]

    def format(self, a) -> str:
        return a or "e"

    def parse(self, text: str):
        text = text.replace(" ", "")
        if text in ("e", ""):
            return ""
        if set(text) - {"x", "y"}:
            raise ParseError(f"bad D_inf word {text!r}")
        out = ""
        for ch in text:
            out = self._mul(out, ch)
        return out

    def standard_generators(self) -> GeneratingTuple:
        return GeneratingTuple(self, ("x", "y"), trusted=True)


# -- generating tuples ---------------------------------------------------------


@dataclass(frozen=True)
class GeneratingTuple:
    """Ordered generating set ``(g1, ..., gn)`` of a group; repeats allowed.

    Generation is verified by closure for finite groups.  For infinite
    engines the caller must vouch for it with ``trusted=True`` (the curated
    factories do).
    """

    group: Group
    elements: tuple
    trusted: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise NotGenerating("a generating tuple needs at least one component")
        self.group.check(*self.elements)
        if self.group.finite:
            if not generates(self.group, self.elements):
                names = ", ".join(self.group.format(g) for g in self.elements)
                raise NotGenerating(f"({names}) does not generate {self.group.name}")
        elif not self.trusted:
            raise NotGenerating(
                f"cannot verify generation in {self.group!r}; pass trusted=True for a known generating tuple"
            )

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def format(self) -> list[str]:
        return [self.group.format(g) for g in self.elements]


def generating_tuples(G: FiniteGroup, n: int) -> Iterator[tuple]:
    """All generating n-tuples of ``G`` in lexicographic index order."""
    for tup in itertools.product(range(G.order), repeat=n):
        if generates(G, tup):
            yield tup


# -- balls and enumeration -------------------------------------------------------


def spheres(gens: GeneratingTuple, radius: int) -> Iterator[list]:
    """Yield the spheres of radius 0..radius in discovery order."""
    G = gens.group
    letters = []
    for g in gens:
        letters += [g, G._inv(g)]
    seen = {G.identity}
    layer = [G.identity]
    yield layer
    for _ in range(radius):
        nxt = []
        for w in layer:
            for s in letters:
                v = G._mul(w, s)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        layer = nxt
        yield layer


def ball(gens: GeneratingTuple, radius: int) -> list:
    """Elements of word length <= radius, deduplicated, in discovery order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return [w for layer in spheres(gens, radius) for w in layer]


def enumerate_all(G: Group) -> list:
    if not G.finite:
        raise InfiniteGroupError(f"{G!r} is infinite; cannot enumerate all elements")
    return G.elements()


# -- derived series and inner automorphisms ----------------------------------------


@dataclass(frozen=True)
class DerivedSeriesReport:
    k: int
    levels: tuple  # levels[0] = G, levels[j] = G^(j)

    @property
    def orders(self) -> tuple:
        return tuple(len(level) for level in self.levels)

    def level(self, j: int) -> frozenset:
        return self.levels[j]


def commutator_subgroup(G: FiniteGroup, H: Iterable) -> frozenset:
    H = sorted(H)
    comms = {G.commutator(a, b) for a in H for b in H}
    return subgroup_closure(G, sorted(comms))


def derived_series(G: Group, k: int) -> DerivedSeriesReport:
    if not G.finite:
        raise InfiniteGroupError("derived series is only computed for finite engines")
    if k < 1:
        raise ValueError("k must be positive")
    levels = [frozenset(G.elements())]
    for _ in range(k):
        levels.append(commutator_subgroup(G, levels[-1]))
    return DerivedSeriesReport(k, tuple(levels))


def inn_order(G: Group) -> int:
    """Number of distinct conjugation maps ``x -> g x g^-1``."""
    if not G.finite:
        raise InfiniteGroupError("inn_order needs a finite engine")
    elems = G.elements()
    maps = {tuple(G.conjugate(g, x) for x in elems) for g in elems}
    return len(maps)


def center(G: FiniteGroup) -> frozenset:
    elems = G.elements()
    return frozenset(z for z in elems if all(G._mul(z, x) == G._mul(x, z) for x in elems))


def extend_homomorphism(G: FiniteGroup, H: FiniteGroup, gens_g: Sequence, images: Sequence) -> dict | None:
    """Extend ``gens_g[i] -> images[i]`` to a homomorphism G -> H, or None.

    Works by walking the Cayley graph of ``G`` and checking consistency on
    every edge.
    """
    phi = {G.identity: H.identity}
    frontier = [G.identity]
    pairs = list(zip(gens_g, images)) + [(G._inv(g), H._inv(h)) for g, h in zip(gens_g, images)]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in pairs:
                y, v = G._mul(x, g), H._mul(phi[x], h)
                if y in phi:
                    if phi[y] != v:
                        return None
                else:
                    phi[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(phi) != G.order:
        return None
    return phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, gens_g: Sequence | None = None) -> dict | None:
    """Brute-force isomorphism search; images of ``gens_g`` tried in lex order."""
    if G.order != H.order:
        return None
    gens_g = tuple(gens_g) if gens_g is not None else G.standard_generators().elements
    for images in itertools.product(range(H.order), repeat=len(gens_g)):
        phi = extend_homomorphism(G, H, gens_g, images)
        if phi is not None and len(set(phi.values())) == H.order:
            return phi
    return None
