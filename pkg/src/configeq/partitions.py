"""Finite partitions, finite sigma-algebras and block merge maps.

Labels are 1-based throughout (blocks ``E_1..E_m``).
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import DomainError, InfiniteGroupError
from .groups import Group


class Partition:
    """A labeling of a group's elements by blocks ``1..m``."""

    kind = "abstract"
    group: Group
    m: int

    def label(self, x) -> int:
        raise NotImplementedError

    def in_domain(self, x) -> bool:
        return True


class ExplicitPartition(Partition):
    """Partition of a finite group, stored as one label per element index."""

    kind = "explicit-finite"

    def __init__(self, group: Group, labels: Sequence[int]):
        if not group.finite:
            raise InfiniteGroupError("explicit partitions need a finite group")
        labels = tuple(int(v) for v in labels)
        if len(labels) != group.order:
            raise ValueError(f"expected {group.order} labels, got {len(labels)}")
        m = max(labels)
        if min(labels) < 1 or set(labels) != set(range(1, m + 1)):
            raise ValueError("labels must cover 1..m with every block nonempty")
        self.group = group
        self.labels = labels
        self.m = m

    @classmethod
    def from_blocks(cls, group: Group, blocks: Iterable[Iterable]) -> ExplicitPartition:
        labels = [0] * group.order
        for k, block in enumerate(blocks, 1):
            block = list(block)
            if not block:
                raise ValueError(f"block {k} is empty")
            for x in block:
                group.check(x)
                if labels[x]:
                    raise ValueError(f"element {group.format(x)} lies in two blocks")
                labels[x] = k
        if not all(labels):
            raise ValueError("blocks do not cover the group")
        return cls(group, labels)

    @classmethod
    def trivial(cls, group: Group) -> ExplicitPartition:
        return cls(group, [1] * group.order)

    @property
    def blocks(self) -> tuple:
        out = [[] for _ in range(self.m)]
        for x, k in enumerate(self.labels):
            out[k - 1].append(x)
        return tuple(frozenset(b) for b in out)

    def label(self, x) -> int:
        return self.labels[x]

    def relabel(self, perm: Sequence[int]) -> ExplicitPartition:
        """New labels ``perm[old - 1]``; ``perm`` is a bijection on 1..m."""
        return ExplicitPartition(self.group, [perm[k - 1] for k in self.labels])

    def __eq__(self, other):
        return isinstance(other, ExplicitPartition) and other.group is self.group and other.labels == self.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        blocks = ["{" + ",".join(self.group.format(x) for x in sorted(b)) + "}" for b in self.blocks]
        return "ExplicitPartition(" + " ".join(blocks) + ")"


class SymbolicPartition(Partition):
    """Partition of a (typically infinite) group given by a total classifier."""

    kind = "builtin-symbolic"

    def __init__(self, group: Group, m: int, classify: Callable, name: str, params=None,
                 parent: SymbolicPartition | None = None, merge: BlockMergeMap | None = None):
        self.group = group
        self.m = m
        self._classify = classify
        self.name = name
        self.params = dict(params or {})
        self.parent = parent
        self.merge = merge

    def label(self, x) -> int:
        return self._classify(x)

    def __repr__(self):
        return f"SymbolicPartition({self.name}, m={self.m})"


class BallPartition(Partition):
    """Partition known only on an explicit finite domain (a ball)."""

    kind = "ball-explicit"

    def __init__(self, group: Group, assignment: dict, radius: int | None = None):
        self.group = group
        self.assignment = dict(assignment)
        self.radius = radius
        labels = set(self.assignment.values())
        self.m = max(labels)
        if min(labels) < 1 or labels != set(range(1, self.m + 1)):
            raise ValueError("labels must cover 1..m with every block nonempty")

    def label(self, x) -> int:
        try:
            return self.assignment[x]
        except KeyError:
            raise DomainError(f"{self.group.format(x)} lies outside the partition's domain") from None

    def in_domain(self, x) -> bool:
        return x in self.assignment


# -- merge maps ------------------------------------------------------------------


@dataclass(frozen=True)
class BlockMergeMap:
    """Surjection from fine labels ``1..s`` onto coarse labels ``1..r``."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if not self.images:
            raise ValueError("empty merge map")
        r = max(self.images)
        if min(self.images) < 1 or set(self.images) != set(range(1, r + 1)):
            raise ValueError(f"merge map {self.images} is not surjective onto 1..{r}")

    @property
    def s(self) -> int:
        return len(self.images)

    @property
    def r(self) -> int:
        return max(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    @classmethod
    def identity(cls, m: int) -> BlockMergeMap:
        return cls(tuple(range(1, m + 1)))

    def then(self, outer: BlockMergeMap) -> BlockMergeMap:
        """``outer o self``: apply this map first."""
        if outer.s != self.r:
            raise ValueError("merge maps are not composable")
        return BlockMergeMap(tuple(outer(v) for v in self.images))


def coarsen(fine: Partition, merge: BlockMergeMap) -> Partition:
    if merge.s != fine.m:
        raise ValueError(f"merge map has domain 1..{merge.s}, partition has {fine.m} blocks")
    if isinstance(fine, ExplicitPartition):
        return ExplicitPartition(fine.group, [merge(k) for k in fine.labels])
    if isinstance(fine, BallPartition):
        return BallPartition(fine.group, {x: merge(k) for x, k in fine.assignment.items()}, fine.radius)
    return SymbolicPartition(
        fine.group, merge.r, lambda x: merge(fine.label(x)), f"coarsen({fine.name})",
        parent=fine, merge=merge,
    )


def is_refinement(fine: Partition, coarse: Partition) -> BlockMergeMap | None:
    """The merge map taking ``fine`` onto ``coarse``, or None if some fine
    block straddles two coarse blocks."""
    if fine is coarse:
        return BlockMergeMap.identity(fine.m)
    if isinstance(coarse, SymbolicPartition) or isinstance(fine, SymbolicPartition):
        if isinstance(coarse, SymbolicPartition) and coarse.parent is fine:
            return coarse.merge
        raise NotImplementedError("refinement between symbolic partitions is only known for coarsenings")
    if fine.group is not coarse.group:
        raise ValueError("partitions live on different groups")
    if isinstance(fine, ExplicitPartition):
        pairs = zip(fine.labels, coarse.labels)
    else:
        if set(fine.assignment) != set(coarse.assignment):
            raise ValueError("ball partitions have different domains")
        pairs = ((k, coarse.assignment[x]) for x, k in fine.assignment.items())
    images = [0] * fine.m
    for k, c in pairs:
        if images[k - 1] == 0:
            images[k - 1] = c
        elif images[k - 1] != c:
            return None
    return BlockMergeMap(tuple(images))


def is_similar(fine_g: Partition, coarse_g: Partition, fine_h: Partition, coarse_h: Partition) -> bool:
    """Whether the two refinements merge their blocks in the same pattern."""
    mg = is_refinement(fine_g, coarse_g)
    mh = is_refinement(fine_h, coarse_h)
    if mg is None or mh is None:
        raise ValueError("similarity needs a refinement on both sides")
    return mg == mh


def restricted_growth_strings(N: int, m: int) -> Iterator[tuple]:
    """Set partitions of ``0..N-1`` into exactly ``m`` blocks as 1-based
    restricted growth strings, in lexicographic order."""
    if m < 1 or m > N:
        return
    a = [0] * N

    def rec(i, top):
        if N - i < m - top:
            return
        if i == N:
            yield tuple(v + 1 for v in a)
            return
        for v in range(min(top + 1, m)):
            a[i] = v
            yield from rec(i + 1, max(top, v + 1))

    a[0] = 0
    yield from rec(1, 1)


def partitions_of(group: Group, m: int) -> Iterator[ExplicitPartition]:
    for labels in restricted_growth_strings(group.order, m):
        yield ExplicitPartition(group, labels)


# -- sigma-algebras ----------------------------------------------------------------


@dataclass(frozen=True)
class SigmaAlgebra:
    """Finite sigma-algebra: its atom partition; members are unions of atoms,
    encoded as frozensets of atom labels."""

    atoms: Partition
    generators: tuple = field(default=(), compare=False)

    @property
    def n_atoms(self) -> int:
        return self.atoms.m

    def members(self) -> Iterator[frozenset]:
        labels = range(1, self.n_atoms + 1)
        for r in range(self.n_atoms + 1):
            for combo in itertools.combinations(labels, r):
                yield frozenset(combo)

    def member_elements(self, member: frozenset) -> frozenset:
        if not isinstance(self.atoms, ExplicitPartition):
            raise InfiniteGroupError("member elements are only listed for finite groups")
        return frozenset(x for x, k in enumerate(self.atoms.labels) if k in member)


def generated_sigma_algebra(sets: Sequence[Iterable], group: Group) -> SigmaAlgebra:
    """Atoms are the nonempty cells of the common refinement of ``sets``,
    labeled in order of their first element."""
    if not group.finite:
        raise InfiniteGroupError("generated sigma-algebras are computed for finite groups only")
    sets = [frozenset(s) for s in sets]
    for s in sets:
        group.check(*s)
    signature_label = {}
    labels = []
    for x in group.elements():
        sig = tuple(x in s for s in sets)
        labels.append(signature_label.setdefault(sig, len(signature_label) + 1))
    return SigmaAlgebra(ExplicitPartition(group, labels), tuple(sets))


def atoms(sa: SigmaAlgebra) -> Partition:
    return sa.atoms


def sigma_algebra_of(part: Partition) -> SigmaAlgebra:
    return SigmaAlgebra(part)
