"""Bundled small groups used by tests, scripts and the CLI (``corpus:NAME``)."""
from __future__ import annotations

import itertools
from functools import lru_cache

from .groups import FiniteGroup, from_permutations, parse_cycles


def cyclic(n: int) -> FiniteGroup:
    """``Z_n`` with element ``i`` stored at index ``i``."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup([str(i) for i in range(n)], table, 0, name=f"Z{n}", generators=[1 % n])


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    """``G x H`` with pairs ordered lexicographically by index."""
    elems = list(itertools.product(range(G.order), range(H.order)))

    def op(a, b):
        return G.table[a[0]][b[0]], H.table[a[1]][b[1]]

    def fmt(a):
        return f"({G.names[a[0]]},{H.names[a[1]]})"

    return FiniteGroup.from_operation(elems, op, name=name or f"{G.name}x{H.name}", fmt=fmt)


def symmetric(n: int) -> FiniteGroup:
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.append(parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
    return from_permutations(n, gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return from_permutations(n, gens, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on the n-gon."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations(n, [rot, ref], name=f"D{n}")


def dihedral_table(n: int) -> FiniteGroup:
    """Order-``2n`` dihedral group as ``(r, s)`` words, built from the rule
    ``r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)``."""
    elems = [(a, b) for b in range(2) for a in range(n)]

    def op(x, y):
        a, b = x
        c, d = y
        return (a + (c if b == 0 else -c)) % n, (b + d) % 2

    def fmt(x):
        a, b = x
        s = ("r" if a == 1 else f"r{a}" if a else "") + ("s" if b else "")
        return s or "e"

    return FiniteGroup.from_operation(elems, op, name=f"D{n}t", fmt=fmt, generators=[(1, 0), (0, 1)])


def quaternion() -> FiniteGroup:
    """``Q8`` from the unit quaternion product rule."""
    units = ["1", "i", "j", "k"]
    prod = {
        ("1", u): (1, u) for u in units
    }
    prod.update({(u, "1"): (1, u) for u in units})
    prod.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for s in (1, -1) for u in units]

    def op(x, y):
        sign, u = prod[(x[1], y[1])]
        return x[0] * y[0] * sign, u

    def fmt(x):
        return ("" if x[0] == 1 else "-") + x[1]

    return FiniteGroup.from_operation(elems, op, name="Q8", fmt=fmt, generators=[(1, "i"), (1, "j")])


def dicyclic3() -> FiniteGroup:
    """``Dic3 = Z3 : Z4`` (order 12), ``(a, b)(c, d) = (a + (-1)^b c, b + d)``."""
    elems = [(a, b) for b in range(4) for a in range(3)]

    def op(x, y):
        a, b = x
        c, d = y
        return (a + (c if b % 2 == 0 else -c)) % 3, (b + d) % 4

    return FiniteGroup.from_operation(
        elems, op, name="Dic3", fmt=lambda x: f"a{x[0]}b{x[1]}", generators=[(1, 0), (0, 1)]
    )


_BUILDERS = {
    "Z1": lambda: cyclic(1),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "V4": lambda: direct_product(cyclic(2), cyclic(2), name="V4"),
    "Z5": lambda: cyclic(5),
    "Z6": lambda: cyclic(6),
    "S3": lambda: symmetric(3),
    "S3t": lambda: dihedral_table(3),
    "Z7": lambda: cyclic(7),
    "Z8": lambda: cyclic(8),
    "Z2xZ4": lambda: direct_product(cyclic(2), cyclic(4)),
    "Z2^3": lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="Z2^3"),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "Z9": lambda: cyclic(9),
    "Z3xZ3": lambda: direct_product(cyclic(3), cyclic(3)),
    "Z10": lambda: cyclic(10),
    "D5": lambda: dihedral(5),
    "Z11": lambda: cyclic(11),
    "Z12": lambda: cyclic(12),
    "Z2xZ6": lambda: direct_product(cyclic(2), cyclic(6)),
    "D6": lambda: dihedral(6),
    "A4": lambda: alternating(4),
    "Dic3": dicyclic3,
    "S4": lambda: symmetric(4),
}

NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get(name: str) -> FiniteGroup:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus group {name!r}; known: {', '.join(NAMES)}") from None


def small_groups(max_order: int = 12) -> list[FiniteGroup]:
    return [G for G in map(get, NAMES) if G.order <= max_order]
