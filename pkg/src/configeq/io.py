"""Group, partition and generator documents (JSON) and their inline shorthands."""
from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from . import corpus
from .errors import ParseError
from .golden import dinf_partition, free_group_partition, znf_sigma_candidate
from .groups import (
    FiniteGroup, FreeAbelianGroup, FreeGroup, GeneratingTuple, Group, InfiniteDihedralGroup, ZnTimesFinite,
    from_permutations, parse_cycles,
)
from .partitions import BallPartition, ExplicitPartition, Partition

GROUP_KINDS = ("finite-table", "permutation", "free", "free-abelian", "product-zn-f", "dihedral-infinite", "corpus")
PARTITION_KINDS = ("explicit-finite", "builtin-symbolic", "ball-explicit")
SYMBOLIC_NAMES = ("free-first-letter", "dinf-five-block", "znf-sign-atoms")


_FLAT_ARRAY = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dumps(doc) -> str:
    """Stable rendering: insertion key order, two-space indent, final newline.

    Arrays of scalars are kept on one line.
    """
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    text = _FLAT_ARRAY.sub(lambda mt: "[" + re.sub(r",\s+", ", ", mt.group(1)) + "]", text)
    return text + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _load_json(source: str):
    path = Path(source)
    if not path.exists():
        raise ParseError(f"no such file: {source}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from None


def _need(doc: dict, key: str, kind: str):
    if key not in doc:
        raise ParseError(f"{kind} document is missing {key!r}")
    return doc[key]


# -- groups ----------------------------------------------------------------------


def group_from_document(doc: dict) -> Group:
    if not isinstance(doc, dict):
        raise ParseError("group document must be an object")
    kind = _need(doc, "kind", "group")
    name = doc.get("name", "G")
    if kind == "corpus":
        return corpus_group(_need(doc, "name", kind))
    if kind == "finite-table":
        names = [str(s) for s in _need(doc, "elements", kind)]
        index = {s: i for i, s in enumerate(names)}

        def ref(v):
            if isinstance(v, int):
                return v
            if str(v) not in index:
                raise ParseError(f"table entry {v!r} is not an element")
            return index[str(v)]

        table = [[ref(v) for v in row] for row in _need(doc, "table", kind)]
        identity = ref(doc.get("identity", 0))
        gens = doc.get("generators")
        return FiniteGroup(names, table, identity, name=name,
                           generators=None if gens is None else [ref(g) for g in gens])
    if kind == "permutation":
        degree = int(_need(doc, "degree", kind))
        gens = [parse_cycles(g, degree) if isinstance(g, str) else tuple(v - 1 for v in g)
                for g in _need(doc, "generators", kind)]
        return from_permutations(degree, gens, name=name)
    if kind == "free":
        return FreeGroup(int(_need(doc, "rank", kind)))
    if kind == "free-abelian":
        return FreeAbelianGroup(int(_need(doc, "rank", kind)))
    if kind == "product-zn-f":
        F = group_from_document(_need(doc, "finite", kind))
        if not F.finite:
            raise ParseError("the finite factor of product-zn-f must be finite")
        return ZnTimesFinite(int(_need(doc, "rank", kind)), F)
    if kind == "dihedral-infinite":
        return InfiniteDihedralGroup()
    raise ParseError(f"unknown group kind {kind!r}; expected one of {', '.join(GROUP_KINDS)}")


def corpus_group(name: str) -> FiniteGroup:
    if name not in corpus.NAMES:
        raise ParseError(f"unknown corpus group {name!r}; known: {', '.join(corpus.NAMES)}")
    return corpus.get(name)


def load_group(source: str) -> Group:
    """A JSON file, or one of ``corpus:NAME``, ``free:N``, ``free-abelian:N``, ``dinf``."""
    head, _, tail = source.partition(":")
    if head == "corpus" and tail:
        return corpus_group(tail)
    if head in ("free", "free-abelian") and tail:
        if not tail.isdigit() or int(tail) < 1:
            raise ParseError(f"bad rank in {source!r}")
        return FreeGroup(int(tail)) if head == "free" else FreeAbelianGroup(int(tail))
    if source == "dinf":
        return InfiniteDihedralGroup()
    return group_from_document(_load_json(source))


def parse_gens(G: Group, text: str | None) -> GeneratingTuple:
    """``;``-separated element names; None gives the engine's standard tuple."""
    if text is None:
        return G.standard_generators()
    items = [t for t in (s.strip() for s in text.split(";")) if t]
    if not items:
        raise ParseError("empty generator list")
    return GeneratingTuple(G, tuple(G.parse(t) for t in items), trusted=not G.finite)


# -- partitions ------------------------------------------------------------------


def _element(G: Group, v):
    if isinstance(v, int) and G.finite:
        if not G.contains(v):
            raise ParseError(f"element index {v} out of range")
        return v
    return G.parse(str(v))


def symbolic_partition(G: Group, name: str, params: dict) -> Partition:
    if name == "free-first-letter":
        c = free_group_partition(int(params.get("rank", getattr(G, "rank", 2))))
    elif name == "dinf-five-block":
        c = dinf_partition()
    elif name == "znf-sign-atoms":
        F = getattr(G, "F", None)
        if F is None:
            F = corpus_group(params.get("finite", "Z2"))
        c = znf_sigma_candidate(int(params.get("rank", getattr(G, "rank", 1))), F)
    else:
        raise ParseError(f"unknown symbolic partition {name!r}; expected one of {', '.join(SYMBOLIC_NAMES)}")
    if c.group.kind != G.kind or getattr(c.group, "rank", None) != getattr(G, "rank", None):
        raise ParseError(f"symbolic partition {name!r} does not live on {G!r}")
    return c.part


def partition_from_document(G: Group, doc: dict) -> Partition:
    if not isinstance(doc, dict):
        raise ParseError("partition document must be an object")
    kind = _need(doc, "kind", "partition")
    if kind == "explicit-finite":
        if not G.finite:
            raise ParseError("explicit-finite partitions need a finite group")
        blocks = [[_element(G, v) for v in block] for block in _need(doc, "blocks", kind)]
        try:
            return ExplicitPartition.from_blocks(G, blocks)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if kind == "builtin-symbolic":
        return symbolic_partition(G, _need(doc, "name", kind), doc.get("params", {}))
    if kind == "ball-explicit":
        assignment = {_element(G, x): int(k) for x, k in _need(doc, "assignment", kind)}
        try:
            return BallPartition(G, assignment, doc.get("radius"))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown partition kind {kind!r}; expected one of {', '.join(PARTITION_KINDS)}")


def load_partition(G: Group, source: str) -> Partition:
    """A JSON file, ``blocks:a,b|c,d``, ``trivial``, ``discrete`` or ``builtin:NAME``."""
    if source == "trivial":
        return partition_from_document(G, {"kind": "explicit-finite", "blocks": [G.elements()]})
    if source == "discrete":
        return partition_from_document(G, {"kind": "explicit-finite", "blocks": [[x] for x in G.elements()]})
    if source.startswith("blocks:"):
        blocks = [[t.strip() for t in b.split(",") if t.strip()] for b in source[7:].split("|")]
        return partition_from_document(G, {"kind": "explicit-finite", "blocks": blocks})
    if source.startswith("builtin:"):
        return symbolic_partition(G, source[8:], {})
    return partition_from_document(G, _load_json(source))


def partition_document(part: ExplicitPartition) -> dict:
    G = part.group
    return {"kind": "explicit-finite", "blocks": [[G.format(x) for x in sorted(b)] for b in part.blocks]}


def read_text(source: str) -> str:
    """File contents for digests; inline specs digest as themselves."""
    path = Path(source)
    return path.read_text() if path.is_file() else source
