"""Acceptance criteria 1-10, each at its stated bound and time limit.

A pass/fail line per criterion is printed in the terminal summary.
"""
import json
import random
import time

import pytest

from configeq import corpus
from configeq.cli import main
from configeq.configurations import coarsen_config_set, configuration_set_ball, configuration_set_finite
from configeq.golden import (
    dinf_partition, free_block_absorption_check, free_group_partition, verify_block_predicates,
    verify_translation_relations,
)
from configeq.groups import (
    FreeAbelianGroup, FreeGroup, GeneratingTuple, InfiniteDihedralGroup, ZnTimesFinite, derived_series,
    find_isomorphism, generating_tuples, inn_order,
)
from configeq.localhom import check_group_law, parse_law
from configeq.partitions import BlockMergeMap, ExplicitPartition, coarsen
from configeq.search import strong_contained_finite, translation_violations, verify_certificate
from configeq.words import (
    RepresentativePair, all_pairs, concat, derivation_form_pairs, evaluate, inverse_pair, is_first_derivation_form,
)

SEED = 20240601


def cli_doc(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def center_oracle_inn(G):
    t = G.table
    z = sum(all(t[a][x] == t[x][a] for x in range(G.order)) for a in range(G.order))
    return G.order // z


# -- 1 ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "exact small configuration sets (< 1 s)")
def test_c1_exact_small_sets(capsys):
    t0 = time.perf_counter()
    doc = cli_doc(capsys, "con", "corpus:Z2", "blocks:0|1", "--gens", "1")
    assert doc["configurations"] == [[1, 2], [2, 1]]
    doc = cli_doc(capsys, "con", "corpus:Z4", "blocks:0|1,2,3", "--gens", "1")
    assert {tuple(c) for c in doc["configurations"]} == {(1, 2), (2, 2), (2, 1)}
    assert doc["exactness"] == "exact"
    assert time.perf_counter() - t0 < 1.0


# -- 2 ---------------------------------------------------------------------------


@pytest.mark.criterion(2, "non-isomorphic groups separated (< 5 min each)")
@pytest.mark.parametrize("G,H,n,m", [("Z4", "V4", 2, 4), ("S3", "Z6", 2, 3)])
def test_c2_not_contained(capsys, G, H, n, m):
    t0 = time.perf_counter()
    doc = cli_doc(capsys, "contain", f"corpus:{G}", f"corpus:{H}", "--max-n", str(n), "--max-m", str(m))
    assert doc["verdict"] == "not-contained"
    assert time.perf_counter() - t0 < 300


# -- 3 and 6 ---------------------------------------------------------------------


@pytest.fixture(scope="module")
def s3_strong():
    S3t, S3 = corpus.get("S3t"), corpus.get("S3")
    out = []
    t0 = time.perf_counter()
    for gg in generating_tuples(S3t, 2):
        phi = find_isomorphism(S3t, S3, gg)
        if phi is None:
            continue
        g = GeneratingTuple(S3t, gg)
        h = GeneratingTuple(S3, tuple(phi[x] for x in gg))
        out.append((g, h, strong_contained_finite(S3t, S3, g, h, 4)))
    return out, time.perf_counter() - t0


@pytest.mark.criterion(3, "S3 table vs permutations: strong containment, m <= 4 (< 2 min)")
def test_c3_isomorphism_sanity(s3_strong):
    results, secs = s3_strong
    assert results
    expected = 1 + 31 + 90 + 65  # partitions of a 6-set into 1..4 blocks
    for g, h, cert in results:
        assert cert.contained
        assert len(cert.matches) == expected
        assert verify_certificate(cert) == []
    assert secs < 120


@pytest.mark.criterion(6, "translation lemma on every criterion-3 match")
def test_c6_translation_lemma(s3_strong):
    results, _ = s3_strong
    checked = 0
    for g, h, cert in results:
        for mt in cert.matches:
            E = ExplicitPartition(g.group, mt["E"])
            F = ExplicitPartition(h.group, mt["F"])
            assert E.m <= 4
            assert translation_violations(g.group, g, E, h.group, h, F) == []
            checked += 1
    assert checked > 0


# -- 4 ---------------------------------------------------------------------------


ENGINES = {
    "finite-table": lambda: corpus.get("S3t").standard_generators(),
    "permutation": lambda: corpus.get("S4").standard_generators(),
    "free": lambda: FreeGroup(2).standard_generators(),
    "free-abelian": lambda: FreeAbelianGroup(3).standard_generators(),
    "product-zn-f": lambda: ZnTimesFinite(2, corpus.get("Z3")).standard_generators(),
    "dihedral-infinite": lambda: InfiniteDihedralGroup().standard_generators(),
}


def random_pair(rng, n):
    k = rng.randint(0, 12)
    return RepresentativePair(n, tuple(rng.randint(1, n) for _ in range(k)), tuple(rng.choice((1, -1)) for _ in range(k)))


@pytest.mark.criterion(4, "word-calculus laws, 1000 seeded pairs per engine")
@pytest.mark.parametrize("engine", sorted(ENGINES))
def test_c4_word_laws(engine):
    gens = ENGINES[engine]()
    G, n = gens.group, len(gens)
    rng = random.Random(f"{SEED}-{engine}")
    failures = 0
    for _ in range(1000):
        p, q = random_pair(rng, n), random_pair(rng, n)
        if evaluate(concat(p, q), gens) != G.multiply(evaluate(p, gens), evaluate(q, gens)):
            failures += 1
        if evaluate(inverse_pair(p), gens) != G.invert(evaluate(p, gens)):
            failures += 1
    assert failures == 0


# -- 5 ---------------------------------------------------------------------------


@pytest.mark.criterion(5, "coarsening lemma on 200 seeded instances")
def test_c5_coarsening_lemma():
    rng = random.Random(SEED)
    groups = corpus.small_groups(12)
    for _ in range(200):
        G = rng.choice(groups)
        tuples = []
        for n in range(rng.randint(1, 2), 4):
            tuples = list(generating_tuples(G, n))
            if tuples:
                break
        gens = GeneratingTuple(G, rng.choice(tuples))
        s = rng.randint(1, min(5, G.order))
        labels = [rng.randint(1, s) for _ in range(G.order)]
        first = {}
        labels = [first.setdefault(v, len(first) + 1) for v in labels]
        fine = ExplicitPartition(G, labels)
        r = rng.randint(1, fine.m)
        images = [rng.randint(1, r) for _ in range(fine.m)]
        first = {}
        merge = BlockMergeMap(tuple(first.setdefault(v, len(first) + 1) for v in images))
        coarse = coarsen(fine, merge)
        lhs = coarsen_config_set(configuration_set_finite(G, gens, fine), merge)
        rhs = configuration_set_finite(G, gens, coarse)
        assert lhs.same_set(rhs)


# -- 7 ---------------------------------------------------------------------------


@pytest.mark.criterion(7, "golden families: translations, absorption, D_inf blocks (< 10 s)")
def test_c7_golden_families():
    t0 = time.perf_counter()
    for n in (2, 3):
        rep = verify_translation_relations(free_group_partition(n), 8)
        assert rep.checked > 0 and rep.violation_count == 0
    rep = free_block_absorption_check(2, 6)
    assert rep.checked == sum(4 * 3 ** (k - 1) for k in range(1, 7)) and rep.violation_count == 0
    c = dinf_partition()
    assert verify_block_predicates(c, 10).ok
    cs = configuration_set_ball(c.group, c.gens, c.part, 8, stability_window=2)
    assert cs.saturated and cs.radius <= 8 and (1, 2, 3) in cs
    assert time.perf_counter() - t0 < 10


# -- 8 ---------------------------------------------------------------------------


@pytest.mark.criterion(8, "derivation forms land in the derived series of S4")
def test_c8_derived_forms():
    S4 = corpus.get("S4")
    gens = S4.standard_generators()
    assert len(gens) == 2
    series = derived_series(S4, 2)
    k1 = list(derivation_form_pairs(2, 1, 100))
    k2 = list(derivation_form_pairs(2, 2, 20))
    assert len(set(k1)) == 100 and len(set(k2)) == 20
    assert all(evaluate(p, gens) in series.level(1) for p in k1)
    assert all(evaluate(p, gens) in series.level(2) for p in k2)
    Zn = FreeAbelianGroup(2).standard_generators()
    for p in all_pairs(2, 6):
        assert is_first_derivation_form(p) == (evaluate(p, Zn) == (0, 0))


# -- 9 ---------------------------------------------------------------------------


@pytest.mark.criterion(9, "abelian law and Inn orders")
def test_c9_laws_and_inn():
    law = parse_law("abelian")
    assert check_group_law(corpus.get("Z6"), law).ok
    S3 = corpus.get("S3")
    res = check_group_law(S3, law)
    assert not res.ok
    x, y = res.witness
    assert S3.multiply(x, y) != S3.multiply(y, x)
    for name, want in (("Z4", 1), ("S3", 6), ("D4", 4)):
        G = corpus.get(name)
        assert inn_order(G) == want == center_oracle_inn(G)


# -- 10 --------------------------------------------------------------------------


@pytest.mark.criterion(10, "criteria 1-2 documents identical with 1 vs 8 threads")
def test_c10_determinism(tmp_path):
    runs = [
        ["con", "corpus:Z2", "blocks:0|1", "--gens", "1"],
        ["con", "corpus:Z4", "blocks:0|1,2,3", "--gens", "1"],
        ["contain", "corpus:Z4", "corpus:V4", "--max-n", "2", "--max-m", "4"],
        ["contain", "corpus:S3", "corpus:Z6", "--max-n", "2", "--max-m", "3"],
    ]
    for i, argv in enumerate(runs):
        docs = []
        for threads in ("1", "8"):
            out = tmp_path / f"{i}-{threads}.json"
            assert main(["--threads", threads, *argv, "--out", str(out)]) == 0
            docs.append(out.read_bytes())
        assert docs[0] == docs[1]
