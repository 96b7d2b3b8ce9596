import itertools

import pytest
from hypothesis import given, strategies as st

from configeq import corpus
from configeq.configurations import (
    BALL_OBSERVED, ConfigurationSet, canonical_form, coarsen_config_set, configuration_of,
    configuration_set_ball, configuration_set_finite, relabel_config_set, sets_equal_up_to_relabel,
)
from configeq.errors import InfiniteGroupError
from configeq.golden import dinf_partition, free_group_partition
from configeq.groups import FreeGroup, GeneratingTuple, compose_perms, generating_tuples
from configeq.partitions import BallPartition, BlockMergeMap, ExplicitPartition, coarsen

from test_partitions import merges, normalise, partitions


def cs(n, m, configs):
    return ConfigurationSet(n, m, tuple(configs))


def perm_oracle_con(G, gens, labels):
    # recompute Con(g, E) on actual permutations, bypassing the table
    perms = G.permutations
    index = {p: i for i, p in enumerate(perms)}
    out = set()
    for x in perms:
        out.add((labels[index[x]],) + tuple(labels[index[compose_perms(perms[g], x)]] for g in gens))
    return frozenset(out)


def test_z2_and_z4_examples():
    Z2, Z4 = corpus.get("Z2"), corpus.get("Z4")
    P2 = ExplicitPartition.from_blocks(Z2, [[0], [1]])
    assert configuration_set_finite(Z2, Z2.standard_generators(), P2).configurations == ((1, 2), (2, 1))
    P4 = ExplicitPartition.from_blocks(Z4, [[0], [1, 2, 3]])
    got = configuration_set_finite(Z4, GeneratingTuple(Z4, (1,)), P4)
    assert set(got.configurations) == {(1, 2), (2, 2), (2, 1)}


def test_trivial_partition_gives_one_configuration():
    S3 = corpus.get("S3")
    got = configuration_set_finite(S3, S3.standard_generators(), ExplicitPartition.trivial(S3))
    assert got.configurations == ((1, 1, 1),)


def test_configuration_of_uses_left_translates():
    S3 = corpus.get("S3")
    a, b = S3.parse("(1 2)"), S3.parse("(1 3)")
    gens = GeneratingTuple(S3, (a, b))
    P = ExplicitPartition(S3, [1, 2, 3, 4, 5, 6])  # discrete
    x = S3.parse("(1 2 3)")
    assert configuration_of(x, gens, P) == (P.label(x), P.label(S3.multiply(a, x)), P.label(S3.multiply(b, x)))


@given(st.sampled_from(["S3", "D4", "S4"]).flatmap(
    lambda name: st.tuples(st.just(corpus.get(name)), st.lists(st.integers(1, 3), min_size=corpus.get(name).order,
                                                              max_size=corpus.get(name).order))))
def test_con_matches_permutation_oracle(data):
    G, raw = data
    labels = normalise(raw)
    gens = G.standard_generators()
    got = configuration_set_finite(G, gens, ExplicitPartition(G, labels))
    assert frozenset(got.configurations) == perm_oracle_con(G, gens.elements, labels)


def test_infinite_engines_refuse_exact_sets():
    F = FreeGroup(2)
    with pytest.raises(InfiniteGroupError):
        configuration_set_finite(F, F.standard_generators(), dinf_partition().part)


def test_document_roundtrip():
    a = cs(1, 2, [(2, 1), (1, 2)])
    assert a.configurations == ((1, 2), (2, 1))
    assert ConfigurationSet.from_document(a.to_document()) == a
    with pytest.raises(ValueError):
        cs(1, 2, [(1, 3)])


# -- coarsening lemma ------------------------------------------------------------


@given(partitions().flatmap(lambda P: st.tuples(st.just(P), merges(P.m))), st.data())
def test_coarsening_commutes_with_con(pm, data):
    P, merge = pm
    G = P.group
    n = data.draw(st.integers(1, 2))
    gens = GeneratingTuple(G, data.draw(st.sampled_from(list(generating_tuples(G, n)) or [G.standard_generators().elements])))
    fine = configuration_set_finite(G, gens, P)
    assert coarsen_config_set(fine, merge).same_set(configuration_set_finite(G, gens, coarsen(P, merge)))


# -- relabeling ------------------------------------------------------------------


def test_relabel_examples():
    a = cs(1, 2, [(1, 2), (2, 2), (2, 1)])
    b = cs(1, 2, [(1, 1), (1, 2), (2, 1)])
    # the swap 1 <-> 2 carries a onto b
    assert sets_equal_up_to_relabel(a, b) == (2, 1)
    assert sets_equal_up_to_relabel(a, a) == (1, 2)
    # no bijection: label 1 never repeats in c, but 1 -> 1 in d
    c = cs(1, 2, [(1, 2), (2, 1)])
    d = cs(1, 2, [(1, 1), (1, 2)])
    assert sets_equal_up_to_relabel(c, d) is None
    assert sets_equal_up_to_relabel(c, cs(1, 3, [(1, 2), (2, 1)])) is None


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=12),
       st.permutations([1, 2, 3, 4]))
def test_relabel_invariance(configs, perm):
    used = sorted({v for c in configs for v in c})
    m = len(used)
    squeeze = {v: k for k, v in enumerate(used, 1)}
    a = cs(2, m, [tuple(squeeze[v] for v in c) for c in configs])
    sub = [p for p in perm if p <= m]
    b = relabel_config_set(a, sub)
    found = sets_equal_up_to_relabel(a, b)
    assert found is not None and relabel_config_set(a, found).same_set(b)
    assert canonical_form(a, 2, m) == canonical_form(b, 2, m)


def test_canonical_form_is_complete_on_small_sets():
    # brute force over all bijections as the oracle
    rng = itertools.product([1, 2, 3], repeat=2)
    configs = list(rng)
    for size in (2, 3):
        for sub in itertools.combinations(configs, size):
            if {v for c in sub for v in c} != {1, 2, 3}:
                continue
            a = cs(1, 3, sub)
            for other in itertools.combinations(configs, size):
                if {v for c in other for v in c} != {1, 2, 3}:
                    continue
                b = cs(1, 3, other)
                brute = any(relabel_config_set(a, p).same_set(b) for p in itertools.permutations([1, 2, 3]))
                assert (canonical_form(a, 1, 3) == canonical_form(b, 1, 3)) == brute
                assert (sets_equal_up_to_relabel(a, b) is not None) == brute


# -- balls -----------------------------------------------------------------------


def test_dinf_ball_saturates():
    c = dinf_partition()
    got = configuration_set_ball(c.group, c.gens, c.part, 8)
    assert got.exactness == BALL_OBSERVED and got.saturated and got.radius <= 8
    assert (1, 2, 3) in got
    assert got.configurations == ((1, 2, 3), (2, 1, 5), (3, 4, 1), (4, 3, 5), (4, 5, 5), (5, 4, 2), (5, 4, 4))


def test_trivial_ball_partition_saturates_at_zero():
    F = FreeGroup(2)
    part = coarsen(free_group_partition(2).part, BlockMergeMap((1,) * 5))
    got = configuration_set_ball(F, F.standard_generators(), part, 5)
    assert got.configurations == ((1, 1, 1),) and got.saturated and got.radius == 0


def test_ball_skips_points_outside_domain():
    F = FreeGroup(1)
    gens = F.standard_generators()
    part = BallPartition(F, {(): 1, (1,): 2, (-1,): 2}, radius=1)
    got = configuration_set_ball(F, gens, part, 3)
    assert got.configurations == ((1, 2), (2, 1))  # base f1 leaves the domain; f1^-1 does not
    with pytest.raises(ValueError):
        configuration_set_ball(F, gens, part, -1)


def test_ball_agrees_with_exact_on_finite_group():
    S3 = corpus.get("S3")
    gens = S3.standard_generators()
    P = ExplicitPartition(S3, (1, 2, 2, 3, 1, 3))
    assert configuration_set_ball(S3, gens, P, 6).same_set(configuration_set_finite(S3, gens, P))
