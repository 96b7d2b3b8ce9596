import itertools

import pytest
from hypothesis import given, strategies as st

from configeq import corpus
from configeq.errors import InfiniteGroupError, InvalidTable, NotGenerating, ParseError
from configeq.groups import (
    FiniteGroup, FreeAbelianGroup, FreeGroup, GeneratingTuple, InfiniteDihedralGroup, ZnTimesFinite, ball,
    center, derived_series, extend_homomorphism, find_isomorphism, from_permutations, generates,
    generating_tuples, inn_order, parse_cycles, subgroup_closure,
)


def brute_center_order(G):
    # oracle: |Z(G)| straight from the table, no group methods
    t = G.table
    return sum(all(t[z][x] == t[x][z] for x in range(G.order)) for z in range(G.order))


# -- finite tables ---------------------------------------------------------------


def test_z2_table_accepted():
    G = FiniteGroup(["0", "1"], [[0, 1], [1, 0]], name="Z2")
    assert G.order == 2 and G.meta["associativity_checked"]
    assert G.multiply(1, 1) == 0 and G.invert(1) == 1


@pytest.mark.parametrize("table", [
    [[0, 0], [1, 0]],  # row not a permutation
    [[0, 1], [0, 1]],  # column repeats
])
def test_bad_tables_rejected(table):
    with pytest.raises(InvalidTable, match="invalid multiplication table"):
        FiniteGroup(["a", "b"], table)


def test_non_associative_latin_square_rejected():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InvalidTable, match="not associative"):
        FiniteGroup("abcde", table)


def test_element_checks():
    G = corpus.get("Z3")
    with pytest.raises(ValueError):
        G.multiply(0, 7)
    with pytest.raises(ParseError):
        G.parse("nope")


@pytest.mark.parametrize("name", corpus.NAMES)
def test_corpus_groups_are_groups(name):
    G = corpus.get(name)
    assert G.meta["associativity_checked"]
    assert G.standard_generators().elements
    assert subgroup_closure(G, G.standard_generators()) == frozenset(G.elements())


def test_corpus_orders():
    expected = {"Z1": 1, "V4": 4, "S3": 6, "S3t": 6, "D4": 8, "Q8": 8, "A4": 12, "Dic3": 12, "S4": 24}
    for name, n in expected.items():
        assert corpus.get(name).order == n


def test_permutation_presentation():
    S3 = from_permutations(3, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)], name="S3")
    assert S3.order == 6
    assert S3.format(S3.identity) == "e"
    a, b = S3.parse("(1 2)"), S3.parse("(1 3)")
    assert S3.format(S3.multiply(a, b)) in ("(1 2 3)", "(1 3 2)")


# -- generation ------------------------------------------------------------------


def test_generating_tuple_rejects_non_generators():
    V4 = corpus.get("V4")
    with pytest.raises(NotGenerating):
        GeneratingTuple(V4, (1,))


def test_generating_tuples_allow_repeats_and_identity():
    Z2 = corpus.get("Z2")
    assert list(generating_tuples(Z2, 2)) == [(0, 1), (1, 0), (1, 1)]


def test_generating_tuples_match_brute_force():
    G = corpus.get("S3")
    brute = [t for t in itertools.product(range(6), repeat=2)
             if len(subgroup_closure(G, t)) == 6]
    assert list(generating_tuples(G, 2)) == brute


def test_infinite_tuples_need_trust():
    F = FreeGroup(2)
    with pytest.raises(NotGenerating):
        GeneratingTuple(F, ((1,), (2,)))
    assert len(F.standard_generators()) == 2


# -- infinite engines ------------------------------------------------------------


free_words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12).map(
    lambda ls: FreeGroup(2).parse(" ".join(f"f{abs(s)}" + ("" if s > 0 else "^-1") for s in ls)))


@given(free_words, free_words, free_words)
def test_free_group_axioms(a, b, c):
    F = FreeGroup(2)
    assert F._mul(F._mul(a, b), c) == F._mul(a, F._mul(b, c))
    assert F._mul(a, F._inv(a)) == ()
    assert F.contains(F._mul(a, b))


@given(free_words)
def test_free_format_roundtrip(w):
    F = FreeGroup(2)
    assert F.parse(F.format(w)) == w


def test_free_ball_size():
    # sphere r has 2n(2n-1)^(r-1) reduced words
    for n, r in [(1, 4), (2, 3), (3, 2)]:
        expected = 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, r + 1))
        assert len(ball(FreeGroup(n).standard_generators(), r)) == expected


dinf_words = st.lists(st.sampled_from("xy"), max_size=10).map(
    lambda ls: InfiniteDihedralGroup().parse("".join(ls)))


@given(dinf_words, dinf_words, dinf_words)
def test_dinf_axioms(a, b, c):
    D = InfiniteDihedralGroup()
    assert D._mul(D._mul(a, b), c) == D._mul(a, D._mul(b, c))
    assert D._mul(a, D._inv(a)) == ""
    assert D.contains(D._mul(a, b))


def test_dinf_relations():
    D = InfiniteDihedralGroup()
    assert D.parse("xx") == "" and D.parse("xyyx") == ""
    assert D.format(D.parse("xyx")) == "xyx"
    # ball of radius r: 1 + 2r elements
    assert len(ball(D.standard_generators(), 5)) == 11


def test_free_abelian_and_product():
    A = FreeAbelianGroup(2)
    assert A.multiply((1, 2), (3, -2)) == (4, 0)
    assert A.parse("(1,-2)") == (1, -2)
    G = ZnTimesFinite(1, corpus.get("Z3"))
    gens = G.standard_generators()
    assert G.format(gens[0]) == "((1),0)"
    assert [G.format(g) for g in gens[1:]] == ["((0),1)", "((0),2)"]
    assert G.parse("((-3),2)") == ((-3,), 2)


def test_finite_only_operations():
    with pytest.raises(InfiniteGroupError):
        derived_series(FreeGroup(2), 1)
    with pytest.raises(InfiniteGroupError):
        inn_order(InfiniteDihedralGroup())


# -- derived series and Inn ------------------------------------------------------


def test_derived_series_orders():
    assert derived_series(corpus.get("S3"), 2).orders == (6, 3, 1)
    assert derived_series(corpus.get("S4"), 3).orders == (24, 12, 4, 1)
    assert derived_series(corpus.get("Z6"), 1).orders == (6, 1)
    assert derived_series(corpus.get("Q8"), 2).orders == (8, 2, 1)


@pytest.mark.parametrize("name", corpus.NAMES)
def test_inn_matches_center_oracle(name):
    G = corpus.get(name)
    assert inn_order(G) == G.order // brute_center_order(G)
    assert len(center(G)) == brute_center_order(G)


# -- homomorphisms ---------------------------------------------------------------


def test_isomorphism_between_presentations():
    S3t, S3 = corpus.get("S3t"), corpus.get("S3")
    phi = find_isomorphism(S3t, S3)
    assert phi is not None and len(set(phi.values())) == 6
    for a, b in itertools.product(range(6), repeat=2):
        assert phi[S3t._mul(a, b)] == S3._mul(phi[a], phi[b])
    assert find_isomorphism(corpus.get("Z6"), S3) is None


def test_extend_homomorphism_reduction_mod_2():
    Z4, Z2 = corpus.get("Z4"), corpus.get("Z2")
    phi = extend_homomorphism(Z4, Z2, (1,), (1,))
    assert phi == {0: 0, 1: 1, 2: 0, 3: 1}
    assert extend_homomorphism(Z2, corpus.get("Z3"), (1,), (1,)) is None


def test_generates():
    assert generates(corpus.get("Z6"), (2, 3))
    assert not generates(corpus.get("Z6"), (2, 4))
