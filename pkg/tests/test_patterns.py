import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p6mwis.graph import build_graph, induced_subgraph
from p6mwis.patterns import (
    PATTERNS,
    Pattern,
    PatternWitness,
    alpha_at_most_2,
    find_induced,
    find_induced_sampled,
    has_clique_cutset_bruteforce,
    is_clique,
    is_free,
    iter_induced,
    verify_witness,
)

from oracles import (
    banner,
    brute_clique_cutset,
    brute_find,
    complete,
    complete_bipartite,
    cycle,
    empty,
    house,
    nx_contains,
    path,
    random_connected,
    random_graph,
)


def test_catalog_shapes():
    h = PATTERNS["house"]
    assert h.edges == {(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (2, 4)}
    b = PATTERNS["banner"]
    # exactly one cycle neighbour for the pendant
    assert b.adj[4].bit_count() == 1
    assert PATTERNS["k23"].graph().m == 6


def test_banner_contains_c4():
    w = find_induced(banner(), "c4")
    assert w is not None
    assert w.vertices == {0, 1, 2, 3}
    assert verify_witness(banner(), w)


def test_house_is_banner_free():
    assert find_induced(house(), "banner") is None


def test_p6_identity_witness():
    w = find_induced(path(6), "p6")
    assert w.mapping == (0, 1, 2, 3, 4, 5)


def test_oversized_pattern_rejected():
    with pytest.raises(ValueError):
        Pattern.from_edges("p9", 9, [(i, i + 1) for i in range(8)])


def test_is_free_examples():
    assert is_free(cycle(5), "p6,banner").free
    r = is_free(banner(), ["banner"])
    assert not r.free and r.witnesses["banner"].mapping == (0, 1, 2, 3, 4)
    r = is_free(house(), ["c4"])
    assert not r.free and r.witnesses["c4"].vertices == {0, 1, 2, 3}


def test_is_clique_examples():
    assert is_clique(complete(4), {0, 1, 2})
    assert not is_clique(cycle(4), {0, 2})
    assert is_clique(cycle(4), set())


def test_cutset_examples():
    T = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    Q, sides = has_clique_cutset_bruteforce(T)
    assert Q == {2}
    assert sorted(map(sorted, sides)) == [[0, 1], [3, 4]]
    assert has_clique_cutset_bruteforce(cycle(4)) is None
    assert has_clique_cutset_bruteforce(complete(5)) is None


def test_alpha_at_most_2_examples():
    assert alpha_at_most_2(complete(5))
    assert alpha_at_most_2(cycle(5))
    assert not alpha_at_most_2(empty(3))


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_find_matches_permutation_oracle(name):
    P = PATTERNS[name]
    for seed in range(40):
        G = random_graph(7, 0.5, seed)
        w = find_induced(G, P)
        ref = brute_find(G, P.adj, P.k)
        if ref is None:
            assert w is None
        else:
            # both scan host tuples lexicographically
            assert w is not None and w.mapping == ref


@pytest.mark.parametrize("name", ["p6", "banner", "house", "c5", "k23"])
def test_find_matches_networkx(name):
    P = PATTERNS[name]
    for seed in range(25):
        G = random_graph(10, 0.35, 100 + seed)
        assert (find_induced(G, P) is not None) == nx_contains(G, P.graph())


def test_anchored_search_covers_exactly_anchored_embeddings():
    P = PATTERNS["p4"]
    G = random_graph(8, 0.4, 3)
    everything = set(w.mapping for w in iter_induced(G, P))
    for a in range(G.n):
        anchored = [w.mapping for w in iter_induced(G, P, anchor=a)]
        assert len(anchored) == len(set(anchored))
        assert set(anchored) == {m for m in everything if a in m}


def test_witness_checker_rejects_non_induced():
    P = PATTERNS["c4"]
    K4 = complete(4)
    assert not verify_witness(K4, PatternWitness(P, (0, 1, 2, 3)))
    assert not verify_witness(cycle(4), PatternWitness(P, (0, 1, 1, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["p4", "c4", "c5", "banner", "house"]))
def test_witnesses_verify_and_freeness_is_hereditary(seed, name):
    G = random_graph(9, 0.45, seed)
    w = find_induced(G, name)
    if w is not None:
        assert verify_witness(G, w)
        sub = induced_subgraph(G, w.vertices)
        assert find_induced(sub, name) is not None
    else:
        for drop in range(G.n):
            H = induced_subgraph(G, set(range(G.n)) - {drop})
            assert find_induced(H, name) is None


def test_sampled_search_is_marked_uncertified():
    G = random_graph(30, 0.2, 5)
    r = is_free(G, ["p4"], sampled=True)
    assert r.certified is False
    w = find_induced_sampled(G, PATTERNS["p4"], seed=1)
    assert w is None or verify_witness(G, w)


def test_cutset_scan_agrees_with_independent_scan():
    for seed in range(60):
        G = random_connected(8, 0.3, seed)
        assert (has_clique_cutset_bruteforce(G) is not None) == brute_clique_cutset(G)


def test_alpha_at_most_2_against_enumeration():
    for seed in range(60):
        G = random_graph(7, 0.6, seed)
        three = any(
            not (G.has_edge(a, b) or G.has_edge(a, c) or G.has_edge(b, c))
            for a, b, c in itertools.combinations(range(G.n), 3)
        )
        assert alpha_at_most_2(G) == (not three)


def test_k23_side_detection():
    assert find_induced(complete_bipartite(2, 3), "k23") is not None
