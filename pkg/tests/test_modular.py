import pytest

from p6mwis.graph import GraphError, build_graph, induced_subgraph
from p6mwis.modular import LEAF, PARALLEL, PRIME, SERIES, is_module, is_prime, md_tree, mwis_via_md
from p6mwis.result import SolveResult
from p6mwis.solvers import oracle_mwis

from oracles import (
    brute_alpha,
    brute_is_module,
    brute_is_prime,
    complete,
    complete_bipartite,
    cycle,
    path,
    random_graph,
)


def test_is_module_examples():
    G = path(4)
    assert is_module(G, range(4)) and is_module(G, []) and all(is_module(G, [v]) for v in range(4))
    assert not is_module(G, {0, 1})
    assert is_module(complete_bipartite(2, 3), {2, 3, 4})
    with pytest.raises(GraphError):
        is_module(G, {7})


def test_md_tree_examples():
    t = md_tree(path(4))
    assert t.kind == PRIME and len(t.children) == 4
    assert all(c.kind == LEAF for c in t.children)
    t = md_tree(complete(2))
    assert t.kind == SERIES and len(t.children) == 2
    t = md_tree(build_graph(4, [(0, 1), (2, 3)]))
    assert t.kind == PARALLEL and [c.kind for c in t.children] == [SERIES, SERIES]
    with pytest.raises(ValueError):
        md_tree(build_graph(0, []))


def _check_tree(G, node):
    if node.kind == LEAF:
        assert node.mask.bit_count() == 1
        return
    union = 0
    for c in node.children:
        assert union & c.mask == 0
        union |= c.mask
        assert brute_is_module(G, c.vertices)
        _check_tree(G, c)
    assert union == node.mask
    q = node.quotient
    assert q is not None and q.n == len(node.children)
    k = q.n
    if node.kind == SERIES:
        assert q.m == k * (k - 1) // 2
    elif node.kind == PARALLEL:
        assert q.m == 0
    else:
        assert k >= 4 and brute_is_prime(q)


def test_md_tree_invariants_random():
    for seed in range(120):
        G = random_graph(3 + seed % 8, 0.2 + (seed % 5) / 8, seed)
        _check_tree(G, md_tree(G))


def test_is_prime_matches_enumeration():
    for seed in range(120):
        G = random_graph(3 + seed % 6, 0.5, 1000 + seed)
        assert is_prime(G) == brute_is_prime(G)


def test_mwis_via_md_examples():
    assert mwis_via_md(build_graph(4, [(0, 1), (2, 3)]), oracle_mwis).weight == 2
    assert mwis_via_md(complete(2, [5, 9]), oracle_mwis).weight == 9
    # C5 with vertex 0 replaced by adjacent twins 0 and 5
    G = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 4), (0, 5)])
    assert brute_alpha(G) == 2
    r = mwis_via_md(G, oracle_mwis)
    assert r.weight == 2 and r.verify(G)


def test_mwis_via_md_only_hands_prime_graphs_to_the_prime_solver():
    seen = []

    def spy(Q):
        seen.append(Q)
        return oracle_mwis(Q)

    for seed in range(40):
        G = random_graph(9, 0.45, seed)
        r = mwis_via_md(G, spy)
        assert r.weight == brute_alpha(G) and r.verify(G)
    assert seen and all(brute_is_prime(Q) for Q in seen)


def test_mwis_via_md_reports_bad_prime_solver():
    def liar(Q):
        return SolveResult(frozenset(Q.labels[:2]), 10**6)

    with pytest.raises(Exception):
        mwis_via_md(path(4), liar)


def test_zero_weight_vertices_never_chosen():
    G = cycle(5, [0, 0, 3, 0, 0])
    r = mwis_via_md(G, oracle_mwis)
    assert r.weight == 3 and r.chosen == {2}


def test_quotient_labels_compose_through_subgraphs():
    G = random_graph(10, 0.5, 9)
    H = induced_subgraph(G, range(2, 10))
    for node in md_tree(H).walk():
        if node.quotient is not None:
            assert set(node.quotient.labels) <= set(H.labels)
