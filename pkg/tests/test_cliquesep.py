import itertools

import networkx as nx
import pytest

from p6mwis.chordal import is_chordal
from p6mwis.cliquesep import atom_decomposition, fold_mwis, mcsm
from p6mwis.generators import GenSpec, gen_glued_instance
from p6mwis.graph import build_graph
from p6mwis.patterns import has_clique_cutset_bruteforce, is_clique
from p6mwis.solvers import oracle_mwis

from oracles import brute_alpha, complete, cycle, path, random_connected, to_nx, two_triangles


def _min_fill(G):
    """Smallest number of added edges making ``G`` chordal, by enumeration."""
    non = [(u, v) for u, v in itertools.combinations(range(G.n), 2) if not G.has_edge(u, v)]
    for k in range(len(non) + 1):
        for extra in itertools.combinations(non, k):
            H = to_nx(G)
            H.add_edges_from(extra)
            if nx.is_chordal(H):
                return k
    raise AssertionError


def test_fill_examples():
    assert mcsm(path(5)).fill == set()
    assert len(mcsm(cycle(4)).fill) == 1
    assert len(mcsm(cycle(5)).fill) == 2
    with pytest.raises(ValueError):
        mcsm(build_graph(2, []))


def test_fill_is_a_minimal_triangulation():
    for seed in range(60):
        G = random_connected(7, 0.2, seed)
        fr = mcsm(G)
        H = fr.filled_graph(G)
        assert is_chordal(H)
        # inclusion-minimal: no single fill edge can be dropped
        for e in fr.fill:
            T = to_nx(H)
            T.remove_edge(*e)
            assert not nx.is_chordal(T)
        assert len(fr.fill) >= _min_fill(G)


def test_atoms_two_triangles():
    T = atom_decomposition(two_triangles())
    assert len(T) == 2
    assert sorted(map(sorted, (T.atom_vertices(i) for i in range(2)))) == [[0, 1, 2], [2, 3, 4]]
    assert T.separator(0) == {2}


def test_single_atoms():
    assert len(atom_decomposition(cycle(4))) == 1
    assert len(atom_decomposition(complete(6))) == 1


def _certify(G, T):
    cover = 0
    for i in range(len(T)):
        A = T.atom(i)
        cover |= T.steps[i].mask
        assert is_clique(G, T.separator(i))
        if A.n <= 16:
            assert has_clique_cutset_bruteforce(A) is None
    assert cover == G.full


def test_atom_certificates_random():
    for seed in range(80):
        G = random_connected(10, 0.15 + (seed % 4) / 10, seed)
        _certify(G, atom_decomposition(G))


def test_glued_instances_split_into_their_atoms():
    for seed in range(10):
        inst = gen_glued_instance(GenSpec("glued", 12, 0.5, seed), "clique", atoms=4)
        T = atom_decomposition(inst.graph)
        assert len(T) == 4
        _certify(inst.graph, T)


def test_fold_examples():
    assert fold_mwis(atom_decomposition(two_triangles()), oracle_mwis).weight == 2
    assert fold_mwis(atom_decomposition(path(3)), oracle_mwis).weight == 2
    G = cycle(5, [3, 1, 4, 1, 5])
    direct = oracle_mwis(G)
    folded = fold_mwis(atom_decomposition(G), oracle_mwis)
    assert folded.weight == direct.weight and folded.chosen == direct.chosen


def test_fold_matches_brute_force_and_call_budget():
    for seed in range(80):
        G = random_connected(11, 0.2, seed)
        T = atom_decomposition(G)
        r = fold_mwis(T, oracle_mwis, level="X")
        assert r.verify(G) and r.weight == brute_alpha(G)
        budget = sum(len(T.atom_vertices(i)) + len(T.separator(i)) + 1 for i in range(len(T)))
        assert r.stats["X.atom_solver_calls"] <= budget
        assert r.stats["X.atoms"] == len(T)


def test_fold_only_hands_atom_pieces_to_the_solver():
    G = random_connected(12, 0.15, 4)
    T = atom_decomposition(G)
    atoms = [set(G.labels[v] for v in T.atom_vertices(i)) for i in range(len(T))]

    def spy(H):
        assert any(set(H.labels) <= a for a in atoms)
        return oracle_mwis(H)

    fold_mwis(T, spy)
