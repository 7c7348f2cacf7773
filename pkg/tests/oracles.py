"""Independent reference implementations used only by the tests.

Everything here is deliberately naive (subset enumeration, permutations,
networkx) and shares no code with the package beyond ``WeightedGraph``.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx

from p6mwis.graph import WeightedGraph, build_graph


def path(k, weights=None):
    return build_graph(k, [(i, i + 1) for i in range(k - 1)], weights)


def cycle(k, weights=None):
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)], weights)


def complete(k, weights=None):
    return build_graph(k, list(itertools.combinations(range(k), 2)), weights)


def empty(k, weights=None):
    return build_graph(k, [], weights)


def complete_bipartite(a, b, weights=None):
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], weights)


def house():
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (2, 4)])


def banner():
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])


def two_triangles():
    # triangles {0,1,2} and {2,3,4} sharing vertex 2
    return build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def random_graph(n, p, seed, wmax=100):
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges, [rng.randint(0, wmax) for _ in range(n)])


def random_connected(n, p, seed, wmax=100):
    """Random spanning tree plus G(n, p) edges."""
    rng = random.Random(seed)
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return build_graph(n, sorted(edges), [rng.randint(0, wmax) for _ in range(n)])


def to_nx(G: WeightedGraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def brute_alpha(G: WeightedGraph) -> int:
    """Maximum weight of an independent set by enumerating all 2^n subsets."""
    best = 0
    n = G.n
    for mask in range(1 << n):
        ok = True
        w = 0
        for v in range(n):
            if mask >> v & 1:
                if G.adj[v] & mask:
                    ok = False
                    break
                w += G.weights[v]
        if ok and w > best:
            best = w
    return best


def brute_independent(G: WeightedGraph, S) -> bool:
    S = list(S)
    return all(not G.has_edge(a, b) for a, b in itertools.combinations(S, 2))


def brute_is_module(G: WeightedGraph, M) -> bool:
    M = set(M)
    for x in range(G.n):
        if x in M:
            continue
        seen = {G.has_edge(x, y) for y in M}
        if len(seen) > 1:
            return False
    return True


def brute_nontrivial_modules(G: WeightedGraph):
    n = G.n
    for r in range(2, n):
        for M in itertools.combinations(range(n), r):
            if brute_is_module(G, M):
                yield frozenset(M)


def brute_is_prime(G: WeightedGraph) -> bool:
    return next(brute_nontrivial_modules(G), None) is None


def brute_find(G: WeightedGraph, P_adj: list[int], k: int):
    """First injective map (in lexicographic host order) inducing the pattern, or None."""
    for img in itertools.permutations(range(G.n), k):
        if all(
            G.has_edge(img[i], img[j]) == bool(P_adj[i] >> j & 1)
            for i in range(k)
            for j in range(i + 1, k)
        ):
            return img
    return None


def nx_contains(G: WeightedGraph, pattern_graph: WeightedGraph) -> bool:
    from networkx.algorithms.isomorphism import GraphMatcher

    gm = GraphMatcher(to_nx(G), to_nx(pattern_graph))
    return gm.subgraph_is_isomorphic()


def nx_components(G: WeightedGraph):
    return sorted((frozenset(c) for c in nx.connected_components(to_nx(G))), key=min)


def brute_clique_cutset(G: WeightedGraph) -> bool:
    """Does any clique (including the empty set) disconnect a connected graph?"""
    H = to_nx(G)
    for r in range(0, G.n - 1):
        for C in itertools.combinations(range(G.n), r):
            if all(G.has_edge(a, b) for a, b in itertools.combinations(C, 2)):
                rest = H.subgraph(set(range(G.n)) - set(C))
                if rest.number_of_nodes() > 1 and not nx.is_connected(rest):
                    return True
    return False
