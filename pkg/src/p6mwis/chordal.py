"""Chordality test and the weighted independent set solver for chordal graphs."""

from __future__ import annotations

from collections import Counter

from .graph import WeightedGraph, bits
from .result import ClassViolation, SolveResult


def mcs_order(G: WeightedGraph) -> list[int]:
    """Maximum cardinality search, reversed.

    Visits vertices greedily by number of already visited neighbours (ties
    to the smallest id) and returns the visit order backwards, which is a
    perfect elimination ordering exactly when ``G`` is chordal.
    """
    n = G.n
    count = [0] * n
    unvisited = G.full
    visit = []
    for _ in range(n):
        best, best_c = -1, -1
        for v in bits(unvisited):
            if count[v] > best_c:
                best, best_c = v, count[v]
        visit.append(best)
        unvisited &= ~(1 << best)
        for u in bits(G.adj[best] & unvisited):
            count[u] += 1
    visit.reverse()
    return visit


def peo_violation(G: WeightedGraph, order: list[int]) -> tuple[int, int, int] | None:
    """First ``(v, a, b)`` with ``a, b`` nonadjacent later neighbours of ``v``."""
    if sorted(order) != list(range(G.n)):
        raise ValueError("elimination order must be a permutation of the vertices")
    later = G.full
    for v in order:
        later &= ~(1 << v)
        nb = G.adj[v] & later
        for a in bits(nb):
            missing = nb & ~G.adj[a] & ~(1 << a)
            if missing:
                return v, a, (missing & -missing).bit_length() - 1
    return None


def verify_peo(G: WeightedGraph, order: list[int]) -> bool:
    return peo_violation(G, order) is None


def is_chordal(G: WeightedGraph) -> bool:
    return verify_peo(G, mcs_order(G))


def frank_mwis(G: WeightedGraph) -> SolveResult:
    """Exact maximum weight independent set of a chordal graph.

    Forward pass along a perfect elimination ordering: a vertex with
    positive residual weight is marked and its residual is subtracted from
    every later neighbour.  Backward pass: greedily keep marked vertices that
    have no kept neighbour.
    """
    order = mcs_order(G)
    bad = peo_violation(G, order)
    if bad is not None:
        v, a, b = bad
        raise ClassViolation(
            f"graph is not chordal: later neighbours {G.labels[a]} and {G.labels[b]} "
            f"of {G.labels[v]} are nonadjacent in the MCS order",
            evidence={"order": [G.labels[x] for x in order], "vertex": G.labels[v], "pair": [G.labels[a], G.labels[b]]},
        )
    residual = list(G.weights)
    marked = []
    later = G.full
    for v in order:
        later &= ~(1 << v)
        r = residual[v]
        if r > 0:
            marked.append(v)
            for u in bits(G.adj[v] & later):
                residual[u] = max(0, residual[u] - r)
    chosen = 0
    for v in reversed(marked):
        if not G.adj[v] & chosen:
            chosen |= 1 << v
    picked = list(bits(chosen))
    return SolveResult(
        frozenset(G.labels[v] for v in picked),
        sum(G.weights[v] for v in picked),
        Counter(chordal_calls=1),
        layer="chordal",
    )
