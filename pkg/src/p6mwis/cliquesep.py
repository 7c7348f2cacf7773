"""Decomposition by clique separators, and solving across the pieces.

``mcsm`` computes a minimal elimination ordering with its fill (MCS-M).
``atom_decomposition`` walks that ordering and splits off a piece whenever a
vertex's later neighbourhood in the filled graph is a clique of the original
graph that separates what is left.  ``fold_mwis`` then solves the pieces one
by one, pushing each piece's contribution into the weights of its separator.
"""

from __future__ import annotations

import heapq
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass

from .graph import VertexSet, WeightedGraph, bits, component_masks
from .patterns import is_clique_mask
from .result import SolveResult, SolverError


@dataclass
class FillResult:
    order: list[int]  # order[i] is eliminated i-th
    fill: set[tuple[int, int]]
    filled_adj: list[int]

    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def filled_graph(self, G: WeightedGraph) -> WeightedGraph:
        return WeightedGraph(self.filled_adj, G.weights, G.labels)


def mcsm(G: WeightedGraph) -> FillResult:
    """Minimal elimination ordering and fill by maximum cardinality search (MCS-M).

    At each step the unnumbered vertex ``z`` of largest label is numbered
    next (from the back), and every unnumbered ``y`` reachable from ``z``
    through unnumbered vertices of label smaller than ``label[y]`` gets its
    label bumped; if ``y`` is not a neighbour of ``z`` the pair becomes fill.
    """
    n = G.n
    if len(component_masks(G)) > 1:
        raise ValueError("mcsm expects a connected graph; decompose into components first")
    label = [0] * n
    unnumbered = G.full
    number = [0] * n
    fill: set[tuple[int, int]] = set()
    filled = list(G.adj)
    for i in range(n - 1, -1, -1):
        z, best = -1, -1
        for v in bits(unnumbered):
            if label[v] > best:
                z, best = v, label[v]
        number[z] = i
        unnumbered &= ~(1 << z)
        # bottleneck search: cost[y] = smallest possible largest internal label on a z..y path
        cost = {}
        heap = []
        for y in bits(G.adj[z] & unnumbered):
            cost[y] = -1
            heap.append((-1, y))
        heapq.heapify(heap)
        while heap:
            c, y = heapq.heappop(heap)
            if c > cost[y]:
                continue
            through = max(c, label[y])
            for u in bits(G.adj[y] & unnumbered):
                if u not in cost or through < cost[u]:
                    cost[u] = through
                    heapq.heappush(heap, (through, u))
        reached = [y for y, c in cost.items() if c < label[y]]
        for y in reached:
            label[y] += 1
            if not G.adj[z] >> y & 1:
                fill.add((min(y, z), max(y, z)))
                filled[y] |= 1 << z
                filled[z] |= 1 << y
    order = sorted(range(n), key=number.__getitem__)
    return FillResult(order, fill, filled)


@dataclass
class AtomStep:
    mask: int  # vertices of the atom, in the decomposed graph's ids
    separator: int  # clique shared with the remainder; 0 for the last atom


@dataclass
class AtomTree:
    graph: WeightedGraph
    steps: list[AtomStep]

    def __len__(self) -> int:
        return len(self.steps)

    def atom(self, i: int) -> WeightedGraph:
        return self.graph.induced_mask(self.steps[i].mask)

    def atom_vertices(self, i: int) -> VertexSet:
        return frozenset(bits(self.steps[i].mask))

    def separator(self, i: int) -> VertexSet:
        return frozenset(bits(self.steps[i].separator))

    def to_dict(self) -> dict:
        G = self.graph
        return {
            "atoms": [
                {
                    "vertices": sorted(G.labels[v] for v in bits(s.mask)),
                    "separator": sorted(G.labels[v] for v in bits(s.separator)),
                }
                for s in self.steps
            ]
        }


def _touches_all(G: WeightedGraph, comp: int, sep: int) -> bool:
    nb = 0
    for v in bits(comp):
        nb |= G.adj[v]
    return nb & sep == sep


def atom_decomposition(G: WeightedGraph) -> AtomTree:
    if G.n == 0:
        return AtomTree(G, [])
    fr = mcsm(G)
    pos = fr.position()
    remaining = G.full
    steps = []
    for x in fr.order:
        if not remaining >> x & 1:
            continue
        later = 0
        for u in bits(fr.filled_adj[x]):
            if pos[u] > pos[x]:
                later |= 1 << u
        sep = later & remaining
        if not is_clique_mask(G, sep):
            continue
        comps = component_masks(G, remaining & ~sep)
        side = next(c for c in comps if c >> x & 1)
        if side | sep == remaining:
            continue
        # only minimal separators: some other component must see all of sep,
        # otherwise the split leaves a piece contained in a later atom
        if not any(c != side and _touches_all(G, c, sep) for c in comps):
            continue
        steps.append(AtomStep(side | sep, sep))
        remaining &= ~side
    steps.append(AtomStep(remaining, 0))
    return AtomTree(G, steps)


def fold_mwis(
    T: AtomTree,
    atom_solver: Callable[[WeightedGraph], SolveResult],
    level: str = "",
) -> SolveResult:
    """Combine optimal solutions of the atoms into an optimum of the whole graph.

    For an atom ``A`` sharing clique ``Q`` with the rest, let ``a0`` be the
    optimum of ``A - Q`` and ``aq = w(q) + opt(A - N[q])``.  An independent
    set meets ``Q`` in at most one vertex, so the rest of the graph can be
    solved with ``w(q) := aq - a0`` (``q`` dropped when that is not
    positive) and ``a0`` added back.  ``atom_solver`` is only ever handed
    induced subgraphs of atoms, with possibly modified weights.
    """
    G = T.graph
    if not T.steps:
        return SolveResult.empty()
    prefix = f"{level}." if level else ""
    stats: Counter = Counter()
    stats[prefix + "atoms"] += len(T.steps)
    w = list(G.weights)
    alive = G.full
    constant = 0
    undo = []

    def call(mask: int, step: int) -> SolveResult:
        stats[prefix + "atom_solver_calls"] += 1
        sub = WeightedGraph(G.adj, w, G.labels).induced_mask(mask)
        try:
            res = atom_solver(sub)
        except SolverError as e:
            raise e.add_context(f"{level or 'fold'} atom {step}")
        stats.update(res.stats)
        return res

    for k, step in enumerate(T.steps[:-1]):
        atom = step.mask & alive
        sep = step.separator & alive
        base = call(atom & ~sep, k)
        with_q = {}
        for q in bits(sep):
            res = call(atom & ~(G.adj[q] | 1 << q), k)
            gain = w[q] + res.weight - base.weight
            with_q[G.labels[q]] = res
            if gain > 0:
                w[q] = gain
            else:
                alive &= ~(1 << q)
        constant += base.weight
        alive &= ~(atom & ~sep)
        undo.append((base, with_q))

    final = call(T.steps[-1].mask & alive, len(T.steps) - 1)
    chosen = set(final.chosen)
    for base, with_q in reversed(undo):
        hit = [lab for lab in with_q if lab in chosen]
        chosen.update(with_q[hit[0]].chosen if hit else base.chosen)
    weight = sum(G.weights[G.index_of(lab)] for lab in chosen)
    if weight != final.weight + constant:
        raise SolverError(
            f"internal: unfolded weight {weight} != folded optimum {final.weight + constant}"
        )
    return SolveResult(frozenset(chosen), weight, stats)
