"""Modular decomposition and weighted independent sets through the quotient tree.

The decomposition is the straightforward recursive one: a disconnected
vertex set splits into components (parallel node), a set whose complement is
disconnected splits into co-components (series node), and otherwise the
maximal proper modules partition the set (prime node).  Maximal modules are
found from minimal modules containing a vertex pair, computed by closing the
pair under "add every outside vertex that distinguishes two members".
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .graph import GraphError, VertexSet, WeightedGraph, bits, component_masks
from .result import SolveResult, SolverError

LEAF, SERIES, PARALLEL, PRIME = "leaf", "series", "parallel", "prime"


@dataclass
class MDNode:
    kind: str
    mask: int
    children: list[MDNode] = field(default_factory=list)
    quotient: WeightedGraph | None = None
    alpha: int | None = None

    @property
    def vertices(self) -> VertexSet:
        return frozenset(bits(self.mask))

    @property
    def vertex(self) -> int:
        """Leaf vertex (smallest member for inner nodes)."""
        return (self.mask & -self.mask).bit_length() - 1

    def walk(self) -> Iterable[MDNode]:
        yield self
        for c in self.children:
            yield from c.walk()

    def to_dict(self, G: WeightedGraph) -> dict:
        if self.kind == LEAF:
            v = self.vertex
            return {"kind": LEAF, "vertex": G.labels[v], "weight": G.weights[v]}
        out = {
            "kind": self.kind,
            "vertices": sorted(G.labels[v] for v in bits(self.mask)),
            "children": [c.to_dict(G) for c in self.children],
        }
        if self.quotient is not None:
            q = self.quotient
            out["quotient"] = {
                "vertices": list(q.labels),
                "edges": [[q.labels[u], q.labels[v]] for u, v in q.edges()],
            }
        if self.alpha is not None:
            out["alpha"] = self.alpha
        return out


def is_module_mask(G: WeightedGraph, mask: int) -> bool:
    for z in bits(G.full & ~mask):
        seen = G.adj[z] & mask
        if seen and seen != mask:
            return False
    return True


def is_module(G: WeightedGraph, M: Iterable[int]) -> bool:
    mask = 0
    for v in M:
        if v < 0 or v >= G.n:
            raise GraphError(f"vertex {v} out of range")
        mask |= 1 << v
    return is_module_mask(G, mask)


def _co_components(G: WeightedGraph, mask: int) -> list[int]:
    rest = mask
    comps = []
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= ~G.adj[x]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def minimal_module(G: WeightedGraph, within: int, a: int, b: int) -> int:
    """Smallest module of ``G[within]`` containing both ``a`` and ``b``."""
    members = 1 << a | 1 << b
    ref = G.adj[a]
    queue = [b]
    while queue:
        x = queue.pop()
        split = (ref ^ G.adj[x]) & within & ~members
        if split:
            members |= split
            queue.extend(bits(split))
    return members


def _maximal_modules(G: WeightedGraph, mask: int) -> list[int]:
    # valid only when G[mask] and its complement are both connected
    rest = mask
    parts = []
    while rest:
        v = (rest & -rest).bit_length() - 1
        cls = 1 << v
        for u in bits(rest & ~cls):
            if cls >> u & 1:
                continue
            m = minimal_module(G, mask, v, u)
            if m != mask:
                cls |= m
        parts.append(cls)
        rest &= ~cls
    return parts


def _build(G: WeightedGraph, mask: int) -> MDNode:
    if mask & (mask - 1) == 0:
        return MDNode(LEAF, mask)
    parts = component_masks(G, mask)
    if len(parts) > 1:
        kind = PARALLEL
    else:
        parts = _co_components(G, mask)
        kind = SERIES if len(parts) > 1 else PRIME
        if kind == PRIME:
            parts = _maximal_modules(G, mask)
    parts.sort(key=lambda p: p & -p)
    reps = 0
    for p in parts:
        reps |= p & -p
    return MDNode(kind, mask, [_build(G, p) for p in parts], quotient=G.induced_mask(reps))


def md_tree(G: WeightedGraph) -> MDNode:
    if G.n == 0:
        raise ValueError("modular decomposition needs at least one vertex")
    return _build(G, G.full)


def is_prime(G: WeightedGraph) -> bool:
    """Only trivial modules (graphs on at most two vertices count as prime)."""
    if G.n <= 2:
        return True
    root = md_tree(G)
    return root.kind == PRIME and all(c.kind == LEAF for c in root.children)


def mwis_via_md(G: WeightedGraph, prime_solver: Callable[[WeightedGraph], SolveResult]) -> SolveResult:
    """Maximum weight independent set from independent sets of prime quotients.

    ``prime_solver`` sees each prime quotient with every representative
    weighted by the optimum of the module it stands for.
    """
    if G.n == 0:
        return SolveResult.empty()
    root = md_tree(G)
    stats: Counter = Counter()

    def solve(node: MDNode, path: str) -> int:
        # returns the chosen mask; node.alpha is filled in on the way up
        if node.kind == LEAF:
            v = node.vertex
            node.alpha = G.weights[v]
            return node.mask if node.alpha > 0 else 0
        picks = [solve(c, f"{path}/{i}") for i, c in enumerate(node.children)]
        alphas = [c.alpha for c in node.children]
        if node.kind == PARALLEL:
            node.alpha = sum(alphas)
            chosen = 0
            for p in picks:
                chosen |= p
            return chosen
        if node.kind == SERIES:
            best = max(range(len(alphas)), key=lambda i: (alphas[i], -i))
            node.alpha = alphas[best]
            return picks[best]
        stats["md_prime_nodes"] += 1
        q = node.quotient.with_weights(alphas)
        try:
            res = prime_solver(q)
        except SolverError as e:
            raise e.add_context(f"prime node {path} on labels {list(q.labels)}")
        stats.update(res.stats)
        child_of = {lab: i for i, lab in enumerate(q.labels)}
        chosen = 0
        for lab in res.chosen:
            chosen |= picks[child_of[lab]]
        node.alpha = res.weight
        return chosen

    chosen = solve(root, "root")
    picked = list(bits(chosen))
    weight = sum(G.weights[v] for v in picked)
    if weight != root.alpha:
        raise SolverError(f"internal: reconstructed weight {weight} != tree optimum {root.alpha}")
    return SolveResult(frozenset(G.labels[v] for v in picked), weight, stats)
