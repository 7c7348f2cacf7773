"""Immutable vertex-weighted simple graphs with bitset adjacency.

Vertices are dense ids ``0..n-1``.  Each vertex also carries a *label*,
the id it had in the graph the caller originally built; labels survive
every induced-subgraph extraction, so a solution found on a small piece can
be reported in terms of the original input.

Vertex sets at the public API are ``frozenset`` objects.  Internally most
algorithms work on Python ints used as bitmasks (bit ``v`` set means vertex
``v`` is a member), which keeps neighbourhood algebra cheap.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

VertexSet = frozenset


class GraphError(ValueError):
    """Raised for malformed graph construction or out-of-range vertex ids."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class WeightedGraph:
    """Simple undirected graph with nonnegative integer vertex weights.

    Instances are immutable and hashable; two graphs compare equal when
    adjacency, weights and labels all agree.
    """

    __slots__ = ("adj", "weights", "labels", "_hash", "_index")

    def __init__(
        self,
        adj: Sequence[int],
        weights: Sequence[int],
        labels: Sequence[int] | None = None,
    ) -> None:
        self.adj: tuple[int, ...] = tuple(adj)
        self.weights: tuple[int, ...] = tuple(int(w) for w in weights)
        self.labels: tuple[int, ...] = (
            tuple(range(len(self.adj))) if labels is None else tuple(labels)
        )
        if not (len(self.adj) == len(self.weights) == len(self.labels)):
            raise GraphError("adjacency, weights and labels differ in length")
        self._hash = hash((self.adj, self.weights, self.labels))
        self._index: dict[int, int] | None = None

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    @property
    def full(self) -> int:
        """Bitmask of all vertices."""
        return (1 << len(self.adj)) - 1

    def __len__(self) -> int:
        return len(self.adj)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.adj == other.adj
            and self.weights == other.weights
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def index_of(self, label: int) -> int:
        """Map an original label back to this graph's internal id."""
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"label {label} is not a vertex of this graph") from None

    def ids_of(self, labels: Iterable[int]) -> VertexSet:
        return frozenset(self.index_of(lab) for lab in labels)

    def labels_of(self, vertices: Iterable[int]) -> VertexSet:
        return frozenset(self.labels[v] for v in vertices)

    def with_weights(self, weights: Sequence[int]) -> WeightedGraph:
        if any(w < 0 for w in weights):
            raise GraphError("weights must be nonnegative")
        return WeightedGraph(self.adj, weights, self.labels)

    def induced_mask(self, mask: int) -> WeightedGraph:
        """Induced subgraph on the vertices of ``mask`` (ids renumbered in order)."""
        keep = list(bits(mask))
        if len(keep) == self.n:
            return self
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            a = 0
            for u in bits(self.adj[v] & mask):
                a |= 1 << pos[u]
            adj.append(a)
        return WeightedGraph(
            adj, [self.weights[v] for v in keep], [self.labels[v] for v in keep]
        )

    def relabel_dense(self) -> WeightedGraph:
        """Same graph with labels reset to ``0..n-1``."""
        return WeightedGraph(self.adj, self.weights)

    def complement(self) -> WeightedGraph:
        full = self.full
        return WeightedGraph(
            [(full & ~a) & ~(1 << v) for v, a in enumerate(self.adj)],
            self.weights,
            self.labels,
        )


def _check_ids(G: WeightedGraph, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        if not isinstance(v, int) or v < 0 or v >= G.n:
            raise GraphError(f"vertex {v!r} out of range for graph with n={G.n}")
        mask |= 1 << v
    return mask


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    weights: Sequence[int] | None = None,
    labels: Sequence[int] | None = None,
) -> WeightedGraph:
    """Build a graph from an edge list; duplicate edges are merged.

    ``weights`` defaults to all ones.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    if weights is None:
        weights = [1] * n
    if len(weights) != n:
        raise GraphError(f"expected {n} weights, got {len(weights)}")
    for v, w in enumerate(weights):
        if int(w) != w or w < 0:
            raise GraphError(f"vertex {v} has invalid weight {w!r}; weights must be nonnegative integers")
    if labels is not None:
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise GraphError("labels must be pairwise distinct")
    adj = [0] * n
    for e in edges:
        u, v = e
        for x in (u, v):
            if not isinstance(x, int) or x < 0 or x >= n:
                raise GraphError(f"edge {tuple(e)} has endpoint {x!r} out of range [0, {n})")
        if u == v:
            raise GraphError(f"edge {tuple(e)} is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return WeightedGraph(adj, weights, labels)


def closed_neighborhood(G: WeightedGraph, v: int) -> VertexSet:
    _check_ids(G, (v,))
    return frozenset(bits(G.adj[v] | 1 << v))


def neighborhood_mask(G: WeightedGraph, mask: int) -> int:
    nb = 0
    for x in bits(mask):
        nb |= G.adj[x]
    return nb & ~mask


def neighborhood_of_set(G: WeightedGraph, X: Iterable[int]) -> VertexSet:
    """Vertices outside ``X`` with at least one neighbour in ``X``."""
    return frozenset(bits(neighborhood_mask(G, _check_ids(G, X))))


def non_neighborhood_of_set(G: WeightedGraph, X: Iterable[int]) -> VertexSet:
    """``V(G)`` minus the closed neighbourhood of ``X``."""
    mask = _check_ids(G, X)
    closed = mask | neighborhood_mask(G, mask)
    return frozenset(bits(G.full & ~closed))


def induced_subgraph(G: WeightedGraph, S: Iterable[int]) -> WeightedGraph:
    return G.induced_mask(_check_ids(G, S))


def component_masks(G: WeightedGraph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by smallest member."""
    rest = G.full if within is None else within
    comps = []
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= G.adj[x]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def components(G: WeightedGraph) -> list[VertexSet]:
    return [frozenset(bits(c)) for c in component_masks(G)]


def is_connected(G: WeightedGraph) -> bool:
    return G.n <= 1 or len(component_masks(G)) == 1


def is_independent_mask(G: WeightedGraph, mask: int) -> bool:
    return all(not (G.adj[v] & mask) for v in bits(mask))


def is_independent(G: WeightedGraph, S: Iterable[int]) -> bool:
    return is_independent_mask(G, _check_ids(G, S))


def set_weight(G: WeightedGraph, S: Iterable[int]) -> int:
    return sum(G.weights[v] for v in bits(_check_ids(G, S)))
