"""Induced-subgraph detection for small forbidden patterns.

The search is plain backtracking over injective maps, pattern vertex by
pattern vertex, with the candidate set for each step computed as a bitmask
(adjacent to the images of earlier pattern neighbours, nonadjacent to the
images of earlier pattern non-neighbours).  Candidates are tried in
increasing host id, so the first witness found is the lexicographically
smallest image tuple.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .graph import VertexSet, WeightedGraph, bits, build_graph, component_masks, to_mask

MAX_PATTERN_SIZE = 8
# Above this many vertices exhaustive free-ness checks are replaced by sampling.
CERTIFY_LIMIT = 60


@dataclass(frozen=True)
class Pattern:
    name: str
    k: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.k > MAX_PATTERN_SIZE:
            raise ValueError(f"pattern {self.name!r} has {self.k} vertices; at most {MAX_PATTERN_SIZE} supported")
        adj = [0] * self.k
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_edges(cls, name: str, k: int, edges: Iterable[tuple[int, int]]) -> Pattern:
        return cls(name, k, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def graph(self) -> WeightedGraph:
        return build_graph(self.k, sorted(self.edges))


def _path(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def _cycle(k: int) -> list[tuple[int, int]]:
    return _path(k) + [(0, k - 1)]


# Vertex numbering follows the usual drawings: the house is the 4-cycle
# v1v2v3v4 (ids 0..3) with roof v5 (id 4) on v2 and v3; the banner is the
# 4-cycle 0..3 with pendant 4 on vertex 0.
PATTERNS: dict[str, Pattern] = {
    p.name: p
    for p in (
        Pattern.from_edges("p4", 4, _path(4)),
        Pattern.from_edges("p5", 5, _path(5)),
        Pattern.from_edges("p6", 6, _path(6)),
        Pattern.from_edges("c4", 4, _cycle(4)),
        Pattern.from_edges("c5", 5, _cycle(5)),
        Pattern.from_edges("house", 5, _cycle(4) + [(1, 4), (2, 4)]),
        Pattern.from_edges("banner", 5, _cycle(4) + [(0, 4)]),
        Pattern.from_edges("k23", 5, [(a, b) for a in (0, 1) for b in (2, 3, 4)]),
    )
}


def get_pattern(name: str | Pattern) -> Pattern:
    if isinstance(name, Pattern):
        return name
    try:
        return PATTERNS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; known: {', '.join(PATTERNS)}") from None


def parse_patterns(spec: str | Iterable[str | Pattern]) -> tuple[Pattern, ...]:
    """Accept ``"p6,banner"`` or an iterable of names/patterns."""
    if isinstance(spec, str):
        spec = [s for s in spec.replace(" ", "").split(",") if s]
    return tuple(get_pattern(p) for p in spec)


@dataclass(frozen=True)
class PatternWitness:
    """``mapping[i]`` is the host vertex playing pattern vertex ``i``."""

    pattern: Pattern
    mapping: tuple[int, ...]

    @property
    def vertices(self) -> VertexSet:
        return frozenset(self.mapping)

    def relabel(self, ids: tuple[int, ...]) -> PatternWitness:
        return PatternWitness(self.pattern, tuple(ids[x] for x in self.mapping))

    def to_dict(self, G: WeightedGraph | None = None) -> dict:
        image = list(self.mapping) if G is None else [G.labels[x] for x in self.mapping]
        return {"pattern": self.pattern.name, "vertices": image}


def verify_witness(G: WeightedGraph, w: PatternWitness) -> bool:
    """Injective and edge-exact: the image induces precisely the pattern."""
    m = w.mapping
    if len(m) != w.pattern.k or len(set(m)) != len(m):
        return False
    if any(x < 0 or x >= G.n for x in m):
        return False
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            if G.has_edge(m[i], m[j]) != bool(w.pattern.adj[i] >> j & 1):
                return False
    return True


def iter_induced(
    G: WeightedGraph, P: Pattern, within: int | None = None, anchor: int | None = None
) -> Iterator[PatternWitness]:
    """Every injective induced embedding of ``P`` into ``G[within]``, lexicographically.

    With ``anchor`` only embeddings using that host vertex are produced,
    grouped by the pattern position the anchor plays.
    """
    if P.k > MAX_PATTERN_SIZE:
        raise ValueError(f"pattern {P.name!r} exceeds {MAX_PATTERN_SIZE} vertices")
    pool = G.full if within is None else within
    if P.k == 0:
        yield PatternWitness(P, ())
        return
    if P.k > pool.bit_count():
        return
    pdeg = [a.bit_count() for a in P.adj]
    eligible = [0] * P.k
    for i in range(P.k):
        eligible[i] = to_mask(v for v in bits(pool) if (G.adj[v] & pool).bit_count() >= pdeg[i])
    img = [0] * P.k

    if anchor is not None:
        if not pool >> anchor & 1:
            return
        base = list(eligible)
        for i in range(P.k):
            eligible = [(1 << anchor) & e if j == i else e & ~(1 << anchor) for j, e in enumerate(base)]
            yield from _extend(G, P, eligible, img, 0, 0)
        return
    yield from _extend(G, P, eligible, img, 0, 0)


def _extend(
    G: WeightedGraph, P: Pattern, eligible: list[int], img: list[int], i: int, used: int
) -> Iterator[PatternWitness]:
    cand = eligible[i] & ~used
    row = P.adj[i]
    for j in range(i):
        a = G.adj[img[j]]
        cand &= a if row >> j & 1 else ~a
        if not cand:
            return
    for x in bits(cand):
        img[i] = x
        if i + 1 == P.k:
            yield PatternWitness(P, tuple(img))
        else:
            yield from _extend(G, P, eligible, img, i + 1, used | 1 << x)


def find_induced(
    G: WeightedGraph, P: Pattern | str, within: int | None = None, anchor: int | None = None
) -> PatternWitness | None:
    return next(iter_induced(G, get_pattern(P), within, anchor), None)


@dataclass
class FreenessReport:
    free: bool
    witnesses: dict[str, PatternWitness]
    certified: bool = True

    def __bool__(self) -> bool:
        return self.free

    def to_dict(self, G: WeightedGraph | None = None) -> dict:
        return {
            "free": self.free,
            "certified": self.certified,
            "witnesses": {k: w.to_dict(G) for k, w in sorted(self.witnesses.items())},
        }


def find_induced_sampled(
    G: WeightedGraph, P: Pattern, probes: int = 200, probe_size: int = 24, seed: int = 0
) -> PatternWitness | None:
    """Search random vertex subsets only; a ``None`` answer certifies nothing."""
    if G.n <= probe_size:
        return find_induced(G, P)
    rng = random.Random(seed)
    for _ in range(probes):
        # grow a connected-ish probe so sparse graphs still yield paths and cycles
        start = rng.randrange(G.n)
        chosen = 1 << start
        frontier = G.adj[start]
        while chosen.bit_count() < probe_size:
            pool = frontier & ~chosen
            if not pool or rng.random() < 0.2:
                pool = G.full & ~chosen
            members = list(bits(pool))
            x = rng.choice(members)
            chosen |= 1 << x
            frontier |= G.adj[x]
        w = find_induced(G, P, chosen)
        if w is not None:
            return w
    return None


def is_free(
    G: WeightedGraph,
    family: Iterable[Pattern | str] | str,
    sampled: bool | None = None,
    seed: int = 0,
) -> FreenessReport:
    """Check ``G`` against every pattern in ``family``.

    ``sampled=None`` picks exhaustive search up to ``CERTIFY_LIMIT`` vertices
    and random probing above it.
    """
    pats = parse_patterns(family)
    if sampled is None:
        sampled = G.n > CERTIFY_LIMIT
    witnesses = {}
    for P in pats:
        w = find_induced_sampled(G, P, seed=seed) if sampled else find_induced(G, P)
        if w is not None:
            witnesses[P.name] = w
    return FreenessReport(not witnesses, witnesses, certified=not sampled)


def is_clique_mask(G: WeightedGraph, mask: int) -> bool:
    return all((G.adj[v] | 1 << v) & mask == mask for v in bits(mask))


def is_clique(G: WeightedGraph, S: Iterable[int]) -> bool:
    mask = 0
    for v in S:
        if v < 0 or v >= G.n:
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    return is_clique_mask(G, mask)


BRUTE_CUTSET_LIMIT = 16


def has_clique_cutset_bruteforce(G: WeightedGraph) -> tuple[VertexSet, list[VertexSet]] | None:
    """Exhaustive search for a clique whose removal disconnects ``G``.

    Cliques are tried by increasing size, then lexicographically.  Test
    oracle only: exponential, capped at ``BRUTE_CUTSET_LIMIT`` vertices.
    """
    if G.n > BRUTE_CUTSET_LIMIT:
        raise ValueError(f"brute-force cutset scan capped at {BRUTE_CUTSET_LIMIT} vertices, got {G.n}")
    if len(component_masks(G)) > 1:
        raise ValueError("has_clique_cutset_bruteforce expects a connected graph")

    cliques: list[int] = [0]
    layer = [0]
    while layer:
        nxt = []
        for c in layer:
            top = c.bit_length()
            common = G.full
            for v in bits(c):
                common &= G.adj[v]
            for v in bits(common >> top << top):
                nxt.append(c | 1 << v)
        nxt.sort(key=lambda c: list(bits(c)))
        cliques.extend(nxt)
        layer = nxt
    for c in cliques:
        comps = component_masks(G, G.full & ~c)
        if len(comps) > 1:
            return frozenset(bits(c)), [frozenset(bits(x)) for x in comps]
    return None


def alpha_at_most_2(G: WeightedGraph) -> bool:
    """True iff ``G`` has no three pairwise nonadjacent vertices."""
    full = G.full
    for u in range(G.n):
        non_u = full & ~G.adj[u] & ~(1 << u)
        for v in bits(non_u >> (u + 1) << (u + 1)):
            if non_u & ~G.adj[v] & ~(1 << v):
                return False
    return True
