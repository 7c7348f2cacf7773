"""Seeded instance generators.

Every generator takes a ``GenSpec`` and draws all randomness from a
``random.Random`` seeded by it, so a spec reproduces its graph exactly.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass, field, replace

from .graph import WeightedGraph, build_graph, component_masks
from .modular import is_prime
from .patterns import Pattern, find_induced, get_pattern, is_free, parse_patterns

FAMILIES: dict[str, tuple[str, ...]] = {
    "p6-c4": ("p6", "c4"),
    "p6-banner-house": ("p6", "banner", "house"),
    "p6-banner-c5": ("p6", "banner", "c5"),
    "p6-banner": ("p6", "banner"),
}

LAYER_FAMILY = {"l1": "p6-c4", "l2": "p6-banner-house", "l3": "p6-banner-c5", "l4": "p6-banner"}


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    p: float = 0.3
    seed: int = 0
    wmin: int = 0
    wmax: int = 100
    plant: str | None = None  # pattern kept intact on vertices 0..k-1
    far: bool = False  # with ``plant``: vertex k is kept nonadjacent to the planted copy

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random(f"{self.family}|{self.n}|{self.p}|{self.seed}|{salt}")


def _weights(spec: GenSpec, n: int, rng: random.Random) -> list[int]:
    return [rng.randint(spec.wmin, spec.wmax) for _ in range(n)]


def gen_random_filtered(spec: GenSpec, forbidden: Iterable[Pattern | str] | str = ()) -> WeightedGraph:
    """Erdős–Rényi draw, then delete witness vertices until no pattern remains.

    Each round finds the first induced copy of some forbidden pattern and
    deletes one of its (unprotected) vertices, chosen by the seeded RNG.
    The search is exhaustive, so the result is certified free; keep ``n``
    within a few dozen vertices.
    """
    rng = spec.rng()
    pats = parse_patterns(forbidden)
    n = spec.n
    protected = 0
    edges = set()
    k = 0
    if spec.plant:
        P = get_pattern(spec.plant)
        k = P.k
        if k > n:
            raise GenerationError(f"cannot plant {P.name} into {n} vertices")
        edges.update(P.edges)
        protected = (1 << k) - 1
    for u in range(n):
        for v in range(max(u + 1, k), n):
            if spec.far and v == k and u < k:
                continue
            if rng.random() < spec.p:
                edges.add((u, v))
    weights = _weights(spec, n, rng)
    G = build_graph(n, sorted(edges), weights)
    alive = G.full
    while pats:
        witness = None
        for P in pats:
            witness = find_induced(G, P, alive)
            if witness is not None:
                break
        if witness is None:
            break
        victims = [x for x in sorted(witness.mapping) if not protected >> x & 1]
        if spec.far and spec.plant and k < n and len(victims) > 1:
            victims = [x for x in victims if x != k] or victims
        if not victims:
            raise GenerationError(f"planted {spec.plant} itself contains a forbidden {witness.pattern.name}")
        alive &= ~(1 << rng.choice(victims))
    return G.induced_mask(alive).relabel_dense()


def gen_grown(spec: GenSpec, forbidden: Iterable[Pattern | str] | str = (), tries: int = 30) -> WeightedGraph:
    """Add vertices one by one, redrawing a neighbourhood that would create a pattern.

    Only patterns through the new vertex need checking, since the graph
    before it was already free.  Each vertex draws its own density around
    ``spec.p``; after ``tries`` rejections it is added isolated, which is
    always safe for connected patterns.  Yields exactly ``spec.n`` vertices.
    """
    rng = spec.rng(2)
    pats = parse_patterns(forbidden)
    if not all(len(component_masks(P.graph())) == 1 for P in pats):
        raise GenerationError("growth needs connected forbidden patterns")
    adj: list[int] = []
    start = 0
    if spec.plant:
        P = get_pattern(spec.plant)
        adj = list(P.adj)
        start = P.k
        probe = WeightedGraph(adj, [0] * start)
        for Q in pats:
            if find_induced(probe, Q) is not None:
                raise GenerationError(f"planted {P.name} contains a forbidden {Q.name}")
    for v in range(start, spec.n):
        nb = 0
        for _ in range(tries):
            density = min(1.0, max(0.0, rng.gauss(spec.p, 0.2)))
            nb = 0
            for u in range(v):
                if rng.random() < density and not (spec.far and spec.plant and v == start and u < start):
                    nb |= 1 << u
            trial = [a | (nb >> u & 1) << v for u, a in enumerate(adj)] + [nb]
            probe = WeightedGraph(trial, [0] * (v + 1))
            if all(find_induced(probe, Q, anchor=v) is None for Q in pats):
                break
        else:
            nb = 0
        adj = [a | (nb >> u & 1) << v for u, a in enumerate(adj)] + [nb]
    return WeightedGraph(adj, _weights(spec, spec.n, rng))


def gen_chordal(spec: GenSpec) -> WeightedGraph:
    """Insert vertices one at a time, each joined to a random subset of a known clique.

    ``spec.p`` is the probability that each member of the chosen clique is kept.
    """
    rng = spec.rng()
    cliques: list[list[int]] = []
    edges = []
    for v in range(spec.n):
        if cliques:
            base = rng.choice(cliques)
            nb = [u for u in base if rng.random() < spec.p]
        else:
            nb = []
        edges.extend((u, v) for u in nb)
        cliques.append(nb + [v])
    return build_graph(spec.n, edges, _weights(spec, spec.n, rng))


@dataclass
class GluedInstance:
    graph: WeightedGraph
    cutsets: list[frozenset[int]] = field(default_factory=list)
    atoms: list[frozenset[int]] = field(default_factory=list)


def _atom_edges(family: str, size: int) -> list[tuple[int, int]]:
    if family == "clique":
        return [(u, v) for u in range(size) for v in range(u + 1, size)]
    if family == "cycle":
        size = max(size, 4)
        return [(i, (i + 1) % size) for i in range(size)]
    raise GenerationError(f"unknown atom family {family!r}; use clique or cycle")


def gen_glued_instance(spec: GenSpec, atom_family: str = "clique", atoms: int = 3) -> GluedInstance:
    """Glue ``atoms`` atoms in sequence, each sharing a clique with the graph built so far.

    The shared clique is a vertex or an edge of the current graph (an edge
    only when both sides can spare one).  ``spec.n`` is the size of each atom.
    """
    rng = spec.rng()
    size = max(spec.n, 4 if atom_family == "cycle" else 1)
    edges = set(_atom_edges(atom_family, size))
    n = size
    members = [frozenset(range(n))]
    cutsets = []
    for _ in range(atoms - 1):
        # shared clique: a vertex, or an edge of the current graph
        cur_edges = sorted(edges)
        if rng.random() < 0.5 and cur_edges and size >= 3:
            shared = list(rng.choice(cur_edges))
        else:
            shared = [rng.randrange(n)]
        new_edges = _atom_edges(atom_family, size)
        # atom vertices 0..len(shared)-1 coincide with the shared clique;
        # those are adjacent within the atom (edge 0-1 exists in cliques and cycles)
        mapping = {i: shared[i] for i in range(len(shared))}
        for i in range(len(shared), size):
            mapping[i] = n
            n += 1
        for u, v in new_edges:
            a, b = mapping[u], mapping[v]
            edges.add((min(a, b), max(a, b)))
        cutsets.append(frozenset(shared))
        members.append(frozenset(mapping.values()))
    G = build_graph(n, sorted(edges), _weights(spec, n, rng))
    return GluedInstance(G, cutsets, members)


def gen_glued(spec: GenSpec, atom_family: str = "clique", atoms: int = 3) -> WeightedGraph:
    return gen_glued_instance(spec, atom_family, atoms).graph


def gen_prime_filtered(
    spec: GenSpec, forbidden: Iterable[Pattern | str] | str = (), attempts: int = 200
) -> WeightedGraph:
    """Rejection-sample filtered graphs until one is prime with at least 4 vertices."""
    if spec.n > 40:
        raise GenerationError("prime generation is limited to n <= 40")
    for attempt in range(attempts):
        G = gen_random_filtered(replace(spec, seed=spec.seed * 1_000_003 + attempt), forbidden)
        if G.n >= 4 and is_prime(G):
            return G
    raise GenerationError(f"no prime graph within {attempts} attempts for {spec}")


def _co_connected(P: Pattern) -> bool:
    return len(component_masks(P.graph().complement())) == 1


PLANTS = ("c5", "house", "c4")


def gen_composed(
    spec: GenSpec,
    forbidden: Iterable[Pattern | str] | str,
    piece: int = 40,
) -> WeightedGraph:
    """Large instances assembled from small certified pieces by disjoint union and join.

    Union keeps a class closed when every forbidden pattern is connected;
    join needs every pattern's complement connected too, and is used only
    then.  Pieces are grown around a planted C5, house or C4 where the class
    allows one, so the solver meets non-chordal prime parts.
    """
    pats = parse_patterns(forbidden)
    can_join = all(_co_connected(P) for P in pats)
    if not all(len(component_masks(P.graph())) == 1 for P in pats):
        raise GenerationError("composition needs connected forbidden patterns")
    rng = spec.rng(1)
    parts: list[WeightedGraph] = []
    total = 0
    i = 0
    while total < spec.n:
        size = min(piece, spec.n - total)
        sub = replace(spec, n=max(size, 1), seed=spec.seed * 7919 + i)
        g = None
        if size >= 6:
            plants = [q for q in PLANTS if all(find_induced(get_pattern(q).graph(), P) is None for P in pats)]
            if plants:
                g = gen_grown(replace(sub, plant=rng.choice(plants)), pats)
        if g is None:
            g = gen_random_filtered(sub, pats)
        g = _trim(g, spec.n - total)
        parts.append(g)
        total += g.n
        i += 1
    while len(parts) > 1:
        a = parts.pop(rng.randrange(len(parts)))
        b = parts.pop(rng.randrange(len(parts)))
        parts.append(_combine(a, b, join=can_join and rng.random() < 0.5))
    return parts[0].relabel_dense()


def _trim(G: WeightedGraph, cap: int) -> WeightedGraph:
    return G if G.n <= cap else G.induced_mask((1 << cap) - 1)


def _combine(a: WeightedGraph, b: WeightedGraph, join: bool) -> WeightedGraph:
    shift = a.n
    cross_b = a.full if join else 0
    cross_a = (b.full << shift) if join else 0
    adj = [x | cross_a for x in a.adj] + [(x << shift) | cross_b for x in b.adj]
    return WeightedGraph(adj, a.weights + b.weights)


def generate(spec: GenSpec) -> WeightedGraph:
    """Dispatch on ``spec.family``.

    Families: ``chordal``, ``glued`` (clique atoms), ``glued-cycle``,
    ``random`` (unfiltered), the filtered classes in ``FAMILIES``, their
    ``prime-`` variants, and ``composed-`` variants for large sizes.
    """
    fam = spec.family
    if fam == "chordal":
        return gen_chordal(spec)
    if fam == "glued":
        return gen_glued(spec, "clique")
    if fam == "glued-cycle":
        return gen_glued(spec, "cycle")
    if fam == "random":
        return gen_random_filtered(spec, ())
    if fam in FAMILIES:
        return gen_random_filtered(spec, FAMILIES[fam])
    if fam.startswith("prime-") and fam[6:] in FAMILIES:
        return gen_prime_filtered(spec, FAMILIES[fam[6:]])
    if fam.startswith("composed-") and fam[9:] in FAMILIES:
        return gen_composed(spec, FAMILIES[fam[9:]])
    raise GenerationError(f"unknown family {fam!r}")


def family_names() -> list[str]:
    names = ["chordal", "glued", "glued-cycle", "random"]
    for f in FAMILIES:
        names += [f, "prime-" + f, "composed-" + f]
    return names


def certify_family(G: WeightedGraph, family: str) -> bool:
    """Re-verify a generated graph's claimed class (exhaustive up to ``CERTIFY_LIMIT``)."""
    from .chordal import is_chordal

    base = family.split("-", 1)[1] if family.startswith(("prime-", "composed-")) else family
    if base == "chordal" or family == "glued":
        return is_chordal(G)
    if base in FAMILIES:
        ok = is_free(G, FAMILIES[base]).free
        if family.startswith("prime-"):
            ok = ok and is_prime(G)
        return ok
    return True
