"""Exact weighted independent set solvers for the (P6, banner)-free hierarchy.

Layers, from the bottom up:

* ``frank_mwis``              chordal graphs
* ``solve_p6c4``         (L1) (P6, C4)-free: atoms, each solved as nearly chordal
* ``solve_p6_banner_house`` (L2) (P6, banner, house)-free: prime quotients go to L1
* ``solve_p6_banner_c5``  (L3) (P6, banner, C5)-free: prime quotients, atoms, nearly L2
* ``solve_p6_banner``     (L4) (P6, banner)-free: prime quotients, atoms, nearly L3

Every layer is exact on *any* graph for which its inner solvers are exact;
class membership only determines whether the inner solvers stay inside
their own classes.  The single place where that can fail is the L1 atom
solver, which falls back to a trivial solve for graphs without three
pairwise nonadjacent vertices and otherwise to the exponential oracle; both
fallbacks are counted in the result stats.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Callable
from functools import lru_cache

from .chordal import frank_mwis, is_chordal
from .cliquesep import atom_decomposition, fold_mwis
from .graph import WeightedGraph, bits, component_masks
from .modular import mwis_via_md
from .patterns import CERTIFY_LIMIT, alpha_at_most_2, find_induced, is_free
from .result import ClassViolation, SizeCapExceeded, SolveResult, SolverError

log = logging.getLogger(__name__)

ORACLE_LIMIT = 30
CACHE_SIZE = 1 << 15

Solver = Callable[[WeightedGraph], SolveResult]


def oracle_mwis(G: WeightedGraph) -> SolveResult:
    """Branch and bound over include/exclude decisions, pruned by remaining weight."""
    n = G.n
    if n > ORACLE_LIMIT:
        raise SizeCapExceeded(f"oracle is capped at {ORACLE_LIMIT} vertices, got {n}")
    w = G.weights
    closed = [G.adj[v] | 1 << v for v in range(n)]
    best_w = -1
    best_set = 0

    def mask_weight(mask: int) -> int:
        return sum(w[v] for v in bits(mask))

    def search(mask: int, cur: int, picked: int, remaining: int) -> None:
        nonlocal best_w, best_set
        if cur + remaining <= best_w:
            return
        # vertices with no neighbour left are always taken
        free = 0
        for v in bits(mask):
            if not G.adj[v] & mask:
                free |= 1 << v
        if free:
            gain = mask_weight(free)
            mask &= ~free
            cur += gain
            picked |= free
            remaining -= gain
        if not mask:
            if cur > best_w:
                best_w, best_set = cur, picked
            return
        v = max(bits(mask), key=lambda x: ((G.adj[x] & mask).bit_count(), w[x], -x))
        drop = closed[v] & mask
        search(mask & ~drop, cur + w[v], picked | 1 << v, remaining - mask_weight(drop))
        search(mask & ~(1 << v), cur, picked, remaining - w[v])

    search(G.full, 0, 0, sum(w))
    picked = [v for v in bits(best_set) if w[v] > 0]
    return SolveResult(
        frozenset(G.labels[v] for v in picked),
        sum(w[v] for v in picked),
        Counter(oracle_calls=1),
        layer="oracle",
    )


def nearly_c_mwis(H: WeightedGraph, c_solver: Solver, level: str = "") -> SolveResult:
    """Best over all pivots ``v`` of ``w(v) + opt(H - N[v])``, or the empty set."""
    best = SolveResult.empty()
    stats: Counter = Counter()
    key = f"{level}.nearly_c_pivots" if level else "nearly_c_pivots"
    for v in range(H.n):
        stats[key] += 1
        rest = H.induced_mask(H.full & ~(H.adj[v] | 1 << v))
        try:
            sub = c_solver(rest)
        except SolverError as e:
            raise e.add_context(f"{level or 'nearly-C'} pivot {H.labels[v]}")
        stats.update(sub.stats)
        total = H.weights[v] + sub.weight
        if total > best.weight:
            best = SolveResult(sub.chosen | {H.labels[v]}, total)
    best.stats = stats
    return best


def _per_component(G: WeightedGraph, solve: Solver) -> SolveResult:
    if G.n == 0:
        return SolveResult.empty()
    comps = component_masks(G)
    if len(comps) == 1:
        return solve(G)
    chosen: set[int] = set()
    weight = 0
    stats: Counter = Counter()
    for c in comps:
        res = solve(G.induced_mask(c))
        chosen |= res.chosen
        weight += res.weight
        stats.update(res.stats)
    return SolveResult(frozenset(chosen), weight, stats)


def _trivial(G: WeightedGraph) -> SolveResult | None:
    if G.n == 0:
        return SolveResult.empty()
    if G.n == 1:
        return SolveResult(frozenset(G.labels) if G.weights[0] > 0 else frozenset(), G.weights[0])
    return None


def _chordal_shortcut(G: WeightedGraph, level: str) -> SolveResult | None:
    if is_chordal(G):
        res = frank_mwis(G)
        res.stats[f"{level}.chordal_shortcuts"] += 1
        return res
    return None


def _alpha2_solve(G: WeightedGraph) -> SolveResult:
    # best single vertex or best nonadjacent pair
    best_w, best = 0, ()
    for u in range(G.n):
        if G.weights[u] > best_w:
            best_w, best = G.weights[u], (u,)
        for v in bits(~G.adj[u] & G.full & ~((1 << (u + 1)) - 1)):
            if G.weights[u] + G.weights[v] > best_w:
                best_w, best = G.weights[u] + G.weights[v], (u, v)
    return SolveResult(frozenset(G.labels[v] for v in best), best_w)


@lru_cache(maxsize=CACHE_SIZE)
def _l1_atom(X: WeightedGraph) -> SolveResult:
    done = _trivial(X) or _chordal_shortcut(X, "L1")
    if done is not None:
        return done
    try:
        return nearly_c_mwis(X, frank_mwis, "L1")
    except ClassViolation as e:
        if alpha_at_most_2(X):
            res = _alpha2_solve(X)
            res.stats["L1.fallback_alpha2"] += 1
            return res
        log.debug("L1 atom of %d vertices is neither nearly chordal nor alpha<=2: %s", X.n, e)
        res = oracle_mwis(X)
        res.stats["L1.fallback_oracle"] += 1
        return res


def _l1_component(G: WeightedGraph) -> SolveResult:
    done = _trivial(G) or _chordal_shortcut(G, "L1")
    if done is not None:
        return done
    return fold_mwis(atom_decomposition(G), _l1_atom, "L1")


@lru_cache(maxsize=CACHE_SIZE)
def _l1(G: WeightedGraph) -> SolveResult:
    return _per_component(G, _l1_component)


def _l2_prime(Q: WeightedGraph) -> SolveResult:
    try:
        return _l1(Q)
    except SolverError as e:
        if Q.n <= CERTIFY_LIMIT:
            w = find_induced(Q, "c4")
            if w is not None:
                e.add_context(
                    "prime quotient contains an induced C4 on labels "
                    f"{[Q.labels[x] for x in w.mapping]}; a prime (banner, house)-free graph cannot"
                )
        raise


@lru_cache(maxsize=CACHE_SIZE)
def _l2(G: WeightedGraph) -> SolveResult:
    done = _trivial(G) or _chordal_shortcut(G, "L2")
    if done is not None:
        return done
    return mwis_via_md(G, _l2_prime)


def _atoms_nearly(inner: Solver, level: str) -> Solver:
    def atom_solver(X: WeightedGraph) -> SolveResult:
        return _trivial(X) or nearly_c_mwis(X, inner, level)

    def component(C: WeightedGraph) -> SolveResult:
        done = _trivial(C)
        if done is not None:
            return done
        return fold_mwis(atom_decomposition(C), atom_solver, level)

    def prime_solver(Q: WeightedGraph) -> SolveResult:
        return _per_component(Q, component)

    return prime_solver


_l3_prime = _atoms_nearly(lambda G: _l2(G), "L3")


@lru_cache(maxsize=CACHE_SIZE)
def _l3(G: WeightedGraph) -> SolveResult:
    done = _trivial(G) or _chordal_shortcut(G, "L3")
    if done is not None:
        return done
    return mwis_via_md(G, _l3_prime)


_l4_prime = _atoms_nearly(lambda G: _l3(G), "L4")


@lru_cache(maxsize=CACHE_SIZE)
def _l4(G: WeightedGraph) -> SolveResult:
    done = _trivial(G) or _chordal_shortcut(G, "L4")
    if done is not None:
        return done
    return mwis_via_md(G, _l4_prime)


def clear_caches() -> None:
    for f in (_l1_atom, _l1, _l2, _l3, _l4):
        f.cache_clear()


def _public(res: SolveResult, layer: str) -> SolveResult:
    return SolveResult(res.chosen, res.weight, Counter(res.stats), layer=layer, certified=res.certified)


def solve_p6c4(G: WeightedGraph) -> SolveResult:
    return _public(_l1(G), "l1")


def solve_p6_banner_house(G: WeightedGraph) -> SolveResult:
    return _public(_l2(G), "l2")


def solve_p6_banner_c5(G: WeightedGraph) -> SolveResult:
    return _public(_l3(G), "l3")


def solve_p6_banner(G: WeightedGraph) -> SolveResult:
    return _public(_l4(G), "l4")


def solve_chordal(G: WeightedGraph) -> SolveResult:
    return _public(frank_mwis(G), "chordal")


LAYERS: dict[str, Solver] = {
    "chordal": solve_chordal,
    "l1": solve_p6c4,
    "l2": solve_p6_banner_house,
    "l3": solve_p6_banner_c5,
    "l4": solve_p6_banner,
    "oracle": oracle_mwis,
}

# forbidden patterns that define each layer's input class
LAYER_CLASSES: dict[str, tuple[str, ...]] = {
    "l1": ("p6", "c4"),
    "l2": ("p6", "banner", "house"),
    "l3": ("p6", "banner", "c5"),
    "l4": ("p6", "banner"),
}


def certify_layer(G: WeightedGraph, layer: str, sampled: bool | None = None) -> bool:
    """Check that ``G`` lies in ``layer``'s class; raise ``ClassViolation`` otherwise.

    Returns whether the check was exhaustive.
    """
    if layer == "chordal":
        if not is_chordal(G):
            frank_mwis(G)  # raises with non-chordality evidence
        return True
    if layer == "oracle":
        return True
    report = is_free(G, LAYER_CLASSES[layer], sampled=sampled)
    if not report.free:
        name, w = next(iter(sorted(report.witnesses.items())))
        raise ClassViolation(
            f"input contains an induced {name} on vertices {[G.labels[x] for x in w.mapping]}; "
            f"layer {layer} needs a {'/'.join(LAYER_CLASSES[layer])}-free graph",
            evidence={"pattern": name, "vertices": [G.labels[x] for x in w.mapping]},
        )
    return report.certified


def solve_layer(G: WeightedGraph, layer: str, mode: str = "permissive") -> SolveResult:
    """Run one named layer; ``strict`` mode certifies the class first."""
    if layer == "auto":
        return auto_solve(G, mode)
    if layer not in LAYERS:
        raise ValueError(f"unknown layer {layer!r}; choose from auto, {', '.join(LAYERS)}")
    certified = certify_layer(G, layer) if mode == "strict" else None
    res = LAYERS[layer](G)
    res.layer = layer
    res.certified = certified
    return res


def auto_solve(G: WeightedGraph, mode: str = "strict") -> SolveResult:
    """Dispatch to the narrowest layer whose class contains ``G``.

    Strict mode certifies class membership by pattern search (random probing
    above ``CERTIFY_LIMIT`` vertices, flagged ``certified=False``) and rejects
    graphs containing a P6 or a banner.  Permissive mode only tests
    chordality and otherwise trusts the caller, running L4.
    """
    if mode not in ("strict", "permissive"):
        raise ValueError(f"mode must be strict or permissive, got {mode!r}")
    if G.n == 0 or is_chordal(G):
        res = solve_chordal(G)
        res.certified = True
        return res
    if mode == "permissive":
        res = solve_p6_banner(G)
        res.certified = False
        return res
    sampled = G.n > CERTIFY_LIMIT
    if sampled:
        log.warning("graph has %d vertices; class membership is only sampled, not certified", G.n)
    report = is_free(G, ("p6", "banner", "c4", "house", "c5"), sampled=sampled)
    found = report.witnesses
    for bad in ("p6", "banner"):
        if bad in found:
            w = found[bad]
            raise ClassViolation(
                f"input contains an induced {bad} on vertices {[G.labels[x] for x in w.mapping]}; "
                "not (P6, banner)-free",
                evidence={"pattern": bad, "vertices": [G.labels[x] for x in w.mapping]},
            )
    if "c4" not in found:
        res = solve_p6c4(G)
    elif "house" not in found:
        res = solve_p6_banner_house(G)
    elif "c5" not in found:
        res = solve_p6_banner_c5(G)
    else:
        res = solve_p6_banner(G)
    res.certified = not sampled
    return res
