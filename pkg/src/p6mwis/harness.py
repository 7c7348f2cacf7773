"""Randomised cross-checking of the layers against the exhaustive oracle."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .chordal import is_chordal
from .generators import (
    FAMILIES,
    LAYER_FAMILY,
    GenSpec,
    gen_chordal,
    gen_composed,
    gen_grown,
    gen_random_filtered,
)
from .graph import WeightedGraph
from .patterns import is_free
from .result import SolveResult
from .solvers import LAYERS, oracle_mwis
from .fileio import emit_instance


# patterns each class contains, planted so that instances are not mostly chordal
PLANTABLE = {
    "l1": (None, "c5"),
    "l2": (None, "c4", "c5"),
    "l3": (None, "c4", "house"),
    "l4": (None, "c4", "c5", "house"),
}


def fuzz_instance(layer: str, trial: int, nmax: int, seed: int) -> WeightedGraph:
    """A certified in-class instance with at most ``nmax`` vertices.

    Mixes three sources: vertex-by-vertex growth (optionally around a planted
    hole or house), witness-deletion filtering of a dense random graph, and
    unions/joins of small filtered pieces.
    """
    rng = random.Random(f"fuzz|{layer}|{seed}|{trial}")
    n = rng.randint(max(1, nmax // 3), nmax)
    spec_seed = rng.getrandbits(32)
    if layer in ("chordal", "oracle"):
        return gen_chordal(GenSpec("chordal", n, rng.uniform(0.1, 0.9), spec_seed))
    name = LAYER_FAMILY[layer]
    family = FAMILIES[name]
    roll = rng.random()
    if roll < 0.5:
        plant = rng.choice(PLANTABLE[layer])
        if plant is not None and n < 6:
            plant = None
        G = gen_grown(GenSpec(name, n, rng.uniform(0.2, 0.8), spec_seed, plant=plant), family)
    elif roll < 0.75:
        G = gen_random_filtered(GenSpec(name, n + 6, rng.uniform(0.5, 0.9), spec_seed), family)
    else:
        G = gen_composed(GenSpec(name, n, rng.uniform(0.3, 0.8), spec_seed), family, piece=max(3, nmax // 2))
    if G.n > nmax:
        G = G.induced_mask((1 << nmax) - 1).relabel_dense()
    return G


def certify_instance(G: WeightedGraph, layer: str) -> bool:
    if layer in ("chordal", "oracle"):
        return is_chordal(G)
    return is_free(G, FAMILIES[LAYER_FAMILY[layer]]).free


@dataclass
class FuzzOutcome:
    layer: str
    trials: int = 0
    failures: list[tuple[int, WeightedGraph, str]] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def check_against_oracle(G: WeightedGraph, res: SolveResult) -> str | None:
    """Describe the first disagreement with the oracle, or ``None``."""
    if not res.verify(G):
        return "returned set is not independent or its weight is misreported"
    ref = oracle_mwis(G)
    if ref.weight != res.weight:
        return f"weight {res.weight} but oracle found {ref.weight}"
    return None


def run_fuzz(
    layer: str,
    trials: int,
    nmax: int,
    seed: int,
    stop_on_failure: bool = True,
    counterexample: str | Path | None = None,
) -> FuzzOutcome:
    solve = LAYERS[layer]
    out = FuzzOutcome(layer)
    start = time.perf_counter()
    for t in range(trials):
        G = fuzz_instance(layer, t, nmax, seed)
        out.trials += 1
        if not certify_instance(G, layer):
            problem = "generator produced an out-of-class instance"
        else:
            res = solve(G)
            for k, v in res.stats.items():
                out.stats[k] = out.stats.get(k, 0) + v
            problem = check_against_oracle(G, res)
        if problem is not None:
            out.failures.append((t, G, problem))
            if counterexample is not None:
                Path(counterexample).write_text(
                    emit_instance(G, [f"fuzz layer={layer} seed={seed} trial={t}: {problem}"])
                )
            if stop_on_failure:
                break
    out.seconds = time.perf_counter() - start
    return out
