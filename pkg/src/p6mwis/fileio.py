"""DIMACS-style instance files with a node-weight extension.

::

    c comment
    p mwis <n> <m>
    n <vertex> <weight>      (optional; weight defaults to 1)
    e <u> <v>

Vertex ids in files are 1-based; parsed graphs carry them as labels.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import GraphError, WeightedGraph, bits, build_graph
from .result import SolveResult


class InstanceError(ValueError):
    def __init__(self, lineno: int | None, message: str) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def parse_instance(data: bytes | str) -> WeightedGraph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    header = None
    weights: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise InstanceError(lineno, "duplicate 'p' line")
            if seen_data:
                raise InstanceError(lineno, "'p' line must come before vertex and edge lines")
            if len(parts) != 4 or parts[1] != "mwis":
                raise InstanceError(lineno, f"malformed header {line!r}; expected 'p mwis <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise InstanceError(lineno, f"non-integer counts in header {line!r}") from None
            if n < 0 or m < 0:
                raise InstanceError(lineno, "negative counts in header")
            header = (n, m)
            continue
        seen_data = True
        if header is None:
            raise InstanceError(lineno, "missing 'p mwis <n> <m>' header before data")
        n = header[0]
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise InstanceError(lineno, f"non-integer field in {line!r}") from None
        if tag == "n":
            if len(nums) != 2:
                raise InstanceError(lineno, f"expected 'n <vertex> <weight>', got {line!r}")
            v, w = nums
            if not 1 <= v <= n:
                raise InstanceError(lineno, f"vertex {v} out of range 1..{n}")
            if w < 0:
                raise InstanceError(lineno, f"negative weight {w} for vertex {v}")
            if v in weights:
                raise InstanceError(lineno, f"weight for vertex {v} given twice")
            weights[v] = w
        elif tag == "e":
            if len(nums) != 2:
                raise InstanceError(lineno, f"expected 'e <u> <v>', got {line!r}")
            u, v = nums
            for x in (u, v):
                if not 1 <= x <= n:
                    raise InstanceError(lineno, f"vertex {x} out of range 1..{n}")
            if u == v:
                raise InstanceError(lineno, f"self-loop on vertex {u}")
            edges.add((min(u, v), max(u, v)))
        else:
            raise InstanceError(lineno, f"unknown line type {tag!r}")
    if header is None:
        raise InstanceError(None, "missing 'p mwis <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise InstanceError(None, f"header declares {m} edges but {len(edges)} distinct edges were given")
    try:
        return build_graph(
            n,
            sorted((u - 1, v - 1) for u, v in edges),
            [weights.get(v, 1) for v in range(1, n + 1)],
            labels=list(range(1, n + 1)),
        )
    except GraphError as e:
        raise InstanceError(None, str(e)) from None


def read_instance(path: str | Path) -> WeightedGraph:
    return parse_instance(Path(path).read_bytes())


def emit_instance(G: WeightedGraph, comments: list[str] | None = None) -> str:
    """File text for ``G``; internal id ``i`` is written as ``i + 1``."""
    lines = [f"c {c}" for c in comments or []]
    lines.append(f"p mwis {G.n} {G.m}")
    lines.extend(f"n {v + 1} {G.weights[v]}" for v in range(G.n))
    for u in range(G.n):
        for v in bits(G.adj[u] >> (u + 1) << (u + 1)):
            lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def envelope(G: WeightedGraph, res: SolveResult, wall_time: float | None = None) -> dict:
    """Machine-readable result; refuses to describe an invalid solution."""
    if not res.verify(G):
        raise AssertionError("refusing to emit a result that is not an independent set of the stated weight")
    out = {
        "weight": res.weight,
        "chosen": sorted(res.chosen),
        "layer": res.layer,
        "certified": res.certified,
        "stats": dict(sorted(res.stats.items())),
    }
    if wall_time is not None:
        out["wall_time"] = round(wall_time, 6)
    return out


def dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
