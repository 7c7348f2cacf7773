from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .graph import VertexSet, WeightedGraph


class SolverError(Exception):
    """Base class; carries a trail of context frames added while unwinding."""

    def __init__(self, message: str, evidence: Any = None) -> None:
        super().__init__(message)
        self.message = message
        self.evidence = evidence
        self.trace: list[str] = []

    def add_context(self, frame: str) -> SolverError:
        self.trace.append(frame)
        return self

    def __str__(self) -> str:
        if not self.trace:
            return self.message
        return f"{self.message} [at {' <- '.join(self.trace)}]"


class ClassViolation(SolverError):
    """The input is outside the class a solver needs; ``evidence`` says why."""


class SizeCapExceeded(SolverError):
    pass


@dataclass
class SolveResult:
    """An independent set, reported in the *labels* of the solved graph."""

    chosen: VertexSet
    weight: int
    stats: Counter = field(default_factory=Counter)
    layer: str = ""
    certified: bool | None = None

    @classmethod
    def empty(cls) -> SolveResult:
        return cls(frozenset(), 0)

    def verify(self, G: WeightedGraph) -> bool:
        """Independent in ``G`` and weight matches."""
        ids = [G.index_of(lab) for lab in self.chosen]
        mask = 0
        for v in ids:
            mask |= 1 << v
        if any(G.adj[v] & mask for v in ids):
            return False
        return sum(G.weights[v] for v in ids) == self.weight


def merge_stats(*parts: Counter) -> Counter:
    total: Counter = Counter()
    for p in parts:
        total.update(p)
    return total
