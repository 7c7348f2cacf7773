"""Executable checks of the structural facts the solver stack relies on.

Given a pivot ``v`` and an induced house or C5 ``H`` avoiding ``N[v]``,
``compute_asets`` builds the sets used to show that the atom containing
``v`` cannot see ``H``: ``Q`` is the component of ``G - N[H]`` holding
``v``, ``A_i`` the outside vertices with exactly ``i`` neighbours on ``H``,
split into ``A_i^+`` (touching ``Q``) and ``A_i^-``.  ``A^+`` equals
``N(Q)`` and so separates ``H`` from ``Q``; the claim audits check, case by
case, that ``A^+`` is a clique.

House vertices are ``v1..v5`` with cycle ``v1v2v3v4`` and roof ``v5`` on
``v2, v3``; C5 vertices are ``v1..v5`` in cyclic order.  Position ``i`` of a
witness mapping is ``v_{i+1}``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .cliquesep import atom_decomposition
from .graph import VertexSet, WeightedGraph, bits, component_masks, neighborhood_mask
from .modular import PRIME, is_module_mask, is_prime, md_tree
from .patterns import (
    CERTIFY_LIMIT,
    PATTERNS,
    PatternWitness,
    find_induced,
    is_free,
    iter_induced,
    parse_patterns,
    verify_witness,
)


class AuditInputError(ValueError):
    pass


@dataclass
class ASetPartition:
    kind: str  # "house" or "c5"
    pivot: int
    H: tuple[int, ...]
    Q: int
    A_plus: list[int]  # index 1..5; index 0 unused
    A_minus: list[int]
    nbrs_on_H: dict[int, frozenset[int]]  # x -> {i : x adjacent to v_i}
    B1: int = 0
    B2: int = 0
    D: dict[int, int] = field(default_factory=dict)

    @property
    def plus(self) -> int:
        m = 0
        for a in self.A_plus[1:]:
            m |= a
        return m

    @property
    def minus(self) -> int:
        m = 0
        for a in self.A_minus[1:]:
            m |= a
        return m

    def to_dict(self, G: WeightedGraph) -> dict:
        lab = lambda mask: sorted(G.labels[x] for x in bits(mask))  # noqa: E731
        out = {
            "kind": self.kind,
            "pivot": G.labels[self.pivot],
            "H": [G.labels[x] for x in self.H],
            "Q": lab(self.Q),
            "A_plus": {str(i): lab(self.A_plus[i]) for i in range(1, 6)},
            "A_minus": {str(i): lab(self.A_minus[i]) for i in range(1, 6)},
        }
        if self.kind == "house":
            out["B1"], out["B2"] = lab(self.B1), lab(self.B2)
        else:
            out["D"] = {str(i): lab(m) for i, m in sorted(self.D.items())}
        return out


def compute_asets(G: WeightedGraph, v: int, H: PatternWitness) -> ASetPartition:
    kind = H.pattern.name
    if kind not in ("house", "c5"):
        raise AuditInputError(f"H must be a house or a C5, got {kind}")
    if not verify_witness(G, H):
        raise AuditInputError("H is not an induced copy of its pattern with the expected labelling")
    hmask = 0
    for x in H.mapping:
        hmask |= 1 << x
    if (G.adj[v] | 1 << v) & hmask:
        raise AuditInputError(f"H meets N[{G.labels[v]}]")
    nh_mask = neighborhood_mask(G, hmask)
    outside = G.full & ~(hmask | nh_mask)
    Q = next(c for c in component_masks(G, outside) if c >> v & 1)
    pos = {x: i + 1 for i, x in enumerate(H.mapping)}
    A_plus = [0] * 6
    A_minus = [0] * 6
    nbrs = {}
    for x in bits(nh_mask):
        on_h = frozenset(pos[y] for y in bits(G.adj[x] & hmask))
        nbrs[x] = on_h
        if G.adj[x] & Q:
            A_plus[len(on_h)] |= 1 << x
        else:
            A_minus[len(on_h)] |= 1 << x
    P = ASetPartition(kind, v, tuple(H.mapping), Q, A_plus, A_minus, nbrs)
    if kind == "house":
        for x in bits(A_plus[2]):
            if nbrs[x] == {2, 3}:
                P.B1 |= 1 << x
            elif nbrs[x] == {1, 4}:
                P.B2 |= 1 << x
    else:
        for i in range(1, 6):
            tri = {(i - 2) % 5 + 1, i, i % 5 + 1}
            P.D[i] = sum(1 << x for x in bits(A_plus[3]) if nbrs[x] == tri)
    _check_partition(G, P, hmask, nh_mask)
    return P


def _check_partition(G: WeightedGraph, P: ASetPartition, hmask: int, nh_mask: int) -> None:
    union = P.plus | P.minus
    total = sum(a.bit_count() for a in P.A_plus + P.A_minus)
    if union != nh_mask or total != nh_mask.bit_count():
        raise AssertionError("A-sets do not partition N(H)")
    if not P.Q >> P.pivot & 1 or len(component_masks(G, P.Q)) != 1 or P.Q & (hmask | nh_mask):
        raise AssertionError("Q is not a component of G - N[H] containing the pivot")
    if neighborhood_mask(G, P.Q) != P.plus:
        raise AssertionError("A+ differs from N(Q)")


@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str = ""
    witness: tuple[int, ...] = ()

    def to_dict(self, G: WeightedGraph) -> dict:
        return {
            "claim": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witness": [G.labels[x] for x in self.witness],
        }


@dataclass
class ClaimReport:
    kind: str
    pivot: int
    H: tuple[int, ...]
    claims: list[ClaimResult]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list[ClaimResult]:
        return [c for c in self.claims if not c.passed]

    def to_dict(self, G: WeightedGraph) -> dict:
        return {
            "kind": self.kind,
            "pivot": G.labels[self.pivot],
            "H": [G.labels[x] for x in self.H],
            "passed": self.passed,
            "claims": [c.to_dict(G) for c in self.claims],
            "notes": self.notes,
        }


def _nonadjacent_pair(G: WeightedGraph, mask: int) -> tuple[int, int] | None:
    for x in bits(mask):
        rest = mask & ~G.adj[x] & ~((1 << (x + 1)) - 1)
        if rest:
            return x, (rest & -rest).bit_length() - 1
    return None


def _clique_claim(G: WeightedGraph, name: str, mask: int) -> ClaimResult:
    pair = _nonadjacent_pair(G, mask)
    if pair is None:
        return ClaimResult(name, True)
    return ClaimResult(name, False, "nonadjacent pair", pair)


def _empty_claim(name: str, mask: int) -> ClaimResult:
    if not mask:
        return ClaimResult(name, True)
    x = (mask & -mask).bit_length() - 1
    return ClaimResult(name, False, "set is not empty", (x,))


def _shape_claim(P: ASetPartition, name: str, mask: int, allowed: list[set[int]]) -> ClaimResult:
    for x in bits(mask):
        if P.nbrs_on_H[x] not in allowed:
            got = ",".join(f"v{i}" for i in sorted(P.nbrs_on_H[x]))
            return ClaimResult(name, False, f"neighbours on H are {{{got}}}", (x,))
    return ClaimResult(name, True)


def _diagnose(G: WeightedGraph, family: tuple[str, ...], report: ClaimReport) -> None:
    if report.passed:
        return
    if G.n <= CERTIFY_LIMIT:
        free = is_free(G, family + ("k23",))
        for name, w in sorted(free.witnesses.items()):
            report.notes.append(
                f"input contains an induced {name} on {[G.labels[x] for x in w.mapping]}"
            )
    if not is_prime(G):
        report.notes.append("input is not prime (it has a nontrivial module)")
    if not report.notes:
        report.notes.append("input looks prime and in class: this is a genuine discrepancy")


def audit_house_claims(P: ASetPartition, G: WeightedGraph) -> ClaimReport:
    if P.kind != "house":
        raise AuditInputError("house claims need a house partition")
    ap = P.A_plus
    claims = [
        _empty_claim("A1+ is empty", ap[1]),
        _shape_claim(P, "A2+ sees {v2,v3} or {v1,v4}", ap[2], [{2, 3}, {1, 4}]),
        ClaimResult("B1 and B2 not both nonempty", not (P.B1 and P.B2)),
        _shape_claim(P, "A3+ sees {v2,v3,v5}", ap[3], [{2, 3, 5}]),
        _shape_claim(P, "A4+ sees {v1,v2,v3,v4}", ap[4], [{1, 2, 3, 4}]),
        _clique_claim(G, "A+ minus B2 is a clique", P.plus & ~P.B2),
        _clique_claim(G, "B2 is a clique", P.B2),
        _clique_claim(G, "A+ is a clique", P.plus),
    ]
    if P.B1 and P.B2:
        claims[2].detail = "B1 and B2 both nonempty"
        claims[2].witness = ((P.B1 & -P.B1).bit_length() - 1, (P.B2 & -P.B2).bit_length() - 1)
    report = ClaimReport("house", P.pivot, P.H, claims)
    _diagnose(G, ("p6", "banner", "c5"), report)
    return report


def _complete_claim(G: WeightedGraph, name: str, a: int, b: int) -> ClaimResult:
    for x in bits(a):
        missing = b & ~G.adj[x] & ~(1 << x)
        if missing:
            return ClaimResult(name, False, "nonadjacent pair", (x, (missing & -missing).bit_length() - 1))
    return ClaimResult(name, True)


def audit_c5_claims(P: ASetPartition, G: WeightedGraph) -> ClaimReport:
    if P.kind != "c5":
        raise AuditInputError("C5 claims need a C5 partition")
    ap = P.A_plus
    triples = [{(i - 2) % 5 + 1, i, i % 5 + 1} for i in range(1, 6)]
    d_union = 0
    for m in P.D.values():
        d_union |= m
    claims = [
        _empty_claim("A1+, A2+ and A4+ are empty", ap[1] | ap[2] | ap[4]),
        _shape_claim(P, "A3+ sees three consecutive cycle vertices", ap[3], triples),
        ClaimResult("D1..D5 partition A3+", d_union == ap[3]),
        _clique_claim(G, "A3+ is a clique", ap[3]),
        _clique_claim(G, "A5+ is a clique", ap[5]),
        _complete_claim(G, "A3+ is complete to A5+", ap[3], ap[5]),
        _clique_claim(G, "A+ is a clique", P.plus),
    ]
    report = ClaimReport("c5", P.pivot, P.H, claims)
    _diagnose(G, ("p6", "banner"), report)
    return report


def verify_nearly(
    G: WeightedGraph, family: Iterable[str] | str
) -> tuple[bool, tuple[int, PatternWitness] | None]:
    """Is ``G - N[v]`` free of ``family`` for every vertex ``v``?

    On failure returns the first offending pivot with a witness in ``G``'s ids.
    """
    pats = parse_patterns(family)
    for v in range(G.n):
        rest = G.full & ~(G.adj[v] | 1 << v)
        for P in pats:
            w = find_induced(G, P, rest)
            if w is not None:
                return False, (v, w)
    return True, None


def iter_asets(G: WeightedGraph, kind: str, pivot: int | None = None) -> Iterator[ASetPartition]:
    """Partitions for every pivot and every labelled embedding of the pattern avoiding it."""
    P = PATTERNS[kind]
    pivots = range(G.n) if pivot is None else [pivot]
    for v in pivots:
        rest = G.full & ~(G.adj[v] | 1 << v)
        for w in iter_induced(G, P, rest):
            yield compute_asets(G, v, w)


@dataclass
class ClaimsSummary:
    kind: str
    checked: int = 0
    failures: list[ClaimReport] = field(default_factory=list)
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, G: WeightedGraph) -> dict:
        return {
            "kind": self.kind,
            "checked": self.checked,
            "passed": self.passed,
            "truncated": self.truncated,
            "failures": [r.to_dict(G) for r in self.failures],
        }


def audit_claims(
    G: WeightedGraph, kind: str, pivot: int | None = None, limit: int | None = None
) -> ClaimsSummary:
    """Run the house or C5 claim suite over every (pivot, embedding) pair."""
    check = audit_house_claims if kind == "house" else audit_c5_claims
    summary = ClaimsSummary(kind)
    for P in iter_asets(G, kind, pivot):
        if limit is not None and summary.checked >= limit:
            summary.truncated = True
            break
        summary.checked += 1
        report = check(P, G)
        if not report.passed:
            summary.failures.append(report)
    return summary


@dataclass
class LemmaCheck:
    name: str
    applicable: bool
    holds: bool | None = None
    reason: str = ""
    witness: PatternWitness | None = None

    def to_dict(self, G: WeightedGraph) -> dict:
        return {
            "lemma": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_dict(G),
        }


@dataclass
class LemmaReport:
    prime: bool
    module: VertexSet | None
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(c.holds is not False for c in self.checks)

    def to_dict(self, G: WeightedGraph) -> dict:
        return {
            "prime": self.prime,
            "module": None if self.module is None else sorted(G.labels[x] for x in self.module),
            "checks": [c.to_dict(G) for c in self.checks],
        }


def _nontrivial_module(G: WeightedGraph) -> int | None:
    if G.n < 3:
        return None
    root = md_tree(G)
    for child in root.children:
        if child.mask & (child.mask - 1):
            return child.mask
    if root.kind == PRIME:
        return None
    # all children are single vertices and there are at least three of them
    return root.children[0].mask | root.children[1].mask


def audit_lemmas(G: WeightedGraph) -> LemmaReport:
    """Prime (banner, house)-free graphs have no C4; prime banner-free graphs have no K2,3."""
    module = _nontrivial_module(G)
    prime = module is None
    if module is not None and not is_module_mask(G, module):
        raise AssertionError("modular decomposition returned a non-module")
    banner = find_induced(G, "banner")
    house = find_induced(G, "house")
    checks = []
    for name, needs, target in (
        ("prime (banner, house)-free graphs are C4-free", {"banner": banner, "house": house}, "c4"),
        ("prime banner-free graphs are K2,3-free", {"banner": banner}, "k23"),
    ):
        if not prime:
            checks.append(LemmaCheck(name, False, reason="graph is not prime"))
            continue
        present = [k for k, w in needs.items() if w is not None]
        if present:
            checks.append(LemmaCheck(name, False, reason=f"graph contains {', '.join(present)}"))
            continue
        w = find_induced(G, target)
        if w is None:
            checks.append(LemmaCheck(name, True, True))
        else:
            checks.append(
                LemmaCheck(name, True, False, reason=f"found an induced {target}; graph is prime and free", witness=w)
            )
    return LemmaReport(prime, None if module is None else frozenset(bits(module)), checks)


@dataclass
class AtomAudit:
    """Nearly-C checks on every atom of a graph plus the claim suite on the graph."""

    kind: str
    atoms: int
    nearly_ok: bool
    counterexample: tuple[int, int, PatternWitness] | None
    claims: ClaimsSummary

    @property
    def passed(self) -> bool:
        return self.nearly_ok and self.claims.passed


def audit_atoms(G: WeightedGraph, kind: str, pivot: int | None = None, limit: int | None = None) -> AtomAudit:
    """``kind='house'`` checks atoms are nearly house-free; ``'c5'`` nearly C5-free."""
    atoms = 0
    counter = None
    for comp in component_masks(G):
        T = atom_decomposition(G.induced_mask(comp))
        for i in range(len(T)):
            atoms += 1
            A = T.atom(i)
            ok, bad = verify_nearly(A, (kind,))
            if not ok and counter is None:
                v, w = bad
                ids = tuple(G.index_of(A.labels[x]) for x in range(A.n))
                counter = (i, ids[v], w.relabel(ids))
    claims = audit_claims(G, kind, pivot, limit)
    return AtomAudit(kind, atoms, counter is None, counter, claims)
