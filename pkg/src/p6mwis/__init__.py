"""Exact maximum weight independent set for (P6, banner)-free graphs."""

from .chordal import frank_mwis, is_chordal, mcs_order, verify_peo
from .cliquesep import AtomTree, atom_decomposition, fold_mwis, mcsm
from .graph import (
    GraphError,
    WeightedGraph,
    build_graph,
    closed_neighborhood,
    components,
    induced_subgraph,
    is_independent,
    neighborhood_of_set,
    non_neighborhood_of_set,
    set_weight,
)
from .modular import MDNode, is_module, is_prime, md_tree, mwis_via_md
from .patterns import PATTERNS, Pattern, PatternWitness, find_induced, is_clique, is_free
from .result import ClassViolation, SizeCapExceeded, SolveResult, SolverError
from .solvers import (
    auto_solve,
    nearly_c_mwis,
    oracle_mwis,
    solve_layer,
    solve_p6_banner,
    solve_p6_banner_c5,
    solve_p6_banner_house,
    solve_p6c4,
)

__all__ = [
    "PATTERNS",
    "AtomTree",
    "ClassViolation",
    "GraphError",
    "MDNode",
    "Pattern",
    "PatternWitness",
    "SizeCapExceeded",
    "SolveResult",
    "SolverError",
    "WeightedGraph",
    "atom_decomposition",
    "auto_solve",
    "build_graph",
    "closed_neighborhood",
    "components",
    "find_induced",
    "fold_mwis",
    "frank_mwis",
    "induced_subgraph",
    "is_chordal",
    "is_clique",
    "is_free",
    "is_independent",
    "is_module",
    "is_prime",
    "mcs_order",
    "mcsm",
    "md_tree",
    "mwis_via_md",
    "nearly_c_mwis",
    "neighborhood_of_set",
    "non_neighborhood_of_set",
    "oracle_mwis",
    "set_weight",
    "solve_layer",
    "solve_p6_banner",
    "solve_p6_banner_c5",
    "solve_p6_banner_house",
    "solve_p6c4",
    "verify_peo",
]
