"""Stable graphs, their coarsening poset, automorphisms and enumeration."""
from .automorphisms import automorphism_group_order, automorphism_group_order_bruteforce, vertex_automorphisms
from .canonical import canonical_key
from .enumerate import BudgetExceeded, default_budget, enumerate_stable_graphs, skeletons
from .graph import (
    StableGraph,
    coarsen,
    contract_edge,
    contract_edges,
    genus0_splittings,
    is_valid,
    s_less,
    s_vector,
    s_vector_key,
    stratum_dimension,
    validate,
)
from .poset import hasse_edges, q_less_or_equal, q_poset, q_upset

__all__ = [
    "BudgetExceeded",
    "StableGraph",
    "automorphism_group_order",
    "automorphism_group_order_bruteforce",
    "canonical_key",
    "coarsen",
    "contract_edge",
    "contract_edges",
    "default_budget",
    "enumerate_stable_graphs",
    "genus0_splittings",
    "hasse_edges",
    "is_valid",
    "q_less_or_equal",
    "q_poset",
    "q_upset",
    "s_less",
    "s_vector",
    "s_vector_key",
    "skeletons",
    "stratum_dimension",
    "validate",
    "vertex_automorphisms",
]
