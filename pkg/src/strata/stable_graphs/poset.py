"""The poset Q(g, n) of coarse stable graphs."""
from __future__ import annotations

from collections import deque

from .canonical import Key
from .enumerate import enumerate_stable_graphs
from .graph import StableGraph, contract_edge, genus0_splittings

_UPSETS: dict[Key, frozenset] = {}


def _moves(G: StableGraph):
    for k in range(G.num_edges):
        yield contract_edge(G, k)
    yield from genus0_splittings(G)


def q_upset(G: StableGraph) -> frozenset:
    """Canonical forms of every stable graph reachable from ``G`` by single
    edge contractions and by splitting a genus-0 vertex into two genus-0
    vertices joined by an edge."""
    key = G.canonical_form
    if key in _UPSETS:
        return _UPSETS[key]
    seen = {key}
    queue = deque([G])
    while queue:
        X = queue.popleft()
        for Y in _moves(X):
            k = Y.canonical_form
            if k not in seen:
                seen.add(k)
                queue.append(Y)
    result = frozenset(seen)
    _UPSETS[key] = result
    return result


def q_less_or_equal(G: StableGraph, H: StableGraph) -> bool:
    """Decide ``G <=_Q H`` for coarse graphs of the same type."""
    for X in (G, H):
        if not X.is_coarse():
            raise ValueError(f"{X} is not fixed by coarsening")
    if (G.g, G.n) != (H.g, H.n):
        raise ValueError("graphs have different (g, n)")
    return H.canonical_form in q_upset(G)


def q_poset(g: int, n: int) -> tuple[list[StableGraph], list[list[bool]]]:
    """Elements of Q(g, n) sorted by canonical form and the matrix of ``<=_Q``."""
    elements = enumerate_stable_graphs(g, n, coarse_only=True)
    relation = [[q_less_or_equal(a, b) for b in elements] for a in elements]
    return elements, relation


def hasse_edges(relation: list[list[bool]]) -> list[tuple[int, int]]:
    """Covering pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
    m = len(relation)
    out = []
    for a in range(m):
        for b in range(m):
            if a == b or not relation[a][b]:
                continue
            if not any(c not in (a, b) and relation[a][c] and relation[c][b] for c in range(m)):
                out.append((a, b))
    return out
