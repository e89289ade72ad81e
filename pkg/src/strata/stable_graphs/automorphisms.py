"""The group A_G of half-edge permutations respecting a stable graph."""
from __future__ import annotations

from itertools import permutations, product
from math import factorial

from .canonical import multiplicities
from .graph import StableGraph


def _fixed_half_edges(G: StableGraph, exclude_genus0_loops: bool) -> set[int]:
    fixed = set(G.legs)
    if exclude_genus0_loops:
        for (a, b), (u, v) in zip(G.edges, G.edge_vertices):
            if u == v and G.genus[u] == 0:
                fixed.update((a, b))
    return fixed


def vertex_automorphisms(G: StableGraph, exclude_genus0_loops: bool = True) -> list[tuple[int, ...]]:
    """Vertex permutations preserving genus, legs and edge multiplicities.

    With ``exclude_genus0_loops`` a genus-0 vertex carrying a loop is fixed,
    because the loop's half-edges are not permuted.
    """
    nv = G.num_vertices
    adj = multiplicities(nv, G.edge_vertices)
    pinned = [bool(G.leg_labels[v]) or (exclude_genus0_loops and G.genus[v] == 0 and G.loops[v] > 0) for v in range(nv)]
    inv = [(G.genus[v], G.valence[v], G.loops[v], v if pinned[v] else -1) for v in range(nv)]
    cells: dict = {}
    for v in range(nv):
        cells.setdefault(inv[v], []).append(v)
    groups = list(cells.values())
    out = []
    for choice in product(*(permutations(c) for c in groups)):
        sigma = [0] * nv
        for cell, image in zip(groups, choice):
            for a, b in zip(cell, image):
                sigma[a] = b
        if all(adj[sigma[u]][sigma[w]] == m for u in range(nv) for w, m in adj[u].items()):
            out.append(tuple(sigma))
    return out


def automorphism_group_order(G: StableGraph, exclude_genus0_loops: bool = True) -> int:
    """Order of A_G.

    External labels are fixed.  By default the half-edges of loops at
    genus-0 vertices are left out of the permuted set; pass
    ``exclude_genus0_loops=False`` to permute every internal half-edge.
    """
    adj = multiplicities(G.num_vertices, G.edge_vertices)
    edge_factor = 1
    for u in range(G.num_vertices):
        for w, m in adj[u].items():
            if u < w:
                edge_factor *= factorial(m)
            elif u == w and not (exclude_genus0_loops and G.genus[u] == 0):
                edge_factor *= factorial(m) * 2**m
    return len(vertex_automorphisms(G, exclude_genus0_loops)) * edge_factor


def automorphism_group_order_bruteforce(G: StableGraph, exclude_genus0_loops: bool = True) -> int:
    """Count permutations of the designated half-edges directly."""
    fixed = _fixed_half_edges(G, exclude_genus0_loops)
    moving = [h for h in range(G.num_half_edges) if h not in fixed]
    blocks = {frozenset(b): g for b, g in zip(G.vertices, G.genus)}
    pairs = {frozenset(e) for e in G.edges}
    count = 0
    for image in permutations(moving):
        sigma = dict(zip(moving, image))
        for h in fixed:
            sigma[h] = h
        if all(blocks.get(frozenset(sigma[h] for h in b)) == g for b, g in blocks.items()) and all(
            frozenset(sigma[h] for h in e) in pairs for e in pairs
        ):
            count += 1
    return count
