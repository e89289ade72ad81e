"""Canonical forms for decorated multigraphs.

A stable graph is determined up to half-edge relabelling by its vertex-level
data: vertex genera, leg decorations per vertex, and the multiset of edges
(loops included).  Two half-edge structures are isomorphic exactly when
these vertex-level data are, so the canonical form is computed there by
colour refinement followed by individualization over the remaining ties.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

Key = tuple


def multiplicities(num_vertices: int, edges: Iterable[tuple[int, int]]) -> list[Counter]:
    """Per-vertex neighbour multiplicities; loops are stored under the vertex itself."""
    adj = [Counter() for _ in range(num_vertices)]
    for u, v in edges:
        adj[u][v] += 1
        if u != v:
            adj[v][u] += 1
    return adj


def _refine(colours: list[int], nbrs: list[list[tuple[int, int]]]) -> list[int]:
    ncls = len(set(colours))
    while True:
        sigs = [(colours[v], tuple(sorted((colours[u], m) for u, m in nbrs[v]))) for v in range(len(colours))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colours = [ranks[s] for s in sigs]
        if len(ranks) == ncls:
            return colours
        ncls = len(ranks)


def canonical_key(genus: Sequence[int], edges: Iterable[tuple[int, int]], legs: Sequence[Sequence]) -> Key:
    """Canonical form of a vertex-decorated multigraph.

    ``legs[v]`` lists the leg decorations (labels, or colours when legs are
    considered only up to relabelling within a class) at vertex ``v``.
    Decorations must be mutually comparable.
    """
    n = len(genus)
    edges = list(edges)
    adj = multiplicities(n, edges)
    loops = [adj[v][v] for v in range(n)]
    nbrs = [[(u, m) for u, m in adj[v].items() if u != v] for v in range(n)]
    leg_data = [tuple(sorted(legs[v])) for v in range(n)]
    vdata = [(genus[v], leg_data[v], loops[v], sum(m for _, m in nbrs[v])) for v in range(n)]
    ranks = {d: i for i, d in enumerate(sorted(set(vdata)))}
    colours = _refine([ranks[d] for d in vdata], nbrs)

    best: list[Key | None] = [None]

    def encode(cols: list[int]) -> Key:
        order = sorted(range(n), key=cols.__getitem__)
        pos = {v: i for i, v in enumerate(order)}
        verts = tuple(vdata[v][:3] for v in order)
        es = []
        for v in range(n):
            for u, m in nbrs[v]:
                if pos[v] < pos[u]:
                    es.append((pos[v], pos[u], m))
        return (verts, tuple(sorted(es)))

    def search(cols: list[int]) -> None:
        counts = Counter(cols)
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            key = encode(cols)
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        for v in range(n):
            if cols[v] == target:
                c2 = [2 * c for c in cols]
                c2[v] -= 1
                search(_refine(c2, nbrs))

    search(colours)
    return best[0]
