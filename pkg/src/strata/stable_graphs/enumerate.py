"""Enumeration of stable graphs up to isomorphism.

Graphs are generated in three stages: leg-free skeletons (genus-decorated
connected multigraphs, recursing over the number of edges), leg-count
vectors on each skeleton, and finally label assignments.  Each stage is
deduplicated by canonical form.
"""
from __future__ import annotations

import os
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .canonical import canonical_key
from .graph import StableGraph, stratum_dimension

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration ran past its budget; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def default_budget() -> int:
    raw = os.environ.get("STRATA_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("STRATA_BUDGET must be positive")
    return value


def connected_multigraphs(
    num_vertices: int,
    num_edges: int,
    max_degree: Sequence[int] | None = None,
    allowed: Callable[[int, int], bool] | None = None,
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Connected multigraphs with loops on labelled vertices, as sorted edge tuples."""
    pairs = [(u, v) for u in range(num_vertices) for v in range(u, num_vertices) if allowed is None or allowed(u, v)]
    cap = list(max_degree) if max_degree is not None else [2 * num_edges] * num_vertices
    deg = [0] * num_vertices
    chosen: list[tuple[int, int]] = []

    def connected() -> bool:
        parent = list(range(num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in chosen:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(num_vertices)}) == 1

    def rec(start: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if len(chosen) == num_edges:
            if connected():
                yield tuple(chosen)
            return
        for k in range(start, len(pairs)):
            u, v = pairs[k]
            if deg[u] + 1 > cap[u] or deg[v] + 1 > cap[v] or (u == v and deg[u] + 2 > cap[u]):
                continue
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            yield from rec(k)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1

    yield from rec(0)


def _genus_profiles(total: int, length: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    cap = total if cap is None else cap
    if length == 0:
        yield ()
        return
    for first in range(min(cap, total), -1, -1):
        for rest in _genus_profiles(total - first, length - 1, first):
            yield (first,) + rest


def skeletons(
    g: int,
    num_vertices: int,
    *,
    max_degree: Callable[[tuple[int, ...]], Sequence[int]] | None = None,
    allowed: Callable[[tuple[int, ...]], Callable[[int, int], bool]] | None = None,
    accept: Callable[[tuple[int, ...], tuple], bool] | None = None,
) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Leg-free connected multigraphs with genus decorations and total genus
    ``g``, one per isomorphism class.  Genera are non-increasing in vertex order."""
    seen = set()
    for genera in _genus_profiles(g, num_vertices):
        num_edges = num_vertices - 1 + g - sum(genera)
        if num_edges < 0:
            continue
        md = max_degree(genera) if max_degree else None
        al = allowed(genera) if allowed else None
        for edges in connected_multigraphs(num_vertices, num_edges, md, al):
            if accept is not None and not accept(genera, edges):
                continue
            key = canonical_key(genera, edges, [()] * num_vertices)
            if key not in seen:
                seen.add(key)
                yield genera, edges


def degrees(num_vertices: int, edges) -> list[int]:
    deg = [0] * num_vertices
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def leg_requirements(genera: Sequence[int], deg: Sequence[int]) -> list[int]:
    """Minimum number of legs each vertex needs to be stable."""
    return [max(0, 3 - d) if gv == 0 else max(0, 1 - d) if gv == 1 else 0 for gv, d in zip(genera, deg)]


def bounded_vectors(lower: Sequence[int], upper: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors ``lower <= c <= upper`` with ``sum(c) == total``."""
    k = len(lower)
    if k == 0:
        if total == 0:
            yield ()
        return
    rest_lo = sum(lower[1:])
    rest_hi = sum(upper[1:])
    for c in range(max(lower[0], total - rest_hi), min(upper[0], total - rest_lo) + 1):
        for tail in bounded_vectors(lower[1:], upper[1:], total - c):
            yield (c,) + tail


def _label_assignments(counts: Sequence[int], labels: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    if not counts:
        yield []
        return
    for pick in combinations(labels, counts[0]):
        remaining = [x for x in labels if x not in pick]
        for tail in _label_assignments(counts[1:], remaining):
            yield [pick] + tail


def enumerate_stable_graphs(
    g: int,
    n: int,
    *,
    coarse_only: bool = False,
    max_dim: int | None = None,
    predicate: Callable[[StableGraph], bool] | None = None,
    budget: int | None = None,
) -> list[StableGraph]:
    """Representatives of all isomorphism classes in Stab(g, n), sorted by
    canonical form.

    ``coarse_only`` restricts to Q(g, n) (no edge between distinct genus-0
    vertices); ``max_dim`` bounds the stratum dimension.
    """
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is not stable")
    budget = default_budget() if budget is None else budget
    built = 0
    found: dict = {}
    rejected = set()
    for nv in range(1, 2 * g - 2 + n + 1):

        def allowed(genera):
            if not coarse_only:
                return None
            return lambda u, v: u == v or genera[u] > 0 or genera[v] > 0

        def accept(genera, edges, nv=nv):
            deg = degrees(nv, edges)
            if sum(leg_requirements(genera, deg)) > n:
                return False
            if max_dim is not None and sum(3 * x - 3 for x in genera) + 2 * len(edges) + n > max_dim:
                return False
            return True

        shapes = set()
        for genera, edges in skeletons(g, nv, allowed=allowed, accept=accept):
            deg = degrees(nv, edges)
            need = leg_requirements(genera, deg)
            for counts in bounded_vectors(need, [n] * nv, n):
                skey = canonical_key(genera, edges, [[0] * c for c in counts])
                if skey in shapes:
                    continue
                shapes.add(skey)
                for blocks in _label_assignments(counts, list(range(1, n + 1))):
                    built += 1
                    if built > budget:
                        raise BudgetExceeded(
                            f"enumerate_stable_graphs({g}, {n}) exceeded budget {budget}",
                            partial=sorted(found.values(), key=lambda G: G.canonical_form),
                        )
                    legs = {lab: v for v, block in enumerate(blocks) for lab in block}
                    G = StableGraph.build(genera, edges, legs)
                    key = G.canonical_form
                    if key in found or key in rejected:
                        continue
                    if predicate is not None and not predicate(G):
                        rejected.add(key)
                        continue
                    found[key] = G
    return [found[k] for k in sorted(found)]


def stratum_dimension_filter(i: int) -> Callable[[StableGraph], bool]:
    return lambda G: stratum_dimension(G) <= i
