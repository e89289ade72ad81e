"""Exhaustive checks of the two graph-counting lemmas behind finite generation.

The leg-count bound (``verify_lemma_41``) bounds the number of legs of coarse graphs whose genus-0 vertices
carry at most ``f(i, e(v), a(v))`` legs and whose positive-genus vertices
have valence at most ``i + 1``.  The trichotomy (``verify_lemma_42``) says that if ``b`` is large,
every all-genus-0 graph over the one-vertex graph ``J`` either has
dimension above ``i`` or contains a cherry of ``[b]``-legs or two adjacent
trivalent vertices both carrying ``[b]``-legs.

Graphs in the trichotomy fiber are all genus 0, so they are handled at the
vertex level: an edge multiset plus, per vertex, the number of ``[a]``- and
``[b]``-legs.  Isomorphism is taken up to relabelling inside each class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .hilbert import PRINTED_COEFFS, f_bound, p_bound
from .stable_graphs import (
    BudgetExceeded,
    StableGraph,
    canonical_key,
    default_budget,
    enumerate_stable_graphs,
    genus0_splittings,
    skeletons,
    stratum_dimension,
)
from .stable_graphs.enumerate import bounded_vectors, degrees

# -- leg-count bound ---------------------------------------------------------------


def _leg_ranges(genera, edges, i, coeffs):
    nv = len(genera)
    deg = degrees(nv, edges)
    loops = [0] * nv
    for u, v in edges:
        if u == v:
            loops[u] += 1
    lo, hi = [], []
    for v, gv in enumerate(genera):
        if gv >= 1:
            lo.append(max(0, 1 - deg[v]) if gv == 1 else 0)
            hi.append(i + 1 - deg[v])
        else:
            lo.append(max(0, 3 - deg[v]))
            hi.append(f_bound(i, loops[v], deg[v] - 2 * loops[v], coeffs))
    return lo, hi


def lemma41_skeletons(g: int, i: int):
    """Leg-free skeletons allowed by conditions (1) and (2)."""
    if g < 0 or i < 0:
        raise ValueError("g and i must be non-negative")
    max_vertices = max(1, g + (i + 1) * g)
    for nv in range(1, max_vertices + 1):

        def cap(genera, nv=nv):
            return [i + 1 if gv >= 1 else 2 * (nv + g) for gv in genera]

        def allowed(genera):
            return lambda u, v: u == v or genera[u] > 0 or genera[v] > 0

        yield from skeletons(g, nv, max_degree=cap, allowed=allowed)


def verify_lemma_41(g: int, i: int, coeffs: Sequence[int] = PRINTED_COEFFS, budget: int | None = None) -> dict:
    """Enumerate every graph satisfying the three conditions and compare the
    largest number of legs with the bound.

    Graphs are counted with unlabelled legs: the conditions do not look at
    labels.  ``counts[n]`` is the number of such shapes with ``n`` legs.
    """
    r, s, t, u = coeffs
    if min(r, s, t) < 0:
        raise ValueError("coefficients r, s, t must be non-negative")
    budget = default_budget() if budget is None else budget
    counts: dict[int, int] = {}
    seen = set()
    skeleton_count = 0
    max_n = None
    witness = None
    built = 0
    for genera, edges in lemma41_skeletons(g, i):
        skeleton_count += 1
        lo, hi = _leg_ranges(genera, edges, i, coeffs)
        if any(h < l for l, h in zip(lo, hi)):
            continue
        for n in range(sum(lo), sum(hi) + 1):
            if 2 * g - 2 + n <= 0:
                continue
            for vec in bounded_vectors(lo, hi, n):
                built += 1
                if built > budget:
                    raise BudgetExceeded(
                        f"verify_lemma_41({g}, {i}) exceeded budget {budget}",
                        partial={"counts": dict(counts), "max_n": max_n},
                    )
                key = canonical_key(genera, edges, [[0] * c for c in vec])
                if key in seen:
                    continue
                seen.add(key)
                counts[n] = counts.get(n, 0) + 1
                if max_n is None or n > max_n:
                    max_n = n
                    legs, label = {}, 1
                    for v, c in enumerate(vec):
                        for _ in range(c):
                            legs[label] = v
                            label += 1
                    witness = StableGraph.build(genera, edges, legs)
    bound = p_bound(g, i, "compositional", coeffs)
    proof_bound = max(f_bound(i, g, 0, coeffs), bound)
    return {
        "params": {"g": g, "i": i, "coeffs": list(coeffs)},
        "skeletons": skeleton_count,
        "graphs_checked": sum(counts.values()),
        "counts_by_n": {str(n): counts[n] for n in sorted(counts)},
        "max_n": max_n,
        "bound": bound,
        "bound_printed": p_bound(g, i, "printed") if tuple(coeffs) == PRINTED_COEFFS else None,
        "bound_with_single_vertex_case": proof_bound,
        "all_pass": max_n is None or max_n <= bound,
        "witness": witness.to_dict() if witness is not None and max_n > bound else None,
    }


# -- vertex-level genus-0 graphs -----------------------------------------------


@dataclass(frozen=True)
class LegGraph:
    """All-genus-0 graph at the vertex level with two leg classes.

    ``edges`` are sorted vertex pairs (loops allowed, repeats for parallel
    edges); ``a_legs[v]`` and ``b_legs[v]`` count the legs of each class.
    """

    edges: tuple
    a_legs: tuple
    b_legs: tuple

    @property
    def num_vertices(self) -> int:
        return len(self.a_legs)

    @property
    def a(self) -> int:
        return sum(self.a_legs)

    @property
    def b(self) -> int:
        return sum(self.b_legs)

    @property
    def genus(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def valence(self) -> list[int]:
        deg = degrees(self.num_vertices, self.edges)
        return [d + x + y for d, x, y in zip(deg, self.a_legs, self.b_legs)]

    def dimension(self) -> int:
        return sum(n - 3 for n in self.valence())

    def key(self):
        legs = [["a"] * x + ["b"] * y for x, y in zip(self.a_legs, self.b_legs)]
        return canonical_key((0,) * self.num_vertices, self.edges, legs)

    def to_stable_graph(self) -> StableGraph:
        """Labelled version: ``[a]`` is ``1..a`` and ``[b]`` is ``a+1..a+b``."""
        legs: dict[int, int] = {}
        na = 1
        nb = self.a + 1
        for v in range(self.num_vertices):
            for _ in range(self.a_legs[v]):
                legs[na] = v
                na += 1
            for _ in range(self.b_legs[v]):
                legs[nb] = v
                nb += 1
        return StableGraph.build((0,) * self.num_vertices, self.edges, legs)

    @classmethod
    def from_stable_graph(cls, G: StableGraph, a: int) -> "LegGraph":
        if any(G.genus):
            raise ValueError("all vertices must have genus 0")
        a_legs = tuple(sum(1 for k in G.leg_labels[v] if k <= a) for v in range(G.num_vertices))
        b_legs = tuple(len(G.leg_labels[v]) - a_legs[v] for v in range(G.num_vertices))
        return cls(tuple(sorted(G.edge_vertices)), a_legs, b_legs)

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "a_legs": list(self.a_legs), "b_legs": list(self.b_legs)}


def _with(edges, remove=None, add=()):
    out = list(edges)
    if remove is not None:
        out.remove(remove)
    out.extend(tuple(sorted(e)) for e in add)
    return tuple(sorted(out))


def insert_b_leg(H: LegGraph, i: int) -> Iterable[LegGraph]:
    """All graphs obtained by adding one ``[b]``-leg without leaving dimension ``<= i``."""
    nv = H.num_vertices
    x = nv
    if H.dimension() + 1 <= i:
        for v in range(nv):
            b = list(H.b_legs)
            b[v] += 1
            yield LegGraph(H.edges, H.a_legs, tuple(b))
    for e in sorted(set(H.edges)):
        u, w = e
        yield LegGraph(_with(H.edges, e, [(u, x), (w, x)]), H.a_legs + (0,), H.b_legs + (1,))
    for v in range(nv):
        if H.a_legs[v]:
            a = list(H.a_legs)
            a[v] -= 1
            yield LegGraph(_with(H.edges, None, [(v, x)]), tuple(a) + (1,), H.b_legs + (1,))
        if H.b_legs[v]:
            b = list(H.b_legs)
            b[v] -= 1
            yield LegGraph(_with(H.edges, None, [(v, x)]), H.a_legs + (0,), tuple(b) + (2,))


def _base_b(a: int, e: int) -> int:
    return max(0, 3 - a - 2 * e)


def _direct_fiber(a: int, b: int, e: int, i: int) -> list[LegGraph]:
    n = a + b
    if 2 * e - 2 + n <= 0:
        return []
    graphs = enumerate_stable_graphs(e, n, max_dim=i, predicate=lambda G: not any(G.genus))
    found = {}
    for G in graphs:
        H = LegGraph.from_stable_graph(G, a)
        found.setdefault(H.key(), H)
    return [found[k] for k in sorted(found)]


@dataclass
class FiberLevels:
    """Fiber members indexed by the number of ``[b]``-legs."""

    a: int
    e: int
    i: int
    levels: dict = field(default_factory=dict)
    built: int = 0


def fiber_levels(a: int, e: int, i: int, b_max: int, budget: int | None = None) -> FiberLevels:
    """Fibers over ``J`` (one genus-0 vertex, ``e`` loops, ``a + b`` legs) for
    every ``b <= b_max``, built by inserting ``[b]``-legs one at a time.

    Any member with ``b`` above the smallest stable value loses a
    ``[b]``-leg to a member with ``b - 1`` legs (smoothing the vertex if
    it becomes bivalent), so the insertion closure is complete.
    """
    budget = default_budget() if budget is None else budget
    out = FiberLevels(a, e, i)
    start = _base_b(a, e)
    if start > b_max:
        return out
    level = _direct_fiber(a, start, e, i)
    out.levels[start] = level
    for b in range(start + 1, b_max + 1):
        found: dict = {}
        for H in level:
            for K in insert_b_leg(H, i):
                out.built += 1
                if out.built > budget:
                    raise BudgetExceeded(
                        f"fiber over (a={a}, e={e}) at b={b}, i={i} exceeded budget {budget}",
                        partial=out,
                    )
                found.setdefault(K.key(), K)
        level = [found[k] for k in sorted(found)]
        out.levels[b] = level
    return out


def enumerate_coarsening_fiber(J: StableGraph, i: int, a: int | None = None, budget: int | None = None):
    """All-genus-0 graphs ``H`` with coarsening ``J`` and dimension ``<= i``.

    ``J`` must be a single genus-0 vertex.  Legs ``1..a`` form the class
    ``[a]`` and the rest ``[b]``; with ``a=None`` every label is its own
    class and the result is up to labelled isomorphism.
    """
    if J.num_vertices != 1 or J.genus[0] != 0:
        raise ValueError("J must be a single genus-0 vertex")
    e = J.loops[0]
    if a is None:
        return labelled_fiber(e, J.n, i, budget)
    b = J.n - a
    levels = fiber_levels(a, e, i, b, budget)
    return levels.levels.get(b, [])


def labelled_fiber(e: int, n: int, i: int, budget: int | None = None) -> list[StableGraph]:
    """Labelled fiber by iterated vertex splitting from ``J``, deduplicated by
    canonical form.  Exponential; meant for small cross-checks."""
    budget = default_budget() if budget is None else budget
    J = StableGraph.build([0], [(0, 0)] * e, {k: 0 for k in range(1, n + 1)})
    level = {J.canonical_form: J}
    found = dict(level)
    built = 0
    while level:
        nxt = {}
        for G in level.values():
            for H in genus0_splittings(G):
                built += 1
                if built > budget:
                    raise BudgetExceeded(f"labelled fiber exceeded budget {budget}", partial=list(found.values()))
                key = H.canonical_form
                if key not in found and key not in nxt:
                    nxt[key] = H
        found.update(nxt)
        level = nxt
    return [found[k] for k in sorted(found) if stratum_dimension(found[k]) <= i]


# -- trichotomy ----------------------------------------------------------------


@dataclass
class TrichotomyReport:
    graph: LegGraph
    dimension: int
    high_dimension: bool
    cherry: int | None
    adjacent_pair: tuple | None

    @property
    def holds(self) -> bool:
        return self.high_dimension or self.cherry is not None or self.adjacent_pair is not None

    def conditions(self) -> list[int]:
        return [k for k, ok in ((1, self.high_dimension), (2, self.cherry is not None), (3, self.adjacent_pair is not None)) if ok]

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "dimension": self.dimension,
            "conditions": self.conditions(),
            "cherry_vertex": self.cherry,
            "adjacent_pair": list(self.adjacent_pair) if self.adjacent_pair else None,
        }


def trichotomy(H: LegGraph, i: int) -> TrichotomyReport:
    val = H.valence()
    dim = sum(n - 3 for n in val)
    tri = [n == 3 for n in val]
    cherry = next((v for v in range(H.num_vertices) if tri[v] and H.b_legs[v] >= 2), None)
    pair = None
    for u, w in sorted(set(H.edges)):
        if u != w and tri[u] and tri[w] and H.b_legs[u] and H.b_legs[w]:
            pair = (u, w)
            break
    return TrichotomyReport(H, dim, dim > i, cherry, pair)


# -- counterexample search -------------------------------------------------------


def is_core(H: LegGraph) -> bool:
    """No trivalent vertex carries a ``[b]``-leg."""
    return all(not (n == 3 and y) for n, y in zip(H.valence(), H.b_legs))


def subdivide(K: LegGraph, edge_slots: Sequence[int], leg_slots: Sequence[int]) -> LegGraph:
    """Put a new trivalent vertex with one ``[b]``-leg on each chosen edge
    (by index into ``K.edges``) and on one ``[a]``-leg at each chosen vertex
    (a vertex may appear several times)."""
    edges = [e for k, e in enumerate(K.edges) if k not in set(edge_slots)]
    a_legs = list(K.a_legs)
    b_legs = list(K.b_legs)
    for k in edge_slots:
        u, w = K.edges[k]
        x = len(a_legs)
        a_legs.append(0)
        b_legs.append(1)
        edges += [(u, x), (w, x)]
    for v in leg_slots:
        x = len(a_legs)
        a_legs[v] -= 1
        a_legs.append(1)
        b_legs.append(1)
        edges.append((v, x))
    return LegGraph(tuple(sorted(tuple(sorted(e)) for e in edges)), tuple(a_legs), tuple(b_legs))


def special_counterexamples(a: int, e: int, b: int) -> list[LegGraph]:
    """Single-vertex graphs made of one trivalent ``[b]``-vertex."""
    if b == 1 and (a, e) == (0, 1):
        return [LegGraph(((0, 0),), (0,), (1,))]
    if b == 1 and (a, e) == (2, 0):
        return [LegGraph((), (2,), (1,))]
    return []


def core_search(a: int, e: int, i: int, b_values: Iterable[int], budget: int | None = None) -> dict:
    """Every graph over ``J`` of dimension ``<= i`` that fails conditions (2)
    and (3), for each requested ``b``.

    Removing the trivalent vertices with a ``[b]``-leg from such a graph
    (joining their two other ends) leaves a core: a fiber member with at
    most ``4i`` ``[b]``-legs, all at vertices of valence ``>= 4``.
    Conversely every way of subdividing edges and ``[a]``-legs of a core
    by such vertices gives a graph failing (2) and (3).  The exceptions
    are the one-vertex graphs in :func:`special_counterexamples`.
    """
    b_values = sorted(set(b_values))
    cores: list[LegGraph] = []
    levels = fiber_levels(a, e, i, 4 * i, budget)
    for bk, level in levels.levels.items():
        cores.extend(K for K in level if is_core(K))
    out: dict[int, list[LegGraph]] = {}
    max_b = None
    for K in cores:
        top = K.b + len(K.edges) + K.a
        max_b = top if max_b is None else max(max_b, top)
    for b in b_values:
        found: dict = {}
        for H in special_counterexamples(a, e, b):
            if H.dimension() <= i:
                found.setdefault(H.key(), H)
        for K in cores:
            extra = b - K.b
            if extra < 0 or extra > len(K.edges) + K.a:
                continue
            leg_slots = [v for v in range(K.num_vertices) for _ in range(K.a_legs[v])]
            slots = [("e", k) for k in range(len(K.edges))] + [("a", v) for v in leg_slots]
            for chosen in combinations(range(len(slots)), extra):
                es = [slots[c][1] for c in chosen if slots[c][0] == "e"]
                ls = [slots[c][1] for c in chosen if slots[c][0] == "a"]
                H = subdivide(K, es, ls)
                found.setdefault(H.key(), H)
        out[b] = [found[k] for k in sorted(found)]
    specials = [b for b in (1,) if special_counterexamples(a, e, b)]
    if specials and (max_b is None or max_b < 1):
        max_b = 1
    return {"cores": cores, "counterexamples": out, "max_counterexample_b": max_b}


# -- trichotomy driver ------------------------------------------------------------


def default_b_range(a: int, e: int, i: int, width: int = 3, coeffs: Sequence[int] = PRINTED_COEFFS) -> list[int]:
    """``f + 1 .. f + width``, shifted up to the smallest stable ``b`` if needed."""
    start = max(f_bound(i, e, a, coeffs) + 1, _base_b(a, e))
    return list(range(start, start + width))


def verify_lemma_42(
    a: int,
    e: int,
    i: int,
    b_range: Iterable[int],
    method: str = "search",
    coeffs: Sequence[int] = PRINTED_COEFFS,
    budget: int | None = None,
) -> dict:
    """Check the trichotomy for every ``b`` in ``b_range`` above the threshold.

    ``method="fiber"`` enumerates the fiber and reports every member;
    ``method="search"`` enumerates only graphs failing (2) and (3) through
    their cores.  Both report ``all_pass`` and the falsifying graphs.
    """
    if min(a, e, i) < 0:
        raise ValueError("a, e, i must be non-negative")
    f = f_bound(i, e, a, coeffs)
    bs = sorted(b for b in set(b_range) if b > f)
    skipped = sorted(b for b in set(b_range) if b <= f)
    failures: list[dict] = []
    checked = 0
    per_b: dict[str, int] = {}
    if method == "fiber":
        levels = fiber_levels(a, e, i, max(bs, default=0), budget) if bs else FiberLevels(a, e, i)
        for b in bs:
            members = levels.levels.get(b, [])
            per_b[str(b)] = len(members)
            for H in members:
                checked += 1
                rep = trichotomy(H, i)
                if not rep.holds:
                    failures.append({"b": b, **rep.to_dict(), "dot": H.to_stable_graph().to_dot("H")})
    elif method == "search":
        res = core_search(a, e, i, bs, budget)
        checked = len(res["cores"])
        for b in bs:
            per_b[str(b)] = len(res["counterexamples"][b])
            for H in res["counterexamples"][b]:
                rep = trichotomy(H, i)
                failures.append({"b": b, **rep.to_dict(), "dot": H.to_stable_graph().to_dot("H")})
    else:
        raise ValueError(f"unknown method {method!r}")
    return {
        "params": {"a": a, "e": e, "i": i, "b": bs, "coeffs": list(coeffs), "method": method, "threshold": f},
        "skipped_b": skipped,
        "graphs_checked": checked,
        "per_b": per_b,
        "all_pass": not failures,
        "witnesses": failures,
    }


def fiber_reports(a: int, e: int, i: int, b: int, budget: int | None = None) -> list[TrichotomyReport]:
    levels = fiber_levels(a, e, i, b, budget)
    return [trichotomy(H, i) for H in levels.levels.get(b, [])]
