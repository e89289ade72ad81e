"""Stable graphs as half-edge structures."""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .canonical import Key, canonical_key


@dataclass(frozen=True)
class StableGraph:
    """A half-edge structure with genus decorations.

    ``vertices[v]`` lists the half-edges at vertex ``v``; ``edges`` is the
    fixed-point-free involution on internal half-edges given as pairs;
    ``legs[k]`` is the half-edge carrying the external label ``k + 1``;
    ``genus[v]`` is the genus of vertex ``v``.  Half-edges are ``0..H-1``.
    """

    vertices: tuple[tuple[int, ...], ...]
    genus: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    legs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(tuple(sorted(b)) for b in self.vertices))
        object.__setattr__(self, "genus", tuple(int(x) for x in self.genus))
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "legs", tuple(self.legs))

    # -- construction -------------------------------------------------------

    @classmethod
    def build(
        cls,
        genus: Sequence[int],
        edges: Iterable[tuple[int, int]] = (),
        legs: Sequence[int] | Mapping[int, int] = (),
    ) -> "StableGraph":
        """Build from vertex-level data.

        ``edges`` are pairs of vertex indices (``(v, v)`` is a loop);
        ``legs`` maps each label ``1..n`` to a vertex, either as a mapping or
        as a sequence whose ``k``-th entry is the vertex of label ``k + 1``.
        """
        if isinstance(legs, Mapping):
            n = len(legs)
            if sorted(legs) != list(range(1, n + 1)):
                raise ValueError(f"leg labels must be 1..{n}, got {sorted(legs)}")
            legs = [legs[k] for k in range(1, n + 1)]
        blocks: list[list[int]] = [[] for _ in genus]
        pairs = []
        h = 0
        for u, v in edges:
            blocks[u].append(h)
            blocks[v].append(h + 1)
            pairs.append((h, h + 1))
            h += 2
        leg_he = []
        for v in legs:
            blocks[v].append(h)
            leg_he.append(h)
            h += 1
        return cls(tuple(map(tuple, blocks)), tuple(genus), tuple(pairs), tuple(leg_he))

    @classmethod
    def smooth(cls, g: int, n: int) -> "StableGraph":
        return cls.build([g], [], [0] * n)

    # -- derived data -------------------------------------------------------

    @cached_property
    def num_half_edges(self) -> int:
        return sum(len(b) for b in self.vertices)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        """Number of external legs, ``n(G)``."""
        return len(self.legs)

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {h: v for v, block in enumerate(self.vertices) for h in block}

    @cached_property
    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def label_of(self) -> dict[int, int]:
        return {h: k + 1 for k, h in enumerate(self.legs)}

    @cached_property
    def edge_vertices(self) -> tuple[tuple[int, int], ...]:
        """Endpoints of each edge, in the order of ``edges``."""
        vo = self.vertex_of
        return tuple(tuple(sorted((vo[a], vo[b]))) for a, b in self.edges)

    @cached_property
    def valence(self) -> tuple[int, ...]:
        """``n(v)``: number of half-edges at each vertex (a loop counts twice)."""
        return tuple(len(b) for b in self.vertices)

    @cached_property
    def leg_labels(self) -> tuple[tuple[int, ...], ...]:
        lab = self.label_of
        return tuple(tuple(sorted(lab[h] for h in b if h in lab)) for b in self.vertices)

    @cached_property
    def loops(self) -> tuple[int, ...]:
        """``e(v)``: number of self edges at each vertex."""
        c = Counter(u for u, v in self.edge_vertices if u == v)
        return tuple(c[v] for v in range(self.num_vertices))

    @cached_property
    def outer_edges(self) -> tuple[int, ...]:
        """``a(v)``: number of edges from each vertex to a distinct vertex."""
        c: Counter = Counter()
        for u, v in self.edge_vertices:
            if u != v:
                c[u] += 1
                c[v] += 1
        return tuple(c[v] for v in range(self.num_vertices))

    @property
    def h1(self) -> int:
        """``dim H^1`` of the underlying (connected) graph."""
        return self.num_edges - self.num_vertices + 1

    @property
    def g(self) -> int:
        """Total genus ``g(G)``."""
        return self.h1 + sum(self.genus)

    def is_coarse(self) -> bool:
        """True when no two distinct genus-0 vertices share an edge."""
        return not any(u != v and self.genus[u] == 0 == self.genus[v] for u, v in self.edge_vertices)

    # -- canonical form -----------------------------------------------------

    @cached_property
    def canonical_form(self) -> Key:
        return canonical_key(self.genus, self.edge_vertices, self.leg_labels)

    def coloured_form(self, colour) -> Key:
        """Canonical form with legs identified up to relabelling inside the
        classes of ``colour`` (a function of the label)."""
        return canonical_key(self.genus, self.edge_vertices, [[colour(k) for k in ls] for ls in self.leg_labels])

    def is_isomorphic(self, other: "StableGraph") -> bool:
        return self.canonical_form == other.canonical_form

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "half_edges": list(range(self.num_half_edges)),
            "vertices": [list(b) for b in self.vertices],
            "involution": [list(e) for e in self.edges],
            "legs": {str(k + 1): h for k, h in enumerate(self.legs)},
            "genus": {str(v): g for v, g in enumerate(self.genus)},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "StableGraph":
        half_edges = list(data["half_edges"])
        if sorted(half_edges) != list(range(len(half_edges))):
            raise ValueError("half_edges must be 0..H-1")
        nv = len(data["vertices"])
        genus_map = {int(k): int(v) for k, v in data["genus"].items()}
        if sorted(genus_map) != list(range(nv)):
            raise ValueError("genus must be given for every vertex")
        legs_map = {int(k): int(v) for k, v in data["legs"].items()}
        if sorted(legs_map) != list(range(1, len(legs_map) + 1)):
            raise ValueError("leg labels must be 1..n")
        G = cls(
            tuple(tuple(b) for b in data["vertices"]),
            tuple(genus_map[v] for v in range(nv)),
            tuple(tuple(e) for e in data["involution"]),
            tuple(legs_map[k] for k in range(1, len(legs_map) + 1)),
        )
        if G.num_half_edges != len(half_edges):
            raise ValueError("vertex blocks do not cover half_edges")
        return G

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "StableGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v, g in enumerate(self.genus):
            lines.append(f'  v{v} [label="g={g}"];')
        for k in range(self.n):
            lines.append(f'  l{k + 1} [shape=box,label="{k + 1}"];')
        for u, v in self.edge_vertices:
            lines.append(f"  v{u} -- v{v};")
        vo = self.vertex_of
        for k, h in enumerate(self.legs):
            lines.append(f"  v{vo[h]} -- l{k + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        parts = []
        for v in range(self.num_vertices):
            parts.append(f"v{v}(g={self.genus[v]},legs={list(self.leg_labels[v])})")
        es = ",".join(f"{u}-{v}" for u, v in self.edge_vertices)
        return f"StableGraph[{' '.join(parts)}; edges {es or '-'}]"


def validate(G: StableGraph, g: int | None = None) -> str | None:
    """Return ``None`` if ``G`` is a stable graph, else the first violated invariant."""
    H = G.num_half_edges
    seen = sorted(h for b in G.vertices for h in b)
    if seen != list(range(H)):
        return "partition: vertex blocks must partition half-edges 0..H-1"
    if len(G.genus) != G.num_vertices:
        return "genus: one genus value per vertex required"
    if any(x < 0 for x in G.genus):
        return "genus: vertex genera must be non-negative"
    if G.num_vertices == 0:
        return "connected: graph has no vertices"
    paired = [h for e in G.edges for h in e]
    if any(a == b for a, b in G.edges) or len(set(paired)) != len(paired):
        return "involution: pairs must be disjoint and fixed-point free"
    if len(set(G.legs)) != len(G.legs):
        return "legs: two labels on one half-edge"
    if set(paired) & set(G.legs):
        return "legs: an external leg is also glued"
    if len(paired) + len(G.legs) != H:
        return "involution: every non-leg half-edge must be glued"
    parent = list(range(G.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edge_vertices:
        parent[find(u)] = find(v)
    if len({find(v) for v in range(G.num_vertices)}) != 1:
        return "connected: graph is disconnected"
    if g is not None and G.g != g:
        return f"genus formula: dim H1 + sum g(v) = {G.g} != {g}"
    for v, (gv, nv) in enumerate(zip(G.genus, G.valence)):
        if gv == 0 and nv < 3:
            return f"stability: genus-0 vertex {v} has valence {nv} < 3"
        if gv == 1 and nv < 1:
            return f"stability: genus-1 vertex {v} has valence 0"
    return None


def is_valid(G: StableGraph) -> bool:
    return validate(G) is None


def _edge_index(G: StableGraph, e) -> int:
    if isinstance(e, int):
        if not 0 <= e < G.num_edges:
            raise ValueError(f"no internal edge with index {e}")
        return e
    pair = tuple(sorted(e))
    try:
        return G.edges.index(pair)
    except ValueError:
        raise ValueError(f"{e} is not an internal edge (external legs cannot be contracted)") from None


def contract_edges(G: StableGraph, edges: Iterable) -> StableGraph:
    """Stable quotient identifying each of the given internal edges to a point.

    The genus of a merged vertex is ``dim H^1`` of its preimage plus the sum
    of the genera in it.
    """
    idx = sorted({_edge_index(G, e) for e in edges})
    parent = list(range(G.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in idx:
        u, v = G.edge_vertices[k]
        parent[find(u)] = find(v)
    classes: dict[int, list[int]] = {}
    for v in range(G.num_vertices):
        classes.setdefault(find(v), []).append(v)
    roots = sorted(classes, key=lambda r: min(classes[r]))
    new_index = {r: i for i, r in enumerate(roots)}
    edge_count = Counter(find(G.edge_vertices[k][0]) for k in idx)
    new_genus = []
    for r in roots:
        members = classes[r]
        h1 = edge_count[r] - len(members) + 1
        new_genus.append(h1 + sum(G.genus[v] for v in members))
    removed = {h for k in idx for h in G.edges[k]}
    keep = [h for h in range(G.num_half_edges) if h not in removed]
    renum = {h: i for i, h in enumerate(keep)}
    blocks: list[list[int]] = [[] for _ in roots]
    for v, block in enumerate(G.vertices):
        for h in block:
            if h in renum:
                blocks[new_index[find(v)]].append(renum[h])
    idx_set = set(idx)
    new_edges = [(renum[a], renum[b]) for k, (a, b) in enumerate(G.edges) if k not in idx_set]
    return StableGraph(tuple(map(tuple, blocks)), tuple(new_genus), tuple(new_edges), tuple(renum[h] for h in G.legs))


def contract_edge(G: StableGraph, e) -> StableGraph:
    """Contract one internal edge, given by index or by its half-edge pair."""
    return contract_edges(G, [e])


def coarsen(G: StableGraph, rng: random.Random | None = None) -> StableGraph:
    """Contract a spanning tree of every connected cluster of genus-0 vertices.

    ``rng`` randomizes which spanning trees are chosen; the result is the
    same up to isomorphism for every choice.
    """
    cand = [k for k, (u, v) in enumerate(G.edge_vertices) if u != v and G.genus[u] == 0 == G.genus[v]]
    if rng is not None:
        rng.shuffle(cand)
    parent = list(range(G.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for k in cand:
        u, v = G.edge_vertices[k]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(k)
    return contract_edges(G, tree) if tree else G


def s_vector(G: StableGraph) -> tuple[int, ...]:
    """Entry 0 counts edges between genus-0 and positive-genus vertices;
    entry ``i >= 1`` counts vertices of genus ``i``."""
    top = max(G.genus)
    s = [0] * (top + 1)
    for u, v in G.edge_vertices:
        if (G.genus[u] == 0) != (G.genus[v] == 0):
            s[0] += 1
    for x in G.genus:
        if x:
            s[x] += 1
    return tuple(s)


def s_vector_key(s: Sequence[int], length: int) -> tuple[int, ...]:
    """Sort key realising the reverse lexicographic order on s-vectors."""
    padded = list(s) + [0] * (length - len(s))
    return tuple(reversed(padded))


def s_less(s: Sequence[int], t: Sequence[int]) -> bool:
    m = max(len(s), len(t))
    return s_vector_key(s, m) < s_vector_key(t, m)


def stratum_dimension(G: StableGraph) -> int:
    """``sum_v (3 g(v) - 3 + n(v))``."""
    return sum(3 * g - 3 + n for g, n in zip(G.genus, G.valence))


def genus0_splittings(G: StableGraph):
    """All graphs ``H`` such that contracting one edge between two distinct
    genus-0 vertices of ``H`` gives ``G`` (one per choice of half-edge split)."""
    for v, block in enumerate(G.vertices):
        if G.genus[v] != 0 or len(block) < 4:
            continue
        first, rest = block[0], block[1:]
        k = len(rest)
        for mask in range(1 << k):
            side1 = [first] + [rest[j] for j in range(k) if mask >> j & 1]
            side2 = [rest[j] for j in range(k) if not mask >> j & 1]
            if len(side1) < 2 or len(side2) < 2:
                continue
            h, h2 = G.num_half_edges, G.num_half_edges + 1
            blocks = list(G.vertices)
            blocks[v] = tuple(side1) + (h,)
            blocks.append(tuple(side2) + (h2,))
            yield StableGraph(tuple(blocks), G.genus + (0,), G.edges + ((h, h2),), G.legs)
