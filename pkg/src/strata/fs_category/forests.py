"""Rooted binary forests with labelled leaves, and their action on stable graphs.

A tree is either a leaf label (an ``int``) or a pair of subtrees.  Children
are unordered, so trees are kept normalized with the child containing the
smallest leaf first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Union

from ..stable_graphs import StableGraph
from .surjections import Surjection, enumerate_surjections

Tree = Union[int, tuple]


def leaves(tree: Tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return leaves(tree[0]) + leaves(tree[1])


def _normalize(tree) -> tuple[Tree, list[int]]:
    # one pass: normalized tree and its leaves, smallest-leaf child first
    if isinstance(tree, int):
        return tree, [tree]
    if len(tree) != 2:
        raise ValueError(f"internal node with {len(tree)} children")
    a, la = _normalize(tree[0])
    b, lb = _normalize(tree[1])
    if min(lb) < min(la):
        a, b, la, lb = b, a, lb, la
    return (a, b), la + lb


def normalize_tree(tree) -> Tree:
    return _normalize(tree)[0]


def internal_nodes(tree: Tree) -> int:
    return 0 if isinstance(tree, int) else 1 + internal_nodes(tree[0]) + internal_nodes(tree[1])


@dataclass(frozen=True)
class BinaryForest:
    """``trees[r - 1]`` is the tree hanging from root ``r``."""

    trees: tuple
    leaf_sets: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairs = [_normalize(t) for t in self.trees]
        object.__setattr__(self, "trees", tuple(t for t, _ in pairs))
        object.__setattr__(self, "leaf_sets", tuple(ls for _, ls in pairs))
        labels = sorted(x for ls in self.leaf_sets for x in ls)
        if labels != list(range(1, len(labels) + 1)):
            raise ValueError(f"leaf labels {labels} are not 1..{len(labels)}")

    @classmethod
    def identity(cls, n: int) -> "BinaryForest":
        return cls(tuple(range(1, n + 1)))

    @property
    def num_roots(self) -> int:
        return len(self.trees)

    @property
    def num_leaves(self) -> int:
        return sum(len(ls) for ls in self.leaf_sets)

    def to_json(self):
        def enc(t):
            return t if isinstance(t, int) else [enc(t[0]), enc(t[1])]

        return [enc(t) for t in self.trees]

    @classmethod
    def from_json(cls, data) -> "BinaryForest":
        def dec(t):
            return t if isinstance(t, int) else (dec(t[0]), dec(t[1]))

        return cls(tuple(dec(t) for t in data))


def forest_to_surjection(F: BinaryForest) -> Surjection:
    """The map sending each leaf to its root."""
    values = [0] * F.num_leaves
    for r, ls in enumerate(F.leaf_sets, start=1):
        for x in ls:
            values[x - 1] = r
    return Surjection(tuple(values), F.num_roots)


def compose_forests(F1: BinaryForest, F2: BinaryForest) -> BinaryForest:
    """Glue the roots of ``F2`` onto the leaves of ``F1``.

    Leaves of the result are those of ``F2``, roots those of ``F1``, and
    ``h(F1 o F2) = h(F1) o h(F2)``.
    """
    if F2.num_roots != F1.num_leaves:
        raise ValueError(f"cannot glue {F2.num_roots} roots onto {F1.num_leaves} leaves")
    def graft(t):
        # grafted subtree and its leaves in tree order, children kept normalized
        if isinstance(t, int):
            return F2.trees[t - 1], F2.leaf_sets[t - 1]
        a, la = graft(t[0])
        b, lb = graft(t[1])
        return ((a, b), la + lb) if la[0] < lb[0] else ((b, a), lb + la)

    pairs = [graft(t) for t in F1.trees]
    trees = tuple(t for t, _ in pairs)
    leaf_sets = tuple(ls for _, ls in pairs)
    out = object.__new__(BinaryForest)
    object.__setattr__(out, "trees", trees)
    object.__setattr__(out, "leaf_sets", leaf_sets)
    return out


def binary_trees(labels: tuple[int, ...]) -> Iterator[Tree]:
    """All binary trees with the given leaf set."""
    if len(labels) == 1:
        yield labels[0]
        return
    first, rest = labels[0], labels[1:]
    k = len(rest)
    # the side containing ``first`` is chosen by a proper subset of the rest
    for mask in range(2**k - 1):
        left = (first,) + tuple(rest[j] for j in range(k) if mask >> j & 1)
        right = tuple(rest[j] for j in range(k) if not mask >> j & 1)
        for a in binary_trees(left):
            for b in binary_trees(right):
                yield (a, b)


def generate_forests(num_leaves: int, num_roots: int) -> Iterator[BinaryForest]:
    """Every forest with the given numbers of leaves and roots."""
    for s in enumerate_surjections(num_leaves, num_roots):
        fibres = [tuple(x for x in range(1, num_leaves + 1) if s(x) == r) for r in range(1, num_roots + 1)]
        for trees in product(*(list(binary_trees(f)) for f in fibres)):
            yield BinaryForest(trees)


def forest_fullness_check(n: int, m: int) -> bool:
    """Whether every surjection ``[n] -> [m]`` is ``h_F`` for some forest."""
    if n < m:
        raise ValueError("need n >= m")
    hit = {forest_to_surjection(F) for F in generate_forests(n, m)}
    return hit == set(enumerate_surjections(n, m))


def glue_forest_on_graph(F: BinaryForest, G: StableGraph) -> StableGraph:
    """Attach at each leg ``r`` of ``G`` the tree of trivalent genus-0
    vertices dual to the ``r``-th tree of ``F``."""
    if F.num_roots != G.n:
        raise ValueError(f"forest has {F.num_roots} roots but the graph has {G.n} legs")
    genus = list(G.genus)
    edges = list(G.edge_vertices)
    legs: dict[int, int] = {}
    leg_vertex = {G.label_of[h]: G.vertex_of[h] for h in G.legs}

    def attach(tree, v):
        if isinstance(tree, int):
            legs[tree] = v
            return
        w = len(genus)
        genus.append(0)
        edges.append((v, w))
        attach(tree[0], w)
        attach(tree[1], w)

    for r, tree in enumerate(F.trees, start=1):
        attach(tree, leg_vertex[r])
    return StableGraph.build(genus, edges, legs)
