"""Truncated FS^op modules over the rationals.

A module of max degree ``N`` has a basis for each ``V_n`` (``1 <= n <= N``)
and, for every surjection ``f: [n] -> [m]``, a matrix of shape
``dim V_n x dim V_m`` describing ``f^*: V_m -> V_n`` on column vectors.
Matrices are produced on demand by an ``action`` callable and cached, so
large free modules can be handled through traces alone.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ..linalg import Matrix, SparseEchelon, _sort_key, identity, matmul, rank, zeros
from .surjections import (
    Surjection,
    compose_surjections,
    count_surjections,
    enumerate_surjections,
    generators,
    iter_all_surjections,
)


class FSModuleData:
    def __init__(
        self,
        max_degree: int,
        basis: Callable[[int], Sequence[str]] | Mapping[int, Sequence[str]],
        action: Callable[[Surjection], Matrix] | Mapping[Surjection, Matrix],
        trace: Callable[[Surjection], Fraction] | None = None,
        name: str = "",
    ):
        self.max_degree = max_degree
        self._basis_src = basis
        self._bases: dict[int, list[str]] = {}
        self._action = action
        self._matrices: dict[Surjection, Matrix] = {}
        self._trace = trace
        self.name = name

    def basis(self, n: int) -> list[str]:
        if not 1 <= n <= self.max_degree:
            raise ValueError(f"degree {n} outside 1..{self.max_degree}")
        if n not in self._bases:
            src = self._basis_src
            self._bases[n] = list(src(n) if callable(src) else src.get(n, []))
        return self._bases[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def dims(self) -> list[int]:
        return [self.dim(n) for n in range(1, self.max_degree + 1)]

    def matrix(self, f: Surjection) -> Matrix:
        if f.source > self.max_degree:
            raise ValueError(f"{f} lies above degree {self.max_degree}")
        if f not in self._matrices:
            act = self._action
            if callable(act):
                mat = act(f)
            elif f in act:
                mat = act[f]
            elif f.is_bijection() and f == Surjection.identity(f.source):
                mat = identity(self.dim(f.source))
            else:
                raise KeyError(f"no matrix stored for {f}")
            self._matrices[f] = [[Fraction(x) for x in row] for row in mat]
        return self._matrices[f]

    def trace(self, sigma: Surjection) -> Fraction:
        """Trace of ``sigma^*`` for a bijection ``sigma``."""
        if not sigma.is_bijection():
            raise ValueError("trace needs a bijection")
        if self._trace is not None:
            return Fraction(self._trace(sigma))
        mat = self.matrix(sigma)
        return sum((mat[k][k] for k in range(len(mat))), Fraction(0))

    def check_functoriality(self, max_degree: int | None = None) -> bool:
        """Exhaustive check of identities and ``(g o f)^* = f^* g^*``."""
        top = self.max_degree if max_degree is None else min(max_degree, self.max_degree)
        for n in range(1, top + 1):
            if self.matrix(Surjection.identity(n)) != identity(self.dim(n)):
                return False
        for f in iter_all_surjections(top):
            for g in _surjections_from(f.target):
                lhs = self.matrix(compose_surjections(f, g))
                rhs = matmul(self.matrix(f), self.matrix(g), inner=self.dim(f.target))
                if lhs != rhs:
                    return False
        return True

    def restrict(self, r: int) -> "FSModuleData":
        return restrict(self, r)

    def to_dict(self) -> dict:
        matrices = []
        for f in iter_all_surjections(self.max_degree):
            matrices.append(
                {
                    "values": list(f.values),
                    "target": f.target,
                    "matrix": [[_frac_str(x) for x in row] for row in self.matrix(f)],
                }
            )
        return {
            "max_degree": self.max_degree,
            "bases": {str(n): list(self.basis(n)) for n in range(1, self.max_degree + 1)},
            "matrices": matrices,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "FSModuleData":
        N = int(data["max_degree"])
        bases = {int(k): list(v) for k, v in data["bases"].items()}
        action = {}
        for entry in data.get("matrices", []):
            f = Surjection(tuple(entry["values"]), int(entry["target"]))
            action[f] = [[Fraction(x) for x in row] for row in entry["matrix"]]
        M = cls(N, bases, action)
        for f, mat in action.items():
            if f.source > N:
                raise ValueError(f"matrix for {f} lies above degree {N}")
            rows, cols = M.dim(f.source), M.dim(f.target)
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError(f"matrix for {f} should be {rows}x{cols}")
        return M

    @classmethod
    def from_json(cls, text: str) -> "FSModuleData":
        return cls.from_dict(json.loads(text))


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _surjections_from(m: int):
    for k in range(1, m + 1):
        yield from enumerate_surjections(m, k)


def _surjection_label(s: Surjection) -> str:
    return "".join(map(str, s.values)) if s.target < 10 else ",".join(map(str, s.values))


def free_module(d: int, N: int) -> FSModuleData:
    """``V_n`` has basis the surjections ``[n] -> [d]``; ``f^*`` sends
    ``s`` to ``s o f``."""
    if not 1 <= d <= N:
        raise ValueError("need 1 <= d <= N")
    index: dict[int, dict[Surjection, int]] = {}

    def elements(n):
        return enumerate_surjections(n, d)

    def idx(n):
        if n not in index:
            index[n] = {s: k for k, s in enumerate(elements(n))}
        return index[n]

    def action(f: Surjection) -> Matrix:
        rows, cols = idx(f.source), idx(f.target)
        mat = zeros(len(rows), len(cols))
        for s, k in cols.items():
            mat[rows[compose_surjections(f, s)]][k] = Fraction(1)
        return mat

    def trace(sigma: Surjection) -> int:
        # s o sigma = s exactly when s is constant on the cycles of sigma
        return count_surjections(sigma.num_cycles(), d)

    def basis(n):
        return [_surjection_label(s) for s in elements(n)]

    return FSModuleData(N, basis, action, trace, name=f"free({d})")


def zero_module(N: int) -> FSModuleData:
    return FSModuleData(N, {}, lambda f: [], name="zero")


def restrict(M: FSModuleData, r: int) -> FSModuleData:
    """Forget the degrees above ``r``."""
    if not 1 <= r <= M.max_degree:
        raise ValueError(f"cannot restrict a degree-{M.max_degree} module to {r}")
    return FSModuleData(r, M.basis, M.matrix, M._trace, name=M.name)


class _InducedDegree:
    """Degree-``n`` piece of an induced module: generators ``(f, k)`` with
    ``f: [n] -> [m]``, ``m <= r``, ``k`` a basis index of ``V_m``, modulo
    the relations coming from generating morphisms of FS_r.

    Two-term relations ``c x = c' y`` are absorbed by a weighted union-find
    (each generator is a multiple of its class root, or zero); the rest go
    to a sparse echelon form over the roots.  ``monomial=False`` sends
    every relation to the echelon form.
    """

    def __init__(self, M: FSModuleData, n: int, monomial: bool = True):
        self.n = n
        r = M.max_degree
        self.echelon = SparseEchelon()
        self.parent: dict = {}
        self.weight: dict = {}
        self.zero: set = set()
        general = []
        gens = []
        for m in range(1, min(n, r) + 1):
            dim_m = M.dim(m)
            for f in enumerate_surjections(n, m):
                gens.extend((f.values, k) for k in range(dim_m))
                for h in generators(m):
                    mat = M.matrix(h)
                    hf = compose_surjections(f, h).values
                    for k2 in range(M.dim(h.target)):
                        rel = {(f.values, k): x for k, x in ((k, mat[k][k2]) for k in range(dim_m)) if x}
                        key = (hf, k2)
                        rel[key] = rel.get(key, 0) - 1
                        if not rel[key]:
                            del rel[key]
                        if not rel:
                            continue
                        if monomial and len(rel) <= 2:
                            self._absorb(rel)
                        else:
                            general.append(rel)
        for rel in general:
            self.echelon.add(self._to_roots(rel))
        pivots = self.echelon.pivots()
        self.basis = [gen for gen in gens if self._find(gen)[0] == gen and gen not in self.zero and gen not in pivots]
        self.position = {gen: k for k, gen in enumerate(self.basis)}

    def _find(self, x):
        """Root of ``x`` and the factor ``w`` with ``x = w * root``."""
        path = []
        while x in self.parent:
            path.append(x)
            x = self.parent[x]
        w = Fraction(1)
        for y in reversed(path):
            w *= self.weight[y]
            self.parent[y] = x
            self.weight[y] = w
        return x, (self.weight[path[0]] if path else Fraction(1))

    def _absorb(self, rel: dict) -> None:
        items = [(self._find(k), c) for k, c in rel.items()]
        if len(items) == 1:
            (root, w), c = items[0]
            self.zero.add(root)
            return
        ((ra, wa), ca), ((rb, wb), cb) = items
        # ca*wa*ra + cb*wb*rb = 0
        if ra == rb:
            if ca * wa + cb * wb:
                self.zero.add(ra)
            return
        za, zb = ra in self.zero, rb in self.zero
        if _sort_key(rb) < _sort_key(ra):
            ra, rb, wa, wb, ca, cb, za, zb = rb, ra, wb, wa, cb, ca, zb, za
        # attach rb below ra: rb = -(ca*wa)/(cb*wb) * ra
        self.parent[rb] = ra
        self.weight[rb] = -Fraction(ca * wa) / (cb * wb)
        if za or zb:
            self.zero.add(ra)

    def _to_roots(self, vec: dict) -> dict:
        out: dict = {}
        for key, x in vec.items():
            root, w = self._find(key)
            if root in self.zero:
                continue
            y = out.get(root, 0) + x * w
            if y:
                out[root] = y
            else:
                out.pop(root, None)
        return out

    def coordinates(self, vec: dict) -> dict[int, Fraction]:
        return {self.position[key]: x for key, x in self.echelon.reduce(self._to_roots(vec)).items()}


def induce(M: FSModuleData, n_target: int) -> FSModuleData:
    """Left Kan extension of a degree-``r`` module up to degree ``n_target``."""
    r = M.max_degree
    if n_target < r:
        raise ValueError("n_target must be at least the max degree")
    degrees: dict[int, _InducedDegree] = {}

    def piece(n):
        if n not in degrees:
            degrees[n] = _InducedDegree(M, n)
        return degrees[n]

    def basis(n):
        return [f"{''.join(map(str, f))}:{k}" for f, k in piece(n).basis]

    def action(g: Surjection) -> Matrix:
        src, tgt = piece(g.source), piece(g.target)
        mat = zeros(len(src.basis), len(tgt.basis))
        for col, (f, k) in enumerate(tgt.basis):
            fg = compose_surjections(g, Surjection(f, max(f))).values
            for row, x in src.coordinates({(fg, k): 1}).items():
                mat[row][col] += x
        return mat

    return FSModuleData(n_target, basis, action, name=f"Ind({M.name})")


def unit_is_isomorphism(M: FSModuleData, n: int, induced: FSModuleData | None = None) -> bool:
    """For ``n <= r``: the map ``V_n -> Ind(M)_n``, ``v -> (id, v)``, is bijective."""
    piece = _InducedDegree(M, n)
    dim = M.dim(n)
    if len(piece.basis) != dim:
        return False
    ident = tuple(range(1, n + 1))
    rows = []
    for k in range(dim):
        coords = piece.coordinates({(ident, k): 1})
        rows.append([coords.get(j, Fraction(0)) for j in range(dim)])
    return rank(rows) == dim if dim else True


def counit_is_isomorphism(M_small: FSModuleData, M_full: FSModuleData, n: int) -> bool:
    """Whether ``(f, v) -> f^* v`` identifies ``Ind(M_small)_n`` with ``(M_full)_n``.

    ``M_small`` must be a restriction of the functorial module ``M_full``;
    that is what makes the map well defined on the quotient.
    """
    piece = _InducedDegree(M_small, n)
    dim = M_full.dim(n)
    if len(piece.basis) != dim:
        return False
    if dim == 0:
        return True
    cols = []
    for f, k in piece.basis:
        mat = M_full.matrix(Surjection(f, max(f)))
        cols.append([mat[row][k] for row in range(dim)])
    return rank(cols) == dim


def induced_dims(M: FSModuleData, n_target: int) -> list[int]:
    return [len(_InducedDegree(M, n).basis) for n in range(1, n_target + 1)]
