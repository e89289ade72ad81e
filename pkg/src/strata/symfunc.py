"""Partitions, characters of symmetric groups, and decompositions of
FS^op-module degrees into irreducibles.

Partitions are plain tuples of weakly decreasing positive integers.
Symmetric functions are kept in the power-sum basis as ``{partition: Fraction}``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator, Mapping, Sequence

from .fs_category import FSModuleData, Surjection, compose_surjections, enumerate_surjections, permutation_of_cycle_type
from .linalg import SparseEchelon

Partition = tuple


def partition(parts: Sequence[int]) -> Partition:
    lam = tuple(sorted((int(x) for x in parts if x), reverse=True))
    if any(x < 0 for x in lam):
        raise ValueError(f"negative part in {parts}")
    return lam


@lru_cache(maxsize=None)
def partitions(m: int, cap: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``m`` in decreasing lexicographic order."""
    cap = m if cap is None else cap
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, cap), 0, -1):
        out.extend((first,) + rest for rest in partitions(m - first, first))
    return tuple(out)


def pad(lam: Partition, n: int) -> Partition:
    """``lam + n``: the first row lengthened by ``n``."""
    if not lam:
        return (n,) if n else ()
    return (lam[0] + n,) + tuple(lam[1:])


def z(mu: Partition) -> int:
    out = 1
    for part, mult in Counter(mu).items():
        out *= part**mult * factorial(mult)
    return out


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // z(mu)


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: Partition) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in beta:
            continue
        height = sum(1 for x in beta if c < x < b)
        total += (-1) ** height * _mn((beta - {b}) | {c}, rest)
    return total


def irreducible_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """``chi^lam(mu)`` by removing rim hooks of lengths ``mu`` one at a time
    (beads on an abacus)."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"|{lam}| != |{mu}|")
    ell = len(lam)
    beta = frozenset(lam[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, mu)


def dimension(lam: Sequence[int]) -> int:
    """Hook length formula."""
    lam = partition(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(sum(lam)) // hooks


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()


_TABLES: dict[int, dict] = {}


def character_table(m: int) -> dict[Partition, dict[Partition, int]]:
    if m not in _TABLES:
        _TABLES[m] = {lam: {mu: irreducible_character(lam, mu) for mu in partitions(m)} for lam in partitions(m)}
    return _TABLES[m]


def decompose_class_function(values: Mapping[Partition, Fraction], m: int) -> dict[Partition, Fraction]:
    table = character_table(m)
    out = {}
    for lam in partitions(m):
        c = sum((Fraction(values[mu]) * table[lam][mu] / z(mu) for mu in partitions(m)), Fraction(0))
        if c:
            out[lam] = c
    return out


def module_character(M: FSModuleData, m: int) -> dict[Partition, Fraction]:
    return {mu: M.trace(permutation_of_cycle_type(mu)) for mu in partitions(m)}


def decompose_degree(M: FSModuleData, m: int) -> dict[Partition, int]:
    """Multiplicities of the irreducibles of S_m in ``V_m``."""
    mults = decompose_class_function(module_character(M, m), m)
    out = {}
    for lam, c in mults.items():
        if c.denominator != 1 or c < 0:
            raise ValueError(f"multiplicity {c} of {lam} in degree {m} is not a natural number")
        out[lam] = int(c)
    if sum(k * dimension(lam) for lam, k in out.items()) != M.dim(m):
        raise ValueError(f"multiplicities in degree {m} do not add up to the dimension")
    return out


# -- symmetric functions in the power-sum basis ------------------------------

def _times(a: Mapping, b: Mapping, max_degree: int) -> dict:
    out: dict = {}
    for alpha, x in a.items():
        for beta, y in b.items():
            if sum(alpha) + sum(beta) > max_degree:
                continue
            key = tuple(sorted(alpha + beta, reverse=True))
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def schur_in_power_sums(lam: Partition) -> dict[Partition, Fraction]:
    k = sum(lam)
    return {rho: Fraction(irreducible_character(lam, rho), z(rho)) for rho in partitions(k) if irreducible_character(lam, rho)}


def _p_of_h_sum(r: int, m: int) -> dict[Partition, Fraction]:
    """``p_r[h_1 + h_2 + ...]`` up to degree ``m``, using ``p_r[p_nu] = p_{r nu}``."""
    out: dict = {}
    for j in range(1, m // r + 1):
        for nu in partitions(j):
            key = tuple(r * x for x in nu)
            out[key] = out.get(key, 0) + Fraction(1, z(nu))
    return out


def plethysm_degree_term(lam: Sequence[int], m: int) -> dict[Partition, int]:
    """Schur expansion of the degree-``m`` part of ``s_lam[h_1 + h_2 + ...]``."""
    lam = partition(lam)
    if m < sum(lam):
        raise ValueError("degree below |lam|")
    total: dict = {}
    for rho, c in schur_in_power_sums(lam).items():
        term: dict = {(): Fraction(1)}
        for r in rho:
            term = _times(term, _p_of_h_sum(r, m), m)
        for pi, x in term.items():
            if sum(pi) == m:
                total[pi] = total.get(pi, 0) + c * x
    out = {}
    table = character_table(m)
    for nu in partitions(m):
        c = sum((x * table[nu][pi] for pi, x in total.items()), Fraction(0))
        if c:
            if c.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {c}")
            out[nu] = int(c)
    return out


# -- projective modules --------------------------------------------------------

def young_symmetrizer(lam: Partition) -> dict[tuple[int, ...], int]:
    """``sum_{p in R, q in C} sgn(q) p q`` for the row-reading tableau of ``lam``,
    as a map from permutations of ``[n]`` (1-based value tuples) to coefficients."""
    n = sum(lam)
    rows, start = [], 1
    for part in lam:
        rows.append(list(range(start, start + part)))
        start += part
    cols = [[row[j] for row in rows if j < len(row)] for j in range(lam[0] if lam else 0)]

    def group(blocks):
        perms = [tuple(range(1, n + 1))]
        for block in blocks:
            new = []
            for base in perms:
                for image in permutations(block):
                    p = list(base)
                    for a, b in zip(block, image):
                        p[a - 1] = b
                    new.append(tuple(p))
            perms = new
        return perms

    def sign(p):
        s = 1
        seen = set()
        for x in range(1, n + 1):
            length = 0
            while x not in seen:
                seen.add(x)
                x = p[x - 1]
                length += 1
            if length and length % 2 == 0:
                s = -s
        return s

    out: dict = {}
    for p in group(rows):
        for q in group(cols):
            pq = tuple(p[q[x] - 1] for x in range(n))
            out[pq] = out.get(pq, 0) + sign(q)
    return {k: v for k, v in out.items() if v}


def projective_module(lam: Sequence[int], N: int) -> FSModuleData:
    """``M_lam (x)_{S_n} QFS(-, n)`` as the image of the Young symmetrizer of
    ``lam`` acting by postcomposition on the free module ``QFS(-, n)``."""
    lam = partition(lam)
    n = sum(lam)
    c = young_symmetrizer(lam)
    perms = [Surjection(p, n) for p in c]
    coeffs = list(c.values())
    spaces: dict[int, SparseEchelon] = {}

    def space(m):
        if m not in spaces:
            ech = SparseEchelon()
            for s in enumerate_surjections(m, n):
                vec: dict = {}
                for tau, x in zip(perms, coeffs):
                    key = compose_surjections(s, tau).values
                    vec[key] = vec.get(key, 0) + x
                ech.add({k: v for k, v in vec.items() if v})
            spaces[m] = ech
        return spaces[m]

    def basis_keys(m):
        return sorted(space(m).rows, key=lambda k: (type(k).__name__, k))

    def basis(m):
        return ["".join(map(str, k)) for k in basis_keys(m)]

    def pull(f: Surjection, vec: dict) -> dict:
        out: dict = {}
        for key, x in vec.items():
            new = compose_surjections(f, Surjection(key, n)).values
            out[new] = out.get(new, 0) + x
        return out

    def action(f: Surjection):
        src, tgt = basis_keys(f.source), basis_keys(f.target)
        pos = {k: i for i, k in enumerate(src)}
        rows = [[Fraction(0)] * len(tgt) for _ in src]
        tgt_space = space(f.target)
        for j, p in enumerate(tgt):
            # reduced rows have value 1 at their pivot and 0 at other pivots,
            # so coordinates are read off at the pivots
            image = pull(f, tgt_space.rows[p])
            for k, x in image.items():
                if k in pos:
                    rows[pos[k]][j] += x
        return rows

    def trace(sigma: Surjection):
        mat = action(sigma)
        return sum((mat[k][k] for k in range(len(mat))), Fraction(0))

    return FSModuleData(N, basis, action, trace, name=f"proj{lam}")


# -- profiles ----------------------------------------------------------------

def multiplicity_profile(M: FSModuleData, lam: Sequence[int]) -> list[int]:
    """Multiplicity of ``lam + n`` in degree ``|lam| + n`` for every degree
    between ``max(1, |lam|)`` and the max degree of ``M``."""
    lam = partition(lam)
    size = sum(lam)
    out = []
    for n in range(max(0, 1 - size), M.max_degree - size + 1):
        out.append(decompose_degree(M, size + n).get(pad(lam, n), 0))
    return out


def polynomial_degree(values: Sequence, min_points: int = 1) -> int | None:
    """Least ``k`` such that the sequence agrees with a polynomial of degree
    ``k``, judged by vanishing ``(k+1)``-st differences.  The zero sequence
    has degree -1.  Returns None if there are too few terms to confirm
    any degree with ``min_points`` extra checks."""
    seq = [Fraction(v) for v in values]
    if all(v == 0 for v in seq):
        return -1
    k = 0
    diffs = seq
    while len(diffs) > min_points:
        nxt = [b - a for a, b in zip(diffs, diffs[1:])]
        if all(x == 0 for x in nxt):
            return k
        diffs = nxt
        k += 1
    return None


def tail_polynomial_degree(values: Sequence, start: int, min_points: int = 1) -> int | None:
    return polynomial_degree(list(values)[start:], min_points)


def partition_lengths(mults: Mapping[Partition, int]) -> list[int]:
    return sorted({len(lam) for lam, k in mults.items() if k})


def multiplicities_to_json(mults: Mapping[Partition, int]) -> list[dict]:
    return [{"partition": list(lam), "multiplicity": int(k)} for lam, k in sorted(mults.items(), reverse=True)]


def iter_constituents(M: FSModuleData, degrees: Sequence[int]) -> Iterator[tuple[int, Partition, int]]:
    for m in degrees:
        for lam, k in decompose_degree(M, m).items():
            yield m, lam, k
