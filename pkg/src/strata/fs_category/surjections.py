"""Finite sets and surjections."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator


@dataclass(frozen=True, order=True)
class Surjection:
    """A surjection ``[n] -> [m]`` stored as its 1-based list of values."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if self.target < 1 or len(self.values) < self.target:
            raise ValueError(f"no surjection [{len(self.values)}] -> [{self.target}]")
        if set(self.values) != set(range(1, self.target + 1)):
            raise ValueError(f"{list(self.values)} is not a surjection onto [{self.target}]")

    @classmethod
    def of(cls, values) -> "Surjection":
        values = tuple(values)
        return cls(values, max(values))

    @classmethod
    def identity(cls, n: int) -> "Surjection":
        return cls(tuple(range(1, n + 1)), n)

    @property
    def source(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> int:
        return self.values[x - 1]

    def is_bijection(self) -> bool:
        return self.source == self.target

    def num_cycles(self) -> int:
        if not self.is_bijection():
            raise ValueError("cycles are defined for bijections only")
        seen = set()
        cycles = 0
        for x in range(1, self.source + 1):
            if x not in seen:
                cycles += 1
                while x not in seen:
                    seen.add(x)
                    x = self(x)
        return cycles

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.values)) + "]"


def compose_surjections(f: Surjection, g: Surjection) -> Surjection:
    """``g o f`` for ``f: [n] -> [m]`` and ``g: [m] -> [k]``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose [{f.source}]->[{f.target}] with [{g.source}]->[{g.target}]")
    return Surjection(tuple(g.values[x - 1] for x in f.values), g.target)


def enumerate_surjections(n: int, m: int) -> list[Surjection]:
    """All surjections ``[n] -> [m]`` in lexicographic order of values."""
    if m < 1 or n < m:
        return []
    out: list[Surjection] = []
    values: list[int] = []
    used = [0] * (m + 1)

    def rec(pos: int, missing: int) -> None:
        if pos == n:
            if missing == 0:
                out.append(Surjection(tuple(values), m))
            return
        if n - pos < missing:
            return
        for y in range(1, m + 1):
            values.append(y)
            used[y] += 1
            rec(pos + 1, missing - (used[y] == 1))
            used[y] -= 1
            values.pop()

    rec(0, m)
    return out


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind by the standard recurrence."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def count_surjections(n: int, m: int) -> int:
    """``m! S(n, m)``."""
    if m < 1 or n < m:
        return 0
    return factorial(m) * stirling2(n, m)


def count_surjections_inclusion_exclusion(n: int, m: int) -> int:
    if m < 1 or n < m:
        return 0
    return sum((-1) ** j * comb(m, j) * (m - j) ** n for j in range(m + 1))


def permutation_of_cycle_type(mu) -> Surjection:
    """A bijection of ``[|mu|]`` whose cycles are consecutive blocks of sizes ``mu``."""
    values = []
    start = 0
    for part in mu:
        for k in range(part):
            values.append(start + (k + 1) % part + 1)
        start += part
    return Surjection(tuple(values), len(values))


def generators(m: int) -> list[Surjection]:
    """Generators of the morphisms out of ``[m]``: adjacent transpositions of
    ``[m]`` and the map ``[m] -> [m-1]`` merging ``m`` into ``m-1``."""
    out = []
    for k in range(1, m):
        vals = list(range(1, m + 1))
        vals[k - 1], vals[k] = vals[k], vals[k - 1]
        out.append(Surjection(tuple(vals), m))
    if m >= 2:
        out.append(Surjection(tuple(range(1, m)) + (m - 1,), m - 1))
    return out


def iter_all_surjections(max_degree: int) -> Iterator[Surjection]:
    for n in range(1, max_degree + 1):
        for m in range(1, n + 1):
            yield from enumerate_surjections(n, m)
