"""Exact linear algebra over the rationals.

Dense matrices are lists of rows of :class:`fractions.Fraction`; sparse
vectors are ``dict`` objects mapping a column index to a nonzero value.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product ``a @ b``.  ``inner`` is needed only when both operands are empty."""
    if inner is None:
        inner = len(b) if b else (len(a[0]) if a else 0)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        out_row = out[i]
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        out_row[j] += x * y
    return out


def rref(matrix: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_fraction_matrix(matrix)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis (as row vectors) of ``{x : matrix @ x = 0}``."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    red, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of the square or overdetermined system ``a x = b``."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("linear system has no unique solution")
    return [row[-1] for row in red]


class SparseEchelon:
    """Incrementally maintained, fully reduced echelon basis of a row space.

    Rows are sparse dicts.  Every stored row has value 1 at its pivot and 0
    at every other pivot, so :meth:`reduce` computes a normal form modulo
    the span in a single pass.
    """

    def __init__(self) -> None:
        self.rows: dict[Hashable, dict] = {}
        self._columns: dict[Hashable, set] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        out = dict(vec)
        for p in [k for k in vec if k in self.rows]:
            c = vec[p]
            for col, x in self.rows[p].items():
                y = out.get(col, 0) - c * x
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
        return out

    def add(self, vec: dict) -> bool:
        """Add a vector to the span; return False if it was already in it."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r, key=_sort_key)
        inv = 1 / Fraction(r[pivot])
        r = {k: v * inv for k, v in r.items()}
        for p in list(self._columns.get(pivot, ())):
            row = self.rows[p]
            c = row[pivot]
            for col, x in r.items():
                old = row.get(col, 0)
                y = old - c * x
                if y:
                    if not old:
                        self._columns.setdefault(col, set()).add(p)
                    row[col] = y
                else:
                    row.pop(col, None)
                    self._columns[col].discard(p)
        self.rows[pivot] = r
        for col in r:
            self._columns.setdefault(col, set()).add(pivot)
        return True

    def pivots(self) -> set:
        return set(self.rows)


def _sort_key(k):
    return (type(k).__name__, k)


def invariant_subspace_trace(op: Matrix, basis: Matrix) -> Fraction:
    """Trace of ``op`` restricted to the invariant subspace spanned by the
    rows of ``basis`` (which must be linearly independent).

    ``op`` acts on column vectors.  Solves ``op b_k = sum_j X[j][k] b_j``.
    """
    if not basis:
        return Fraction(0)
    n = len(basis[0])
    images = [[sum((op[i][c] * b[c] for c in range(n) if b[c]), Fraction(0)) for i in range(n)] for b in basis]
    # columns of the coefficient matrix are the basis vectors
    a = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    red, pivots = rref([row + [img[i] for img in images] for i, row in enumerate(a)])
    k = len(basis)
    if pivots and pivots[-1] >= k:
        raise ValueError("subspace is not invariant")
    return sum((red[j][k + j] for j in range(k)), Fraction(0))
