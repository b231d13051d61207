"""Dense exact linear algebra over F_{q^m}.

Matrices are lists of rows, rows are lists of field ints. Everything here
works on copies; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NoSolution, ShapeMismatch
from .field_core import FieldCtx

Matrix = list[list[int]]


def ncols_of(M: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    if ncols is not None:
        return ncols
    if not M:
        raise ShapeMismatch("cannot infer the column count of an empty matrix")
    return len(M[0])


def echelon(F: FieldCtx, M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Nonzero rows of the reduced row-echelon form and their pivot columns."""
    if not M:
        return [], []
    ncols = ncols_of(M, ncols)
    rows = [list(r) for r in M]
    if any(len(r) != ncols for r in rows):
        raise ShapeMismatch("ragged matrix")
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    neg = F.neg
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = F.scale(F.inv(lead), rows[r])
        pr = rows[r]
        tail = pr[c:]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    row[c:] = F.axpy(neg(f), tail, row[c:])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(F: FieldCtx, M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, int]:
    """Canonical RREF (zero rows kept at the bottom) and the rank."""
    R, piv = echelon(F, M, ncols)
    n = ncols_of(M, ncols) if M else (ncols or 0)
    zeros = [[0] * n for _ in range(len(M) - len(R))]
    return R + zeros, len(piv)


def rank(F: FieldCtx, M: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(echelon(F, M, ncols)[1])


def right_kernel(F: FieldCtx, M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of {x : M x^T = 0}."""
    ncols = ncols_of(M, ncols)
    R, piv = echelon(F, M, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(R, piv):
            if row[f]:
                x[pc] = F.neg(row[f])
        basis.append(x)
    return basis


@dataclass(frozen=True)
class RowSpace:
    """Row space stored by its canonical RREF basis; equality is structural."""

    basis: tuple[tuple[int, ...], ...]
    ncols: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.basis]


def row_space(F: FieldCtx, M: Sequence[Sequence[int]], ncols: int | None = None) -> RowSpace:
    ncols = ncols_of(M, ncols)
    R, _ = echelon(F, M, ncols)
    return RowSpace(tuple(tuple(r) for r in R), ncols)


def same_row_space(F: FieldCtx, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    return row_space(F, A) == row_space(F, B)


def _common_cols(A, B, ncols):
    ca = len(A[0]) if A else None
    cb = len(B[0]) if B else None
    cols = {c for c in (ca, cb, ncols) if c is not None}
    if len(cols) != 1:
        raise ShapeMismatch(f"column counts differ: {sorted(cols)}")
    return cols.pop()


def row_space_sum(F: FieldCtx, A, B, ncols: int | None = None) -> RowSpace:
    n = _common_cols(A, B, ncols)
    return row_space(F, list(A) + list(B), n)


def row_space_intersection(F: FieldCtx, A, B, ncols: int | None = None) -> RowSpace:
    """<A> ∩ <B> as the kernel of the stacked kernels."""
    n = _common_cols(A, B, ncols)
    KA = right_kernel(F, A, n) if A else [[int(i == j) for j in range(n)] for i in range(n)]
    KB = right_kernel(F, B, n) if B else [[int(i == j) for j in range(n)] for i in range(n)]
    return row_space(F, right_kernel(F, KA + KB, n), n)


def expand_over_fq(F: FieldCtx, v: Sequence[int]) -> Matrix:
    """t x m matrix whose row i holds the F_q-coordinates of v[i]."""
    return [list(F.fq_coords(x)) for x in v]


def solve_linear(F: FieldCtx, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """One solution of A x = b; free variables are set to zero."""
    if len(A) != len(b):
        raise ShapeMismatch("right-hand side length differs from the row count")
    n = ncols_of(A)
    R, piv = echelon(F, [list(row) + [bi] for row, bi in zip(A, b)], n + 1)
    if piv and piv[-1] == n:
        raise NoSolution("inconsistent linear system")
    x = [0] * n
    for row, pc in zip(R, piv):
        x[pc] = row[n]
    return x


def mat_mul(F: FieldCtx, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and len(A[0]) != len(B):
        raise ShapeMismatch("inner dimensions differ")
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for a, brow in zip(row, B):
            if a:
                acc = F.axpy(a, brow, acc)
        out.append(acc)
    return out


def vec_mat(F: FieldCtx, x: Sequence[int], B: Sequence[Sequence[int]]) -> list[int]:
    return mat_mul(F, [list(x)], B)[0]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*M)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_zero(M: Sequence[Sequence[int]]) -> bool:
    return all(not x for row in M for x in row)
