"""Small dense exact linear algebra over Q(i).

Matrices are lists of rows.  Sizes here are tiny (n <= a handful), so plain
Gaussian elimination is the right tool.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import SingularMatrixError
from .scalars import ONE, ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


def as_matrix(A: Sequence[Sequence]) -> Matrix:
    return [[GaussianRational.coerce(x) for x in row] for row in A]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), ZERO) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list[GaussianRational]:
    return [sum((a * x for a, x in zip(row, v)), ZERO) for row in A]


def row_echelon(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = as_matrix(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(row_echelon(A)[1])


def determinant(A: Sequence[Sequence]) -> GaussianRational:
    M = as_matrix(A)
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + list(e) for row, e in zip(as_matrix(A), identity(n))]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def solve(A: Sequence[Sequence], b: Sequence) -> list[GaussianRational]:
    """Solve A x = b for square invertible A."""
    inv = inverse(A)
    return matvec(inv, [GaussianRational.coerce(x) for x in b])


def in_column_span(U: Sequence[Sequence], v: Sequence) -> bool:
    """Whether vector v lies in the span of the columns of U (n x k)."""
    if not U or not U[0]:
        return all(not GaussianRational.coerce(x) for x in v)
    aug = [list(row) + [x] for row, x in zip(U, v)]
    return rank(aug) == rank(U)


def complete_to_basis(rows: Sequence[Sequence], n: int) -> list[int]:
    """Indices j of unit vectors e_j which, appended to ``rows``, give a basis of n-space.

    ``rows`` must be linearly independent; indices are chosen greedily in
    increasing order, so the result is deterministic.
    """
    current = [list(r) for r in rows]
    if rank(current) < len(current):
        raise SingularMatrixError("rows are linearly dependent")
    chosen = []
    for j in range(n):
        if len(current) == n:
            break
        e = [ONE if i == j else ZERO for i in range(n)]
        if rank(current + [e]) > len(current):
            current.append(e)
            chosen.append(j)
    return chosen
