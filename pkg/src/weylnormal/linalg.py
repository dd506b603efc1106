"""Small exact matrix helpers (matrices are tuples of tuples of int/Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import rational

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(rational(Fraction(x)) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = tuple(zip(*B))
    return tuple(tuple(rational(sum(a * b for a, b in zip(row, col))) for col in Bt) for row in A)


def matvec(A: Matrix, v: Sequence) -> tuple:
    return tuple(rational(sum(a * x for a, x in zip(row, v))) for row in A)


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return tuple(tuple(rational(x) for x in row[n:]) for row in M)


def left_inverse(E: Matrix) -> Matrix:
    """``(E^T E)^{-1} E^T`` for a full-column-rank ``E``."""
    Et = transpose(E)
    return matmul(inverse(matmul(Et, E)), Et)


def is_signed_permutation(A: Matrix) -> bool:
    n = len(A)
    cols_seen = set()
    for row in A:
        nz = [(j, x) for j, x in enumerate(row) if x != 0]
        if len(nz) != 1 or nz[0][1] not in (1, -1):
            return False
        cols_seen.add(nz[0][0])
    return len(cols_seen) == n


def signed_perm_of(A: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(perm, signs)`` with ``A e_k = signs[k] e_{perm[k]}``."""
    n = len(A)
    perm = [0] * n
    signs = [0] * n
    for r in range(n):
        for k in range(n):
            if A[r][k]:
                perm[k] = r
                signs[k] = int(A[r][k])
    return tuple(perm), tuple(signs)


def signed_perm_matrix(perm: Sequence[int], signs: Sequence[int]) -> Matrix:
    n = len(perm)
    A = [[0] * n for _ in range(n)]
    for k in range(n):
        A[perm[k]][k] = signs[k]
    return tuple(tuple(r) for r in A)
