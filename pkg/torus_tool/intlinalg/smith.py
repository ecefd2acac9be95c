"""Exact integer matrix algebra.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so every
entry is arbitrary precision and nothing is ever converted to floating point.
"""

import logging
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

IntMatrix = np.ndarray


class DimensionError(ValueError):
    """Raised when matrix and vector shapes do not fit together."""


class SmithForm(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]


class CokernelInvariants(NamedTuple):
    free_rank: int
    torsion: Tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, 'Z')
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return ' + '.join(parts) if parts else '0'


def int_matrix(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    """Build an object-dtype integer matrix; ``cols`` fixes the width of empty inputs."""
    rows = [list(row) for row in rows]
    width = cols if cols is not None else (len(rows[0]) if rows else 0)
    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DimensionError(f"Row {i} has {len(row)} entries, expected {width}")
        for j, entry in enumerate(row):
            matrix[i, j] = int(entry)
    return matrix


def identity_matrix(n: int) -> IntMatrix:
    return int_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def zero_matrix(rows: int, cols: int) -> IntMatrix:
    return int_matrix([[0] * cols for _ in range(rows)], cols=cols)


def as_int_matrix(A) -> IntMatrix:
    if isinstance(A, np.ndarray) and A.dtype == object and A.ndim == 2:
        return A
    array = np.asarray(A)
    if array.ndim != 2:
        raise DimensionError(f"Expected a 2-dimensional matrix, got shape {array.shape}")
    return int_matrix(array.tolist(), cols=array.shape[1])


def matvec(A: IntMatrix, x: Sequence[int]) -> List[int]:
    rows, cols = A.shape
    if len(x) != cols:
        raise DimensionError(f"Cannot multiply {rows}x{cols} matrix by vector of length {len(x)}")
    return [sum(int(A[i, j]) * int(x[j]) for j in range(cols)) for i in range(rows)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"Cannot multiply {A.shape} by {B.shape}")
    rows, inner, cols = A.shape[0], A.shape[1], B.shape[1]
    return int_matrix([[sum(int(A[i, k]) * int(B[k, j]) for k in range(inner)) for j in range(cols)]
                       for i in range(rows)], cols=cols)


def determinant(A) -> int:
    """Fraction-free (Bareiss) determinant."""
    A = as_int_matrix(A)
    n, cols = A.shape
    if n != cols:
        raise DimensionError(f"Determinant of non-square {n}x{cols} matrix")
    if n == 0:
        return 1
    M = [[int(A[i, j]) for j in range(n)] for i in range(n)]
    sign, previous = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // previous
        previous = M[k][k]
    return sign * M[n - 1][n - 1]


def _find_pivot(D: IntMatrix, start: int) -> Optional[Tuple[int, int]]:
    best = None
    rows, cols = D.shape
    for i in range(start, rows):
        for j in range(start, cols):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A) -> SmithForm:
    """Return ``(U, D, V)`` with ``U @ A @ V == D``.

    Pivots are the smallest nonzero absolute value of the remaining block,
    ties broken by (row, column), so the result is reproducible.
    """
    D = as_int_matrix(A).copy()
    rows, cols = D.shape
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    for t in range(min(rows, cols)):
        while True:
            pivot = _find_pivot(D, t)
            if pivot is None:
                return SmithForm(U, D, V)
            i, j = pivot
            if i != t:
                D[[i, t]] = D[[t, i]]
                U[[i, t]] = U[[t, i]]
            if j != t:
                D[:, [j, t]] = D[:, [t, j]]
                V[:, [j, t]] = V[:, [t, j]]
            p = D[t, t]

            clean = True
            for i in range(t + 1, rows):
                q = D[i, t] // p
                if q:
                    D[i] = D[i] - q * D[t]
                    U[i] = U[i] - q * U[t]
                if D[i, t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = D[t, j] // p
                if q:
                    D[:, j] = D[:, j] - q * D[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                if D[t, j] != 0:
                    clean = False
            if not clean:
                continue

            offender = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                             if D[i, j] % p != 0), None)
            if offender is not None:
                D[t] = D[t] + D[offender[0]]
                U[t] = U[t] + U[offender[0]]
                continue
            break

        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
    return SmithForm(U, D, V)


def solve_integer(A, b: Sequence[int]) -> Optional[List[int]]:
    """Some integer ``y`` with ``A @ y == b``, or ``None`` when ``b`` is outside the lattice."""
    A = as_int_matrix(A)
    rows, cols = A.shape
    if len(b) != rows:
        raise DimensionError(f"Right-hand side has length {len(b)}, matrix has {rows} rows")
    U, D, V = smith_normal_form(A)
    c = matvec(U, b)
    z = [0] * cols
    for i in range(rows):
        d = int(D[i, i]) if i < min(rows, cols) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            z[i] = c[i] // d
    return matvec(V, z)


def cokernel_invariants(A) -> CokernelInvariants:
    """Invariants of ``Z^rows / A Z^cols``."""
    A = as_int_matrix(A)
    diagonal = smith_normal_form(A).diagonal
    nonzero = [d for d in diagonal if d != 0]
    return CokernelInvariants(A.shape[0] - len(nonzero), tuple(d for d in nonzero if d > 1))


def _check_square(A: IntMatrix) -> None:
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"Expected a square matrix, got {A.shape}")


def mat_power(A, k: int) -> IntMatrix:
    A = as_int_matrix(A)
    _check_square(A)
    if k < 0:
        raise DimensionError("Negative matrix powers are not supported")
    result = identity_matrix(A.shape[0])
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def mat_sum_powers(A, k: int) -> IntMatrix:
    """``I + A + ... + A^(k-1)``; the empty sum for ``k == 0``."""
    A = as_int_matrix(A)
    _check_square(A)
    n = A.shape[0]
    total = zero_matrix(n, n)
    term = identity_matrix(n)
    for _ in range(k):
        total = total + term
        term = matmul(term, A)
    return total


def characteristic_polynomial(A) -> List[int]:
    """Coefficients of ``det(tI - A)``, leading coefficient first (Faddeev-LeVerrier)."""
    A = as_int_matrix(A)
    _check_square(A)
    n = A.shape[0]
    identity = identity_matrix(n)
    coefficients = [1]
    M = identity
    for k in range(1, n + 1):
        AM = matmul(A, M)
        c = Fraction(-sum(int(AM[i, i]) for i in range(n)), k)
        if c.denominator != 1:
            raise ArithmeticError(f"Non-integral coefficient {c} in characteristic polynomial")
        coefficients.append(int(c))
        M = AM + int(c) * identity
    return coefficients


def format_matrix(A) -> str:
    A = as_int_matrix(A)
    return '\n'.join(' '.join(str(int(x)) for x in row) for row in A)
