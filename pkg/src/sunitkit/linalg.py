"""Small exact linear algebra over Fraction matrices (tuples of tuples)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_matrix(rows: Sequence[Sequence[Fraction | int]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def matvec(m: Matrix, v: Sequence[Fraction | int]) -> Vector:
    if any(len(row) != len(v) for row in m):
        raise ValueError("dimension mismatch")
    return tuple(sum((a * Fraction(x) for a, x in zip(row, v)), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if any(len(row) != len(b) for row in a):
        raise ValueError("dimension mismatch")
    cols = len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols))
        for i in range(len(a))
    )


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def det(m: Matrix) -> Fraction:
    """Determinant by fraction elimination; exact."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of non-square matrix")
    a = [list(row) for row in m]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        d *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            f = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return sign * d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; canonical for the row space."""
    a = [list(row) for row in m]
    n_rows, n_cols = len(a), len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    nonzero = [tuple(row) for row in a if any(x != 0 for x in row)]
    return tuple(nonzero), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[0])


def nullspace(m: Matrix) -> Matrix:
    """Basis (rows) of the right nullspace {v : m v = 0}."""
    if not m:
        raise ValueError("empty matrix")
    reduced, pivots = rref(m)
    n_cols = len(m[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve_in_row_space(basis: Matrix, target: Vector) -> Vector | None:
    """Coefficients c with c . basis == target, or None if target is outside."""
    n = len(basis)
    aug = [list(col) + [t] for col, t in zip(zip(*basis), target)]
    reduced, pivots = rref(as_matrix(aug))
    if any(pc == n for pc in pivots):
        return None
    coeffs = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        coeffs[pc] = reduced[r][n]
    return tuple(coeffs)
