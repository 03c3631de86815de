"""Exact linear algebra over the rationals.

Rank and determinant use fraction-free (Bareiss) elimination on integer
matrices obtained by clearing denominators row by row; this keeps all
intermediate values integral and avoids coefficient blowup at the small
dimensions used here.  Basis extraction uses ordinary rational Gauss-Jordan.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InternalError, StructureError

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank via fraction-free elimination."""
    m = _as_int_rows(rows)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, n_rows):
            for j in range(col + 1, n_cols):
                value = m[i][j] * m[r][col] - m[i][col] * m[r][j]
                quot, rem = divmod(value, prev)
                if rem:
                    raise InternalError("fraction-free elimination produced a non-exact division")
                m[i][j] = quot
            m[i][col] = 0
        prev = m[r][col]
        r += 1
        if r == n_rows:
            break
    return r


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant via fraction-free elimination with row pivoting."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructureError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        rs = 1
        for x in row:
            rs = rs * x.denominator // gcd(rs, x.denominator)
        scale *= rs
        m.append([int(x * rs) for x in row])
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((i for i in range(col, n) if m[i][col]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                value = m[i][j] * m[col][col] - m[i][col] * m[col][j]
                quot, rem = divmod(value, prev)
                if rem:
                    raise InternalError("fraction-free elimination produced a non-exact division")
                m[i][j] = quot
            m[i][col] = 0
        prev = m[col][col]
    return Fraction(sign * m[n - 1][n - 1]) / scale


def leading_principal_minors(matrix: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    n = len(matrix)
    return [det([row[: k + 1] for row in matrix[: k + 1]]) for k in range(n)]


def is_negative_definite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester test: leading principal minors alternate in sign, starting negative."""
    minors = leading_principal_minors(matrix)
    return all(
        (minor < 0) if k % 2 == 0 else (minor > 0) for k, minor in enumerate(minors)
    )


def rref_basis(rows: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Reduced row-echelon basis of the row space (zero rows dropped)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][col]
        m[r] = [x / pivot for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return [row for row in m[:r]]


def in_row_space(rows: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> bool:
    base = [list(row) for row in rows]
    return rank(base) == rank(base + [list(vector)])


def null_space(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}, denominators cleared to integer vectors."""
    echelon = rref_basis(rows)
    pivots = []
    for row in echelon:
        pivots.append(next(i for i, x in enumerate(row) if x))
    free = [i for i in range(n_cols) if i not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row, p in zip(echelon, pivots):
            vec[p] = -row[f]
        scale = 1
        for x in vec:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        basis.append([x * scale for x in vec])
    return basis


def inverse(matrix: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Exact inverse via Gauss-Jordan, or None if singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructureError("inverse needs a square matrix")
    m = [[Fraction(x) for x in row] for row in matrix]
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def mat_vec(matrix: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in matrix]
