"""Small exact-rational matrix helpers and fraction-free rank."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def as_vector(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    widths = {len(r) for r in mat}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return mat


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


def is_zero_matrix(m: Matrix) -> bool:
    return not any(any(row) for row in m)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return madd(matmul(a, b), mscale(-1, matmul(b, a)))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by Bareiss fraction-free elimination.

    Rows are cleared of denominators first, so every intermediate entry is an
    integer and every division is exact.
    """
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r
