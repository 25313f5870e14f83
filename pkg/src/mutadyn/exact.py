"""Gaussian elimination over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction` (or numpy object
arrays holding them).  Sizes here are at most a few thousand, usually tens.
"""
from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def _rows(a) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def rref(a):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    r = _rows(a)
    nrows = len(r)
    ncols = len(r[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((i for i in range(row, nrows) if r[i][col] != 0), None)
        if pivot is None:
            continue
        r[row], r[pivot] = r[pivot], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(nrows):
            if i != row and r[i][col] != 0:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return r, pivots


def nullspace(a) -> list[list[Fraction]]:
    """Basis of the right null space, one free variable set to 1 per vector."""
    r, pivots = rref(a)
    ncols = len(r[0]) if r else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a, b) -> list[Fraction]:
    """Solve the square system ``a x = b`` exactly."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(_rows(a), b)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [r[i][n] for i in range(n)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
