"""Exact linear algebra over the rationals on lists of Fraction rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def to_fractions(rows) -> list:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    a = to_fractions(rows)
    if not a:
        return [], []
    ncols = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def determinant(rows) -> Fraction:
    a = to_fractions(rows)
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def affine_dimension(points) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    pts = to_fractions(points)
    if not pts:
        raise ValueError("empty point list")
    base = pts[0]
    return rank([[x - y for x, y in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def solve_square(M, rhs) -> list:
    """Solve M x = rhs for square nonsingular M."""
    n = len(M)
    aug = [list(row) + [r] for row, r in zip(to_fractions(M), rhs)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [Fraction(row[n]) for row in red]
