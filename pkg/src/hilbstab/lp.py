"""Exact two-phase revised simplex over the rationals (Bland's rule).

Standard form: minimize c·x subject to A x = b, x >= 0.  All arithmetic is in
Fractions, so the returned multipliers and dual vectors are exact and can be
checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None
    duals: list | None = None
    # for infeasible problems: y with y·A >= 0 componentwise and y·b < 0
    farkas: list | None = None


class _Tableau:
    """Revised simplex state with an explicit basis inverse."""

    def __init__(self, cols, b, basis):
        self.cols = cols  # list of column vectors (lists of Fraction)
        self.b = b
        self.m = len(b)
        self.basis = list(basis)
        self.binv = [[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)]
        self.xb = list(b)

    def column(self, j):
        a = self.cols[j]
        nz = [(k, v) for k, v in enumerate(a) if v]
        return [sum(row[k] * v for k, v in nz) for row in self.binv]

    def duals(self, cost):
        cb = [cost[j] for j in self.basis]
        return [sum(cb[i] * self.binv[i][k] for i in range(self.m) if cb[i]) for k in range(self.m)]

    def pivot(self, r, j, d):
        piv = d[r]
        inv = 1 / piv
        rowr = [v * inv for v in self.binv[r]]
        xr = self.xb[r] * inv
        for i in range(self.m):
            if i != r and d[i]:
                f = d[i]
                self.binv[i] = [a - f * c for a, c in zip(self.binv[i], rowr)]
                self.xb[i] -= f * xr
        self.binv[r] = rowr
        self.xb[r] = xr
        self.basis[r] = j

    def run(self, cost, allowed):
        """Minimize ``cost`` over the current basis; columns outside ``allowed`` never enter."""
        while True:
            y = self.duals(cost)
            entering = None
            inbasis = set(self.basis)
            for j in range(len(self.cols)):
                if j in inbasis or not allowed[j]:
                    continue
                a = self.cols[j]
                red = cost[j] - sum(y[k] * v for k, v in enumerate(a) if v)
                if red < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL, y
            d = self.column(entering)
            best = None
            for i in range(self.m):
                if d[i] > 0:
                    ratio = self.xb[i] / d[i]
                    cand = (ratio, self.basis[i])
                    if best is None or cand < best[0]:
                        best = (cand, i)
            if best is None:
                return UNBOUNDED, y
            self.pivot(best[1], entering, d)


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence, maximize: bool = False) -> LPResult:
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m = len(A)
    n = len(c)
    cost = [Fraction(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    # flip rows so that b >= 0
    signs = []
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
            signs.append(-1)
        else:
            signs.append(1)
    cols = [[A[i][j] for i in range(m)] for j in range(n)]
    for i in range(m):
        cols.append([Fraction(int(k == i)) for k in range(m)])
    tab = _Tableau(cols, b, range(n, n + m))

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    _, y1 = tab.run(phase1, [True] * (n + m))
    infeas = sum(tab.xb[i] for i in range(m) if tab.basis[i] >= n)
    if infeas > 0:
        # phase-one duals give a Farkas certificate for the original rows
        farkas = [-y1[i] * signs[i] for i in range(m)]
        return LPResult(INFEASIBLE, farkas=farkas)

    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if tab.basis[r] >= n:
            for j in range(n):
                if j in tab.basis:
                    continue
                d = tab.column(j)
                if d[r] != 0:
                    tab.pivot(r, j, d)
                    break

    allowed = [True] * n + [False] * m
    full_cost = cost + [Fraction(0)] * m
    status, y = tab.run(full_cost, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        if j < n:
            x[j] = tab.xb[i]
    value = sum(ci * xi for ci, xi in zip(c, x))
    duals = [y[i] * signs[i] for i in range(m)]
    if maximize:
        duals = [-v for v in duals]
    return LPResult(OPTIMAL, x=x, value=Fraction(value), duals=duals)
