"""Degree-m state characters, barycenters, containment and the proximum.

Two conventions are used for characters.  ``inside`` sums the exponent
vectors of the degree-m monomials lying in a monomial ideal; ``outside`` sums
over the standard monomials.  They differ by reflection through the all-equal
vector sigma_m, the sum of every degree-m exponent vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import lp
from .fan import FanEnumeration, enumerate_initial_ideals, primitive_vector
from .groebner import (
    MonomialIdeal,
    _standard_monomials,
    buchberger,
    initial_ideal,
    normal_form,
    truncated_hilbert,
)
from .linalg import affine_dimension, determinant, dot, solve_square
from .polyring import GREVLEX, Ideal, Polynomial, TermOrder, degree_basis

INSIDE = "inside"
OUTSIDE = "outside"
CONVENTIONS = (INSIDE, OUTSIDE)

OUTSIDE_HULL = "outside"
BOUNDARY = "on_boundary_or_degenerate"
INTERIOR = "full_dim_interior"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Character:
    coords: tuple
    m: int
    convention: str = INSIDE

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    def to_json(self):
        return {"coords": list(self.coords), "m": self.m, "convention": self.convention}


@dataclass(frozen=True)
class Barycenter:
    coords: tuple
    m: int
    convention: str = INSIDE

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def to_json(self):
        return {"coords": [str(x) for x in self.coords], "m": self.m, "convention": self.convention}


def sigma(n: int, m: int) -> int:
    """Common coordinate of the sum of all degree-m exponent vectors in n variables."""
    if m == 0:
        return 0
    return math.comb(m + n - 1, m - 1)


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")


def monomial_character(J: MonomialIdeal, m: int, convention: str = INSIDE) -> Character:
    _check_convention(convention)
    n = J.ring.num_vars
    outside = [0] * n
    for mono in _standard_monomials(n, J.minimal_generators, m):
        for i, e in enumerate(mono):
            outside[i] += e
    if convention == OUTSIDE:
        return Character(tuple(outside), m, OUTSIDE)
    s = sigma(n, m)
    return Character(tuple(s - x for x in outside), m, INSIDE)


def degree_state(J, m: int, convention: str = INSIDE, w=None, tiebreak: str = GREVLEX) -> Character:
    """Character of a monomial ideal, or of in_w(I) when given an Ideal and weight."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if isinstance(J, MonomialIdeal):
        return monomial_character(J, m, convention)
    if not J.generators:
        n = J.ring.num_vars
        if convention == INSIDE:
            return Character((0,) * n, m, INSIDE)
        return Character((sigma(n, m),) * n, m, OUTSIDE)
    res = initial_ideal(J, w, tiebreak, maxdeg=m)
    return monomial_character(res.ideal, m, convention)


def convert_convention(c: Character, n: int | None = None) -> Character:
    n = n if n is not None else len(c.coords)
    s = sigma(n, c.m)
    other = OUTSIDE if c.convention == INSIDE else INSIDE
    return Character(tuple(s - x for x in c.coords), c.m, other)


def convert_barycenter(b: Barycenter) -> Barycenter:
    n = len(b.coords)
    s = sigma(n, b.m)
    other = OUTSIDE if b.convention == INSIDE else INSIDE
    return Barycenter(tuple(s - x for x in b.coords), b.m, other)


def barycenter(I: Ideal, m: int, convention: str = INSIDE) -> Barycenter:
    _check_convention(convention)
    h = truncated_hilbert(I, m)
    n = I.ring.num_vars
    count = h.Q_hat if convention == INSIDE else h.P_hat
    return Barycenter((Fraction(m * count, n),) * n, m, convention)


# ---------------------------------------------------------------- containment


@dataclass
class ContainmentVerdict:
    status: str
    affine_dimension: int | None = None
    ambient_dimension: int | None = None
    points: tuple = ()
    target: tuple = ()
    multipliers: tuple | None = None  # convex weights over ``points``
    separating: tuple | None = None  # integer s with <s,p> > <s,target> for all p

    def to_json(self):
        return {
            "status": self.status,
            "affine_dimension": self.affine_dimension,
            "ambient_dimension": self.ambient_dimension,
            "multipliers": [str(x) for x in self.multipliers] if self.multipliers is not None else None,
            "separating_functional": list(self.separating) if self.separating is not None else None,
        }


def _coords(p):
    return tuple(p.coords) if hasattr(p, "coords") else tuple(p)


def _dedupe(points):
    seen = {}
    for p in points:
        seen.setdefault(_coords(p), None)
    return tuple(seen)


def classify_containment(points: Sequence, target) -> ContainmentVerdict:
    """Where does ``target`` sit relative to the convex hull of ``points``?"""
    pts = _dedupe(points)
    if not pts:
        raise ValueError("empty point list")
    for p in points:
        if isinstance(p, Character) and isinstance(target, Barycenter):
            if p.m != target.m or p.convention != target.convention:
                raise ValueError("points and target use different degrees or conventions")
    t = tuple(Fraction(x) for x in _coords(target))
    n = len(t)
    ambient = n - 1  # characters lie on a hyperplane of constant coordinate sum
    A = [[p[r] for p in pts] for r in range(n)] + [[1] * len(pts)]
    b = list(t) + [1]
    res = lp.solve_lp(A, b, [0] * len(pts))
    if res.status == lp.INFEASIBLE:
        y = res.farkas
        s = primitive_vector(y[:n])
        v = ContainmentVerdict(OUTSIDE_HULL, None, ambient, pts, t, None, s)
        if not verify_verdict(v):
            raise AssertionError("separating functional failed verification")
        return v
    dim = affine_dimension(pts)
    # maximize the smallest multiplier: lambda_i = mu_i + s with mu, s >= 0
    k = len(pts)
    A2 = [row + [sum(row)] for row in A]
    c2 = [0] * k + [1]
    res2 = lp.solve_lp(A2, b, c2, maximize=True)
    s = res2.value
    if s > 0:
        mult = tuple(res2.x[i] + s for i in range(k))
    else:
        mult = tuple(res.x)
    status = INTERIOR if (s > 0 and dim == ambient) else BOUNDARY
    v = ContainmentVerdict(status, dim, ambient, pts, t, mult, None)
    if not verify_verdict(v):
        raise AssertionError("convex multipliers failed verification")
    return v


def verify_verdict(v: ContainmentVerdict) -> bool:
    """Re-check a certificate with direct exact arithmetic."""
    pts, t = v.points, v.target
    if v.status == OUTSIDE_HULL:
        s = v.separating
        lhs = min(dot(s, p) for p in pts)
        return lhs > dot(s, t)
    mult = v.multipliers
    if mult is None or any(x < 0 for x in mult) or sum(mult) != 1:
        return False
    combo = [sum(mu * p[i] for mu, p in zip(mult, pts)) for i in range(len(t))]
    if combo != list(t):
        return False
    if v.affine_dimension != affine_dimension(pts):
        return False
    if v.status == INTERIOR:
        return all(x > 0 for x in mult) and v.affine_dimension == v.ambient_dimension
    return True


# ------------------------------------------------------------------ proximum


@dataclass
class Proximum:
    point: tuple
    direction: tuple
    target: tuple
    support: tuple  # vertices carrying the point
    multipliers: tuple
    kkt_gap: Fraction  # min over q of <p - t, q - p>; nonnegative when optimal

    def to_json(self):
        return {
            "point": [str(x) for x in self.point],
            "direction": list(self.direction),
            "support": [list(map(str, s)) for s in self.support],
            "multipliers": [str(x) for x in self.multipliers],
            "kkt_gap": str(self.kkt_gap),
        }


def _affine_min_norm(S: list):
    """Barycentric coordinates of the min-norm point of the affine hull of S."""
    k = len(S)
    M = [[dot(S[i], S[j]) for j in range(k)] + [Fraction(1)] for i in range(k)]
    M.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = solve_square(M, rhs)
    return sol[:k]


def wolfe_min_norm(oracle: Callable, start, max_iter: int = 100000):
    """Exact Wolfe min-norm-point algorithm over a polytope given by a linear oracle.

    ``oracle(x)`` returns a vertex minimizing <x, q>.  Returns (x, support, weights).
    """
    S = [tuple(Fraction(v) for v in start)]
    lam = [Fraction(1)]
    x = S[0]
    for _ in range(max_iter):
        if not any(x):
            return x, S, lam
        q = tuple(Fraction(v) for v in oracle(x))
        if dot(x, q) >= dot(x, x):
            return x, S, lam
        if q in S:
            raise RuntimeError("min-norm iteration stalled")
        S.append(q)
        lam.append(Fraction(0))
        while True:
            alpha = _affine_min_norm(S)
            if all(a > 0 for a in alpha):
                lam = list(alpha)
                x = tuple(sum(a * s[i] for a, s in zip(lam, S)) for i in range(len(x)))
                break
            theta = min(l / (l - a) for l, a in zip(lam, alpha) if a <= 0 and l > a)
            lam = [(1 - theta) * l + theta * a for l, a in zip(lam, alpha)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            S = [S[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = tuple(sum(a * s[i] for a, s in zip(lam, S)) for i in range(len(x)))
    raise RuntimeError("min-norm iteration limit reached")


def proximum_from_oracle(oracle: Callable, target, start) -> Proximum:
    """Nearest point to ``target`` of the polytope described by ``oracle``.

    ``oracle(w)`` must return a vertex minimizing <w, q>; ``start`` is any vertex.
    """
    t = tuple(Fraction(x) for x in _coords(target))

    def shifted(x):
        return tuple(Fraction(v) - ti for v, ti in zip(oracle(x), t))

    x, S, lam = wolfe_min_norm(shifted, tuple(Fraction(v) - ti for v, ti in zip(_coords(start), t)))
    p = tuple(xi + ti for xi, ti in zip(x, t))
    support = tuple(tuple(si + ti for si, ti in zip(s, t)) for s in S)
    if any(x):
        q = tuple(Fraction(v) for v in oracle(x))
        gap = dot(x, q) - dot(x, p)
        direction = primitive_vector(x)
    else:
        gap = Fraction(0)
        direction = (0,) * len(t)
    return Proximum(p, direction, t, support, tuple(lam), gap)


def proximum(points: Sequence, target) -> Proximum:
    pts = [tuple(Fraction(v) for v in p) for p in _dedupe(points)]
    if not pts:
        raise ValueError("empty point list")
    verdict = classify_containment(pts, target)
    if verdict.status == INTERIOR:
        raise ValueError("proximum undefined, point is interior")

    def oracle(w):
        return min(pts, key=lambda q: dot(w, q))

    t = tuple(Fraction(x) for x in _coords(target))
    start = min(pts, key=lambda q: sum((a - b) ** 2 for a, b in zip(q, t)))
    return proximum_from_oracle(oracle, t, start)


def verify_proximum(prox: Proximum, points: Sequence) -> bool:
    """KKT check: p lies in the hull and <p - t, q - p> >= 0 for every vertex q."""
    pts = [tuple(Fraction(v) for v in p) for p in _dedupe(points)]
    if any(s not in pts for s in prox.support):
        return False
    if any(l <= 0 for l in prox.multipliers) or sum(prox.multipliers) != 1:
        return False
    combo = tuple(sum(l * s[i] for l, s in zip(prox.multipliers, prox.support)) for i in range(len(prox.point)))
    if combo != prox.point:
        return False
    d = tuple(a - b for a, b in zip(prox.point, prox.target))
    base = dot(d, prox.point)
    return all(dot(d, q) - base >= 0 for q in pts)


def ideal_oracle(I: Ideal, m: int, convention: str = INSIDE, tiebreak: str = GREVLEX) -> Callable:
    """Linear minimization oracle over the degree-m state polytope of ``I``.

    The character of in_{-w}(I)_m minimizes <w, .> over all Pluecker characters,
    because the initial monomials of a weight order form the weight-maximal basis.
    Inside and outside characters differ by reflection, which flips the sign of w.
    """

    def oracle(x):
        w = primitive_vector(x)
        lam = tuple(-v for v in w) if convention == INSIDE else tuple(w)
        return degree_state(I, m, convention, w=lam, tiebreak=tiebreak).coords

    return oracle


# ------------------------------------------------- Hilbert matrix and Pluecker


def hilbert_matrix(I: Ideal, m: int, tiebreak: str = GREVLEX):
    """Rows ``M - NF(M)`` for the degree-m initial monomials M of a grevlex basis.

    Columns follow ``degree_basis(ring, m, tiebreak)``.  Returns (rows, columns).
    """
    cols = degree_basis(I.ring, m, tiebreak)
    if not I.generators:
        return [], cols
    G = buchberger(I, TermOrder.default(I.ring.num_vars), maxdeg=m)
    J = G.initial_ideal()
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for mono in degree_basis(I.ring, m, GREVLEX):
        if J.contains(mono):
            p = Polynomial(I.ring, {mono: 1})
            r = p - normal_form(p, G)
            row = [Fraction(0)] * len(cols)
            for mm, c in r.items():
                row[index[mm]] = c
            rows.append(row)
    return rows, cols


def colex_subsets(n: int, k: int) -> list:
    """k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def normalize_integer_vector(v) -> tuple:
    """Content 1 with first nonzero coordinate positive."""
    p = primitive_vector(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def pluecker_coordinates(I: Ideal, m: int, budget: int = 100000, tiebreak: str = GREVLEX):
    """Maximal minors of the Hilbert matrix over colex-ordered Pluecker sets.

    Returns (sets, coordinates, columns); coordinates are integral, content 1,
    first nonzero positive.
    """
    rows, cols = hilbert_matrix(I, m, tiebreak)
    k = len(rows)
    n = len(cols)
    if math.comb(n, k) > budget:
        raise BudgetExceeded(f"C({n},{k}) Pluecker coordinates exceed budget {budget}")
    sets = colex_subsets(n, k)
    raw = []
    for s in sets:
        raw.append(determinant([[row[j] for j in s] for row in rows]) if k else Fraction(1))
    return sets, normalize_integer_vector(raw), cols


def pluecker_set_character(cols, subset) -> tuple:
    n = len(cols[0])
    return tuple(sum(cols[j][i] for j in subset) for i in range(n))


# ------------------------------------------------------------ state polytope


@dataclass
class StatePolytope:
    characters: tuple
    m: int
    convention: str
    complete: bool
    fan: FanEnumeration | None = field(default=None, repr=False)

    def to_json(self):
        return {
            "m": self.m,
            "convention": self.convention,
            "complete": self.complete,
            "characters": [list(c.coords) for c in self.characters],
        }


def state_polytope(
    I: Ideal,
    m: int,
    convention: str = INSIDE,
    fan: FanEnumeration | None = None,
    **fan_options,
) -> StatePolytope:
    if fan is None:
        fan = enumerate_initial_ideals(I, **fan_options)
    chars = {monomial_character(J, m, convention) for J in fan.initial_ideals()}
    ordered = tuple(sorted(chars, key=lambda c: c.coords))
    return StatePolytope(ordered, m, convention, fan.complete, fan)
