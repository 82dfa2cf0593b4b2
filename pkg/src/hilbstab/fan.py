"""Groebner cones, facet-flipping traversal of the Groebner fan, random weights."""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lp
from .groebner import (
    MarkedGroebnerBasis,
    MonomialIdeal,
    _buchberger,
    _Keyed,
    _reduce,
    buchberger,
    initial_forms,
)
from .polyring import GREVLEX, Ideal, Polynomial, TermOrder


def primitive_vector(v) -> tuple:
    """Smallest integer vector on the ray of a rational vector."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _cone_redundant(k: int, vecs: list) -> bool:
    """Is vecs[k] a nonnegative combination of the others (so its inequality is implied)?"""
    others = [v for i, v in enumerate(vecs) if i != k]
    if not others:
        return False
    n = len(vecs[k])
    A = [[o[r] for o in others] for r in range(n)]
    res = lp.solve_lp(A, list(vecs[k]), [0] * len(others))
    return res.status == lp.OPTIMAL


def interior_point(ineqs: list, equalities: Sequence = ()) -> tuple | None:
    """Integer w with <v,w> > 0 for all ``ineqs`` and <e,w> = 0 for ``equalities``.

    Returns None when no such point exists.
    """
    n = len(ineqs[0]) if ineqs else (len(equalities[0]) if equalities else 0)
    if not ineqs:
        return (0,) * n
    # variables: w+ (n), w- (n), s, slack per inequality, slack for s <= 1
    k = len(ineqs)
    nv = 2 * n + 1 + k + 1
    A, b = [], []
    for i, v in enumerate(ineqs):
        row = [0] * nv
        for j in range(n):
            row[j] = v[j]
            row[n + j] = -v[j]
        row[2 * n] = -1
        row[2 * n + 1 + i] = -1
        A.append(row)
        b.append(0)
    for e in equalities:
        row = [0] * nv
        for j in range(n):
            row[j] = e[j]
            row[n + j] = -e[j]
        A.append(row)
        b.append(0)
    row = [0] * nv
    row[2 * n] = 1
    row[-1] = 1
    A.append(row)
    b.append(1)
    c = [0] * nv
    c[2 * n] = 1
    res = lp.solve_lp(A, b, c, maximize=True)
    if res.status != lp.OPTIMAL or res.value <= 0:
        return None
    w = [res.x[j] - res.x[n + j] for j in range(n)]
    return primitive_vector(w) if any(w) else (0,) * n


@dataclass
class GroebnerCone:
    basis: MarkedGroebnerBasis
    inequalities: tuple
    facets: tuple
    witness: tuple | None
    degenerate: bool = False

    @property
    def initial_ideal(self) -> MonomialIdeal:
        return self.basis.initial_ideal()

    def contains(self, w) -> bool:
        return all(sum(a * b for a, b in zip(v, w)) >= 0 for v in self.inequalities)

    def to_json(self) -> dict:
        return {
            "initial_ideal": self.initial_ideal.to_strings(),
            "witness_weight": list(self.witness) if self.witness else None,
        }


def groebner_cone(G: MarkedGroebnerBasis) -> GroebnerCone:
    vecs = []
    for mark, g in zip(G.marks, G.elements):
        for m, _ in g.items():
            if m != mark:
                vecs.append(primitive_vector([a - b for a, b in zip(mark, m)]))
    ineqs = tuple(sorted(set(vecs)))
    work = list(ineqs)
    k = 0
    while k < len(work):
        if _cone_redundant(k, work):
            work.pop(k)
        else:
            k += 1
    facets = tuple(work)
    witness = interior_point(list(facets))
    return GroebnerCone(G, ineqs, facets, witness, witness is None)


def _autoreduce(elems: list, order: TermOrder) -> list:
    key = _Keyed(order)
    out = []
    for idx, (lm, g) in enumerate(elems):
        others = elems[:idx] + elems[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, key) if tail else {}
        red[lm] = Fraction(1)
        out.append((lm, red))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


def flip(cone: GroebnerCone, facet: tuple) -> MarkedGroebnerBasis:
    """Reduced Groebner basis of the neighbouring cone across ``facet``."""
    G = cone.basis
    ring = G.ring
    others = [v for v in cone.facets if v != facet]
    omega = interior_point(others, [facet]) if others else (0,) * ring.num_vars
    if omega is None:
        raise ValueError("facet has empty relative interior")
    forms = initial_forms(G, omega)
    tb = G.order.tiebreak
    new_order = TermOrder(omega, tb, (tuple(-x for x in facet),))
    H = _buchberger([dict(f.items()) for f in forms], new_order, None, True)
    old_key = _Keyed(G.order)
    old = G._internal()
    lifted = []
    for lm, h in H:
        nf = _reduce(h, old, old_key)
        f = dict(h)
        for m, c in nf.items():
            v = f.get(m, 0) - c
            if v:
                f[m] = v
            else:
                f.pop(m, None)
        lifted.append((lm, f))
    red = _autoreduce(lifted, new_order)
    elements = tuple(Polynomial(ring, g) for _, g in red)
    marks = tuple(m for m, _ in red)
    return MarkedGroebnerBasis(ring, new_order, elements, marks, True, None)


def _rebase(G: MarkedGroebnerBasis, w: tuple) -> MarkedGroebnerBasis:
    return MarkedGroebnerBasis(G.ring, TermOrder(w, G.order.tiebreak), G.elements, G.marks, True, None)


def _expand(cone: GroebnerCone) -> list:
    """Neighbouring cones across every facet."""
    out = []
    for facet in cone.facets:
        H = flip(cone, facet)
        c = groebner_cone(H)
        if c.witness is not None:
            c = GroebnerCone(_rebase(H, c.witness), c.inequalities, c.facets, c.witness, False)
        out.append(c)
    return out


@dataclass
class FanEnumeration:
    cones: dict = field(default_factory=dict)  # key -> GroebnerCone
    complete: bool = False

    def initial_ideals(self) -> list:
        return [c.initial_ideal for c in self.cones.values()]

    def __len__(self):
        return len(self.cones)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "count": len(self.cones),
            "cones": [self.cones[k].to_json() for k in sorted(self.cones)],
        }


def _cone_key(c: GroebnerCone) -> tuple:
    return c.initial_ideal.key()


def enumerate_initial_ideals(
    I: Ideal,
    tiebreak: str = GREVLEX,
    budget_cones: int | None = None,
    budget_seconds: float | None = None,
    workers: int = 1,
    start_weight: Sequence[int] | None = None,
) -> FanEnumeration:
    """Breadth-first facet flipping over the Groebner fan of a homogeneous ideal."""
    if not I.generators:
        raise ValueError("zero ideal has no Groebner fan")
    if not I.is_homogeneous():
        raise ValueError("fan traversal needs a homogeneous ideal")
    n = I.ring.num_vars
    start = tuple(start_weight) if start_weight is not None else (0,) * n
    G = buchberger(I, TermOrder(start, tiebreak))
    c0 = groebner_cone(G)
    c0 = GroebnerCone(_rebase(G, c0.witness), c0.inequalities, c0.facets, c0.witness, False)
    fan = FanEnumeration({_cone_key(c0): c0}, False)
    frontier = [c0]
    t0 = time.monotonic()
    pool = ProcessPoolExecutor(max_workers=workers) if workers and workers > 1 else None
    try:
        while frontier:
            if budget_seconds is not None and time.monotonic() - t0 > budget_seconds:
                return fan
            if pool is not None:
                results = list(pool.map(_expand, frontier))
            else:
                results = [_expand(c) for c in frontier]
            nxt = []
            for neighbours in results:
                for c in neighbours:
                    k = _cone_key(c)
                    if k in fan.cones:
                        continue
                    if budget_cones is not None and len(fan.cones) >= budget_cones:
                        return fan
                    fan.cones[k] = c
                    nxt.append(c)
            nxt.sort(key=_cone_key)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    fan.complete = True
    return fan


def random_generic_weight(dim: int, seed=None, lo: int = -(10**6), hi: int = 10**6, rng: random.Random | None = None) -> tuple:
    """Seeded integer weight vector with pairwise distinct coordinates."""
    if hi - lo + 1 < dim:
        raise ValueError("range too small for distinct coordinates")
    r = rng if rng is not None else random.Random(seed)
    return tuple(r.sample(range(lo, hi + 1), dim))
