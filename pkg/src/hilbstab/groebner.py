"""Buchberger's algorithm, normal forms, monomial initial ideals and Hilbert data.

The engine works on plain ``dict`` polynomials internally and wraps results
back into :class:`Polynomial` objects.  Homogeneous input may be truncated at a
degree bound, which is all the degree-m computations downstream need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    GREVLEX,
    Ideal,
    Monomial,
    Polynomial,
    Ring,
    TermOrder,
    degree_basis,
)


# ------------------------------------------------------------------ internals


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Keyed:
    """Memoized order key for one term order."""

    def __init__(self, order: TermOrder):
        self.order = order
        self.cache = {}

    def __call__(self, m):
        k = self.cache.get(m)
        if k is None:
            k = self.cache[m] = self.order.key(m)
        return k


def _reduce(p: dict, basis, key, tail=True) -> dict:
    """Reduce ``p`` by ``basis`` = list of (lead, monic dict). Fully if ``tail``."""
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(y - x for x, y in zip(lm, m))
                for gm, gc in g.items():
                    if gm is lm or gm == lm:
                        continue
                    nm = tuple(x + y for x, y in zip(q, gm))
                    v = p.get(nm, 0) - c * gc
                    if v:
                        p[nm] = v
                    else:
                        p.pop(nm, None)
                break
        else:
            rem[m] = c
            if not tail:
                rem.update(p)
                return rem
    return rem


def _monic(p: dict, key):
    lm = max(p, key=key)
    c = p[lm]
    if c != 1:
        inv = 1 / c
        p = {m: v * inv for m, v in p.items()}
    return lm, p


def _spoly(f, g):
    (lf, pf), (lg, pg) = f, g
    L = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(L, lf))
    qg = tuple(x - y for x, y in zip(L, lg))
    out = {}
    for m, c in pf.items():
        if m != lf:
            out[tuple(a + b for a, b in zip(qf, m))] = c
    for m, c in pg.items():
        if m != lg:
            nm = tuple(a + b for a, b in zip(qg, m))
            v = out.get(nm, 0) - c
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
    return out


def _buchberger(polys: list, order: TermOrder, maxdeg=None, homogeneous=True):
    """Reduced Groebner basis as a list of (lead, monic dict), sorted by lead."""
    key = _Keyed(order)
    elems = []  # every basis element ever added: (lead, dict)
    active = []  # indices into elems
    pairs = []  # (deg, seq, i, j, lcm)
    seq = 0
    pending = []
    for f in polys:
        if f:
            d = max(sum(m) for m in f)
            if maxdeg is not None and homogeneous and d > maxdeg:
                continue
            pending.append((d, f))
    pending.sort(key=lambda t: t[0])
    pi = 0

    def add(h):
        nonlocal pairs, active, seq
        lh, hp = h
        elems.append(h)
        k = len(elems) - 1
        cand = [(i, _lcm(elems[i][0], lh)) for i in active]
        kept = []
        while cand:
            i, L = cand.pop(0)
            if _coprime(elems[i][0], lh) or not any(_divides(L2, L) for _, L2 in cand + kept):
                kept.append((i, L))
        newpairs = [(i, L) for i, L in kept if not _coprime(elems[i][0], lh)]
        kept_old = []
        for pr in pairs:
            _, _, i, j, L = pr
            if _divides(lh, L) and _lcm(elems[i][0], lh) != L and _lcm(elems[j][0], lh) != L:
                continue
            kept_old.append(pr)
        pairs = kept_old
        for i, L in newpairs:
            d = sum(L)
            if maxdeg is not None and homogeneous and d > maxdeg:
                continue
            pairs.append((d, seq, i, k, L))
            seq += 1
        active = [i for i in active if not _divides(lh, elems[i][0])] + [k]

    while pi < len(pending) or pairs:
        # lowest degree first; input generators before pairs on a tie
        pd = pending[pi][0] if pi < len(pending) else math.inf
        if pairs:
            best = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
            bd = pairs[best][0]
        else:
            bd = math.inf
        basis = [elems[i] for i in active]
        if pd <= bd:
            f = pending[pi][1]
            pi += 1
        else:
            _, _, i, j, _ = pairs.pop(best)
            f = _spoly(elems[i], elems[j])
        r = _reduce(f, basis, key)
        if r:
            add(_monic(r, key))

    basis = [elems[i] for i in active]
    out = []
    for idx, (lm, g) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, key) if tail else {}
        red[lm] = Fraction(1)
        out.append((lm, red))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


# ---------------------------------------------------------------------- types


@dataclass(frozen=True)
class MarkedGroebnerBasis:
    ring: Ring
    order: TermOrder
    elements: tuple  # Polynomials, monic at their marks
    marks: tuple  # marked (leading) monomials
    reduced: bool = True
    truncation: int | None = None

    def pairs(self):
        return [(m, {k: v for k, v in g.items()}) for m, g in zip(self.marks, self.elements)]

    def _internal(self):
        return [(m, dict(g.items())) for m, g in zip(self.marks, self.elements)]

    def initial_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.marks)

    def __len__(self):
        return len(self.elements)


class MonomialIdeal:
    """Monomial ideal stored by its minimal generators."""

    def __init__(self, ring: Ring, generators: Iterable[Monomial]):
        self.ring = ring
        gens = sorted(set(tuple(g) for g in generators), key=lambda m: (sum(m), m))
        minimal = []
        for g in gens:
            if not any(_divides(h, g) for h in minimal):
                minimal.append(g)
        self.minimal_generators = tuple(sorted(minimal, key=lambda m: (sum(m), tuple(-x for x in m))))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and set(self.minimal_generators) == set(other.minimal_generators)
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.minimal_generators)))

    def key(self) -> tuple:
        return tuple(sorted(self.minimal_generators))

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.minimal_generators)

    def to_strings(self) -> list:
        return [self.ring.monomial_str(g) for g in self.minimal_generators]

    def max_degree(self) -> int:
        return max((sum(g) for g in self.minimal_generators), default=0)

    def standard_monomials(self, m: int) -> list:
        """Degree-m monomials outside the ideal."""
        return _standard_monomials(self.ring.num_vars, self.minimal_generators, m)

    def as_ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(Polynomial(self.ring, {g: 1}) for g in self.minimal_generators))

    def __repr__(self):
        return "MonomialIdeal<" + ", ".join(self.to_strings()) + ">"


def _standard_monomials(n: int, gens, m: int) -> list:
    """Enumerate standard monomials degree by degree.

    A monomial is generated only from the parent obtained by lowering its
    last nonzero exponent, so each appears once; standard monomials are closed
    under division, so every parent is standard too.
    """
    by_var = [[g for g in gens if g[i] > 0] for i in range(n)]
    if any(sum(g) == 0 for g in gens):
        return []
    level = [((0,) * n, 0)]  # (monomial, index of last nonzero variable)
    for d in range(1, m + 1):
        nxt = []
        for mono, last in level:
            for i in range(last, n):
                cand = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                bad = False
                for g in by_var[i]:
                    if sum(g) <= d and _divides(g, cand):
                        bad = True
                        break
                if not bad:
                    nxt.append((cand, i))
        level = nxt
        if not level:
            return []
    return [mono for mono, _ in level]


@dataclass(frozen=True)
class HilbertData:
    m: int
    R_hat: int
    Q_hat: int
    P_hat: int


@dataclass(frozen=True)
class InitialIdealResult:
    ideal: MonomialIdeal
    basis: MarkedGroebnerBasis
    tiebreak_used: bool


# ----------------------------------------------------------------- operations


def _as_dicts(I: Ideal) -> list:
    return [dict(g.items()) for g in I.generators]


def buchberger(I: Ideal, order: TermOrder | None = None, maxdeg: int | None = None) -> MarkedGroebnerBasis:
    """Reduced marked Groebner basis of ``I``; ``maxdeg`` truncates homogeneous input."""
    ring = I.ring
    order = order or TermOrder.default(ring.num_vars)
    if order.num_vars != ring.num_vars:
        raise ValueError("order dimension does not match the ring")
    homogeneous = I.is_homogeneous()
    if not homogeneous:
        rows = (order.weights,) + order.refinements
        if any(x < 0 for r in rows for x in r):
            raise ValueError("negative weights need a homogeneous ideal")
        if maxdeg is not None:
            raise ValueError("degree truncation needs a homogeneous ideal")
    raw = _buchberger(_as_dicts(I), order, maxdeg, homogeneous)
    elements = tuple(Polynomial(ring, g) for _, g in raw)
    marks = tuple(m for m, _ in raw)
    return MarkedGroebnerBasis(ring, order, elements, marks, True, maxdeg)


def normal_form(p: Polynomial, G: MarkedGroebnerBasis) -> Polynomial:
    if p.ring != G.ring:
        raise ValueError("polynomial and basis live in different rings")
    if p.is_zero():
        return p
    key = _Keyed(G.order)
    return Polynomial(G.ring, _reduce(dict(p.items()), G._internal(), key))


def tiebreak_fired(G: MarkedGroebnerBasis, w: Sequence[int]) -> bool:
    """True when some element's w-initial form has more than one term.

    Equivalently ``w`` is not in the interior of the Groebner cone of ``G``,
    so the tiebreak was needed to pick a mark.
    """
    for mark, g in zip(G.marks, G.elements):
        top = sum(a * b for a, b in zip(w, mark))
        for m, _ in g.items():
            if m != mark and sum(a * b for a, b in zip(w, m)) == top:
                return True
    return False


def initial_ideal(I: Ideal, w: Sequence[int] | None = None, tiebreak: str = GREVLEX, maxdeg: int | None = None) -> InitialIdealResult:
    if not I.generators:
        raise ValueError("initial ideal of the zero ideal")
    w = tuple(w) if w is not None else (0,) * I.ring.num_vars
    order = TermOrder(w, tiebreak)
    G = buchberger(I, order, maxdeg)
    return InitialIdealResult(G.initial_ideal(), G, tiebreak_fired(G, w))


def initial_forms(G: MarkedGroebnerBasis, w: Sequence[int]) -> list:
    """The w-initial forms of the basis elements (a Groebner basis of in_w(I))."""
    out = []
    for mark, g in zip(G.marks, G.elements):
        top = sum(a * b for a, b in zip(w, mark))
        out.append(Polynomial(G.ring, {m: c for m, c in g.items() if sum(a * b for a, b in zip(w, m)) == top}))
    return out


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1−t)·J."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, ())
    tname = "t"
    while tname in ring.variable_names:
        tname = "_" + tname
    big = Ring((tname,) + ring.variable_names)

    def lift(p, tpow):
        out = {}
        for m, c in p.items():
            out[(tpow,) + m] = c
        return out

    gens = []
    for f in I.generators:
        gens.append(lift(f, 1))
    for g in J.generators:
        d = lift(g, 0)
        for m, c in g.items():
            d[(1,) + m] = -c
        gens.append(d)
    order = TermOrder((1,) + (0,) * ring.num_vars, GREVLEX)
    raw = _buchberger(gens, order, None, homogeneous=False)
    out = []
    for lm, g in raw:
        if lm[0] == 0:
            p = Polynomial(ring, {m[1:]: c for m, c in g.items()})
            out.append(p.primitive(TermOrder.default(ring.num_vars)))
    return Ideal(ring, tuple(out))


def truncated_hilbert(I: Ideal, m: int) -> HilbertData:
    if m < 0:
        raise ValueError("degree must be nonnegative")
    n = I.ring.num_vars
    R = math.comb(m + n - 1, m)
    if not I.generators:
        return HilbertData(m, R, 0, R)
    if not I.is_homogeneous():
        raise ValueError("truncated Hilbert data needs a homogeneous ideal")
    G = buchberger(I, TermOrder.default(n), maxdeg=m)
    P = len(_standard_monomials(n, G.marks, m))
    return HilbertData(m, R, R - P, P)


def gotzmann_number(a: int, b: int) -> int:
    """Gotzmann number of the Hilbert polynomial a·t + b."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    return math.comb(a, 2) + b


def degree_slice_basis(I: Ideal, m: int) -> list:
    """Row-reduced basis of I_m by plain linear algebra (an independent oracle).

    Rows are coefficient vectors over ``degree_basis(ring, m)``.
    """
    from .linalg import rref

    basis = degree_basis(I.ring, m)
    index = {mono: i for i, mono in enumerate(basis)}
    rows = []
    for g in I.generators:
        if not g.is_homogeneous():
            raise ValueError("degree slices need homogeneous generators")
        dg = g.degree
        if dg > m:
            continue
        for mult in degree_basis(I.ring, m - dg):
            row = [Fraction(0)] * len(basis)
            for mono, c in g.items():
                row[index[tuple(a + b for a, b in zip(mono, mult))]] = c
            rows.append(row)
    red, _ = rref(rows, len(basis))
    return red
