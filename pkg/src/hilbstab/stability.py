"""Weight index mu, parabola interpolation, Monte Carlo certificates, Chow states."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fan import FanEnumeration, random_generic_weight
from .groebner import MonomialIdeal, _standard_monomials, initial_ideal, truncated_hilbert
from .polyring import GREVLEX, Ideal
from .state import (
    BOUNDARY,
    INSIDE,
    INTERIOR,
    OUTSIDE,
    Barycenter,
    Character,
    ContainmentVerdict,
    barycenter,
    classify_containment,
    monomial_character,
)


@dataclass(frozen=True)
class MuValue:
    value: int
    m: int
    weight: tuple
    tiebreak_used: bool = False

    def to_json(self):
        return {"mu": self.value, "m": self.m, "weight": list(self.weight), "tiebreak_used": self.tiebreak_used}


def mu_of_monomial_ideal(J: MonomialIdeal, w: Sequence[int], m: int) -> int:
    n = J.ring.num_vars
    std = _standard_monomials(n, J.minimal_generators, m)
    chi = monomial_character(J, m, INSIDE).coords
    Q = math.comb(m + n - 1, m) - len(std)
    return n * sum(a * b for a, b in zip(w, chi)) - sum(w) * m * Q


def mu(I: Ideal, w: Sequence[int], m: int, tiebreak: str = GREVLEX) -> MuValue:
    """(N+1)·<w, chi(in_w(I)_m)> − (sum w)·m·Q̂(m); negative means w destabilizes."""
    if m < 1:
        raise ValueError("mu needs m >= 1")
    w = tuple(int(x) for x in w)
    if len(w) != I.ring.num_vars:
        raise ValueError("weight length does not match the ring")
    if not I.generators:
        return MuValue(0, m, w, False)
    res = initial_ideal(I, w, tiebreak, maxdeg=m)
    return MuValue(mu_of_monomial_ideal(res.ideal, w, m), m, w, res.tiebreak_used)


@dataclass(frozen=True)
class MuPolynomial:
    """mu(m) = (m − 1)(alpha·m + beta); equivalently a(m − 1)(m − r) when a != 0."""

    alpha: Fraction
    beta: Fraction
    samples: tuple = ()
    consistent: bool = True
    # smoothness of the curve and of its specialization is left to the caller
    hypothesis_asserted: bool = True

    @property
    def a(self) -> Fraction:
        return self.alpha

    @property
    def r(self) -> Fraction | None:
        if self.alpha == 0:
            return None
        return -self.beta / self.alpha

    def __call__(self, m) -> Fraction:
        m = Fraction(m)
        return (m - 1) * (self.alpha * m + self.beta)

    def describe(self) -> str:
        if self.alpha == 0:
            return f"{self.beta}*(m-1)"
        return f"{self.alpha}*(m-1)*(m-{self.r})"

    def to_json(self):
        return {
            "a": str(self.alpha),
            "r": str(self.r) if self.r is not None else None,
            "linear_coefficient": str(self.beta) if self.alpha == 0 else None,
            "formula": self.describe(),
            "consistent": self.consistent,
            "hypothesis_asserted": self.hypothesis_asserted,
        }


def parabola_fit(samples: Sequence) -> MuPolynomial:
    """Fit mu(m) = a(m−1)(m−r) through the first two (m, mu) samples; later ones are checked."""
    pts = []
    for m, v in samples:
        v = v.value if isinstance(v, MuValue) else v
        pts.append((Fraction(m), Fraction(v)))
    if len(pts) < 2:
        raise ValueError("need two samples")
    for m, v in pts:
        if m == 1 and v != 0:
            raise ValueError("mu must vanish at m = 1")
    usable = [(m, v) for m, v in pts if m != 1]
    if len(usable) < 2:
        raise ValueError("need two samples away from m = 1")
    (m1, v1), (m2, v2) = usable[0], usable[1]
    if m1 == m2:
        raise ValueError("sample degrees must differ")
    y1, y2 = v1 / (m1 - 1), v2 / (m2 - 1)
    alpha = (y1 - y2) / (m1 - m2)
    beta = y1 - alpha * m1
    poly = MuPolynomial(alpha, beta, tuple(pts))
    ok = all(poly(m) == v for m, v in pts)
    return MuPolynomial(alpha, beta, tuple(pts), ok)


def mu_at(poly: MuPolynomial, m) -> Fraction:
    """mu at a rational degree, read off the fitted parabola."""
    return poly(Fraction(m))


# ---------------------------------------------------------------- Monte Carlo


@dataclass
class Certificate:
    kind: str  # "stable" | "semistable" | "inconclusive"
    m: int
    convention: str
    seed: object
    weights: list
    characters: list
    verdict: ContainmentVerdict | None
    rounds: int = 0

    @property
    def conclusive(self) -> bool:
        return self.kind in ("stable", "semistable")

    def to_json(self):
        return {
            "kind": self.kind,
            "m": self.m,
            "convention": self.convention,
            "seed": self.seed,
            "rounds": self.rounds,
            "weights": [list(w) for w in self.weights],
            "characters": [list(c.coords) for c in self.characters],
            "verdict": self.verdict.to_json() if self.verdict else None,
        }


def _character_job(args):
    I, m, w, convention, tiebreak = args
    res = initial_ideal(I, w, tiebreak, maxdeg=m)
    return monomial_character(res.ideal, m, convention), res.tiebreak_used


def monte_carlo_check(
    I: Ideal,
    m: int,
    batch: int | None = None,
    seed=0,
    max_rounds: int = 10,
    convention: str = INSIDE,
    tiebreak: str = GREVLEX,
    workers: int = 1,
    weight_range: int = 1000,
    max_weights: int | None = None,
) -> Certificate:
    """Random-weight search for characters whose hull contains the barycenter.

    One-sided: a hit certifies semistability (boundary) or stability (interior);
    running out of rounds is inconclusive, never a proof of instability.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = I.ring.num_vars
    batch = batch or 4 * n
    rng = random.Random(seed)
    target = barycenter(I, m, convention)
    chars: dict = {}
    weights: list = []
    semistable: tuple | None = None
    pool = ProcessPoolExecutor(max_workers=workers) if workers and workers > 1 else None
    try:
        for rnd in range(1, max_rounds + 1):
            ws = [random_generic_weight(n, lo=-weight_range, hi=weight_range, rng=rng) for _ in range(batch)]
            if max_weights is not None:
                ws = ws[: max(0, max_weights - len(weights))]
            if not ws:
                break
            jobs = [(I, m, w, convention, tiebreak) for w in ws]
            results = list(pool.map(_character_job, jobs)) if pool else [_character_job(j) for j in jobs]
            for w, (c, tied) in zip(ws, results):
                if tied:
                    continue  # non-generic draw; its character is still valid but skip it
                weights.append(w)
                chars.setdefault(c, w)
            pts = list(chars)
            v = classify_containment(pts, target)
            if v.status == INTERIOR:
                used = [chars[c] for c in pts]
                return Certificate("stable", m, convention, seed, used, pts, v, rnd)
            if v.status == BOUNDARY:
                semistable = (pts, v, rnd)
    finally:
        if pool is not None:
            pool.shutdown()
    if semistable is not None:
        pts, v, rnd = semistable
        return Certificate("semistable", m, convention, seed, [chars[c] for c in pts], pts, v, rnd)
    pts = list(chars)
    v = classify_containment(pts, target) if pts else None
    return Certificate("inconclusive", m, convention, seed, weights, pts, v, max_rounds)


def verify_certificate(I: Ideal, m: int, items: Sequence, convention: str = INSIDE, tiebreak: str = GREVLEX, allow_nongeneric: bool = False) -> ContainmentVerdict:
    """Recompute characters from weights or stored monomial ideals and re-run containment."""
    if not items:
        raise ValueError("empty certificate")
    chars = []
    for it in items:
        if isinstance(it, MonomialIdeal):
            chars.append(monomial_character(it, m, convention))
            continue
        c, tied = _character_job((I, m, tuple(it), convention, tiebreak))
        if tied and not allow_nongeneric:
            raise ValueError(f"weight {tuple(it)} is not generic for this ideal")
        chars.append(c)
    return classify_containment(chars, barycenter(I, m, convention))


# ---------------------------------------------------------------------- Chow


def _lagrange_leading(xs, ys, degree):
    """Coefficients (low to high) of the interpolating polynomial of the given degree."""
    k = degree + 1
    xs, ys = [Fraction(x) for x in xs[:k]], [Fraction(y) for y in ys[:k]]
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(k):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def _poly_eval(coeffs, x):
    return sum(c * Fraction(x) ** i for i, c in enumerate(coeffs))


@dataclass
class ChowVertexSet:
    vertices: tuple
    barycenter: tuple
    polynomials: dict = field(default_factory=dict)  # initial ideal key -> per-coordinate coefficients
    sample_degrees: tuple = ()
    verdict: ContainmentVerdict | None = None

    def to_json(self):
        return {
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "barycenter": [str(x) for x in self.barycenter],
            "sample_degrees": list(self.sample_degrees),
            "verdict": self.verdict.to_json() if self.verdict else None,
        }


def character_polynomials(J: MonomialIdeal, degrees: Sequence[int], r: int, convention: str = OUTSIDE):
    """Interpolate each coordinate of the degree-m character as a degree r+1 polynomial."""
    samples = [monomial_character(J, d, convention).coords for d in degrees]
    n = len(samples[0])
    polys = []
    for i in range(n):
        ys = [s[i] for s in samples]
        coeffs = _lagrange_leading(degrees, ys, r + 1)
        if any(_poly_eval(coeffs, d) != y for d, y in zip(degrees, ys)):
            return None
        polys.append(coeffs)
    return polys


def chow_state(I: Ideal, fan: FanEnumeration, r: int, start_degree: int | None = None, max_tries: int = 6) -> ChowVertexSet:
    """Chow vertices as leading m^{r+1} coefficients of outside-convention characters."""
    if not fan.complete:
        raise ValueError("chow_state needs a complete fan")
    ideals = fan.initial_ideals()
    d0 = start_degree or max(J.max_degree() for J in ideals)
    n = I.ring.num_vars
    for _ in range(max_tries):
        degrees = list(range(d0, d0 + r + 3))  # r+2 fitting samples plus one check
        polys = {}
        ok = True
        for J in ideals:
            p = character_polynomials(J, degrees, r)
            if p is None:
                ok = False
                break
            polys[J.key()] = p
        if ok:
            break
        d0 += r + 2
    else:
        raise ValueError("character interpolation did not stabilize; sample degrees too small")
    lead = {tuple(c[r + 1] for c in p) for p in polys.values()}
    vertices = tuple(sorted(lead))
    # barycenter: leading coefficient of m·P̂(m) spread evenly
    ps = [truncated_hilbert(I, d).P_hat * d for d in degrees]
    coeffs = _lagrange_leading(degrees, ps, r + 1)
    if any(_poly_eval(coeffs, d) != y for d, y in zip(degrees, ps)):
        raise ValueError("Hilbert function not polynomial at the sample degrees")
    bary = (coeffs[r + 1] / n,) * n
    verdict = classify_containment(vertices, bary)
    return ChowVertexSet(vertices, bary, polys, tuple(degrees), verdict)


def global_content(vectors) -> Fraction:
    """One shared scale for a vertex set: gcd of all numerators over lcm of denominators."""
    g, den = 0, 1
    for v in vectors:
        for x in v:
            x = Fraction(x)
            den = den * x.denominator // math.gcd(den, x.denominator)
    for v in vectors:
        for x in v:
            g = math.gcd(g, int(Fraction(x) * den))
    return Fraction(g, den) if g else Fraction(1)


# ------------------------------------------------------------- slope helper


def polarization_slope(nu: int, m) -> tuple:
    """(lambda coefficient, delta coefficient, slope) up to the factor (m−1)/(2nu−1)."""
    if nu < 1:
        raise ValueError("nu must be positive")
    m = Fraction(m)
    if m <= 1:
        raise ValueError("m must exceed 1")
    lam = 6 * nu * nu * m - 2 * nu * m - 2 * nu + 1
    delta = -Fraction(nu * nu) * m / 2
    return lam, delta, lam / (-delta)


def slope_limit(nu: int) -> Fraction:
    """Slope as m grows without bound: 12 − 4/nu."""
    return Fraction(12) - Fraction(4, nu)
