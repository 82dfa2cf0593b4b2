"""Pluricanonical ideals of hyperelliptic curves and the stored example ideals."""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .groebner import MonomialIdeal, intersect_ideals
from .polyring import Ideal, Polynomial, Ring, parse_ideal, parse_polynomial


@dataclass(frozen=True)
class HyperellipticData:
    """y^2 = f(x) with deg f = 2g+1; ``f_coeffs[i]`` is the coefficient of x^i."""

    g: int
    f_coeffs: tuple
    nu: int = 2

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.f_coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "f_coeffs", coeffs)
        if self.g < 2:
            raise ValueError("genus must be at least 2")
        if len(coeffs) - 1 != 2 * self.g + 1:
            raise ValueError("f must have degree 2g+1 (branch point at infinity)")
        if self.nu < 2:
            raise ValueError("nu must be at least 2")

    @property
    def k(self) -> int:
        return self.nu * (self.g - 1)

    @property
    def e(self) -> int:
        return self.g + 1

    @property
    def num_vars(self) -> int:
        return (2 * self.nu - 1) * (self.g - 1)

    @property
    def special(self) -> bool:
        """Genus 3 bicanonical: the curve lies on a cone over a rational normal curve."""
        return self.k == self.e


def _letters(n: int) -> tuple:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"x{i}" for i in range(n))


def pluricanonical_basis(data: HyperellipticData) -> list:
    """(label, section) pairs: 1, x, ..., x^k, then y, yx, ..., yx^(k-e)."""
    k, e = data.k, data.e
    if k < e:
        raise ValueError("k < e: no scroll model for this genus and multiple")
    sections = [f"x^{i}" for i in range(k + 1)] + [f"y*x^{j}" for j in range(k - e + 1)]
    if len(sections) != data.num_vars:
        raise AssertionError("basis size disagrees with (2nu-1)(g-1)")
    names = _letters(len(sections))
    if data.special:
        # genus 3 labels run down the x-powers: a = x^k, ..., e = 1, then y
        xs = list(reversed(names[: k + 1]))
        names = tuple(xs) + names[k + 1:]
    return list(zip(names, sections))


def _label_maps(data: HyperellipticData):
    labels = pluricanonical_basis(data)
    k = data.k
    X = {}
    Y = {}
    for name, sec in labels:
        if sec.startswith("y"):
            Y[int(sec.split("^")[1])] = name
        else:
            X[int(sec.split("^")[1])] = name
    ring = Ring(tuple(sorted((n for n, _ in labels), key=lambda s: (len(s), s))))
    return ring, X, Y


def _minor(ring, a, b, c, d):
    """a*d − b*c for variable names."""
    return parse_polynomial(f"{a}*{d}-{b}*{c}", ring)


def scroll_ideal(data: HyperellipticData) -> Ideal:
    """2x2 minors of the deleted catalecticant matrix."""
    k, e = data.k, data.e
    if k <= e:
        raise ValueError("k <= e: use the genus 3 catalecticant cone instead")
    ring, X, Y = _label_maps(data)
    top = [Y[j + 1] for j in reversed(range(k - e))] + [X[i + 1] for i in reversed(range(k))]
    bot = [Y[j] for j in reversed(range(k - e))] + [X[i] for i in reversed(range(k))]
    gens = []
    for l in range(len(top)):
        for j in range(l):
            gens.append(_minor(ring, top[j], top[l], bot[j], bot[l]))
    return Ideal(ring, tuple(gens))


def _cone_ideal(data: HyperellipticData) -> Ideal:
    ring, X, _ = _label_maps(data)
    k = data.k
    top = [X[k - i] for i in range(k)]
    bot = [X[k - i - 1] for i in range(k)]
    gens = []
    for j in range(k):
        for l in range(j + 1, k):
            gens.append(_minor(ring, top[j], top[l], bot[j], bot[l]))
    return Ideal(ring, tuple(gens))


def _quadrics(data: HyperellipticData, ring, X, Y) -> list:
    """y^2 x^i = x^i f(x), i = 0..2(k−e), written as quadrics in the labels."""
    k, e = data.k, data.e
    d = k - e

    def xq(n):
        return (X[n - k], X[k]) if n >= k else (X[0], X[n])

    def yq(i):
        return (Y[i - d], Y[d]) if i >= d else (Y[0], Y[i])

    out = []
    for i in range(2 * d + 1):
        p = ring.var(yq(i)[0]) * ring.var(yq(i)[1])
        for j, c in enumerate(data.f_coeffs):
            if c:
                a, b = xq(i + j)
                p = p - ring.var(a) * ring.var(b) * c
        out.append(p)
    return out


def hyperelliptic_pluricanonical_ideal(data: HyperellipticData) -> Ideal:
    ring, X, Y = _label_maps(data)
    base = _cone_ideal(data) if data.special else scroll_ideal(data)
    return Ideal(ring, base.generators + tuple(_quadrics(data, ring, X, Y)))


def wiman_ideal(g: int, nu: int = 2) -> Ideal:
    """Pluricanonical ideal of y^2 = x^(2g+1) − 1."""
    if g < 3:
        raise ValueError("wiman_ideal needs g >= 3; genus 2 is a stored fixture")
    coeffs = [-1] + [0] * (2 * g) + [1]
    return hyperelliptic_pluricanonical_ideal(HyperellipticData(g, tuple(coeffs), nu))


def hilbert_polynomial(g: int, nu: int = 2):
    """(a, b) with P(t) = a·t + b for the nu-canonical model."""
    return 2 * nu * (g - 1), -(g - 1)


def extend_to_ambient(I: Ideal, ambient: Ring, embedding: Mapping[str, str] | None = None) -> Ideal:
    """Substitute variables into ``ambient`` and add every unused ambient variable."""
    embedding = dict(embedding) if embedding else {v: v for v in I.ring.variable_names}
    targets = list(embedding.values())
    if len(set(targets)) != len(targets):
        raise ValueError("variable collision in embedding")
    for src, dst in embedding.items():
        if src not in I.ring.variable_names or dst not in ambient.variable_names:
            raise ValueError(f"bad embedding entry {src}->{dst}")
    images = [ambient.var(embedding[v]) for v in I.ring.variable_names]
    gens = [g.substitute(images, ambient) for g in I.generators]
    used = set(targets)
    linear = [ambient.var(v) for v in ambient.variable_names if v not in used]
    return Ideal(ambient, tuple(gens) + tuple(linear))


# ------------------------------------------------------------------ fixtures

FIXTURES = (
    "twisted_cubic",
    "two_points_p2",
    "cuspidal_cubic",
    "wiman2",
    "wiman3",
    "wiman4",
    "wiman5",
    "wiman6",
    "wiman7",
    "wiman8",
    "elliptic_bridge",
    "elliptic_bridge_diagonalized",
    "g2_weierstrass_tail",
    "g2_general_tail",
    "ribbon_g4",
)

# component ideals used to rebuild the nodal joins
COMPONENTS = (
    "wiman3_p7",
    "g2_twisted_tail_p4",
    "elliptic_bridge_part_w3",
    "elliptic_bridge_part_e",
    "elliptic_bridge_part_w2",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURES and name not in COMPONENTS:
        raise KeyError(f"unknown fixture {name!r}")
    path = resources.files("hilbstab") / "data" / f"{name}.txt"
    return path.read_text()


def fixture(name: str) -> Ideal:
    return parse_ideal(fixture_text(name))


def whittled_g4() -> list:
    """The nine stored genus-4 monomial initial ideals, in ring a..i."""
    text = (resources.files("hilbstab") / "data" / "whittled_g4.txt").read_text()
    ring = Ring(tuple("abcdefghi"))
    blocks, cur = [], []
    for line in text.splitlines():
        if line.startswith("#"):
            continue
        if not line.strip():
            if cur:
                blocks.append(" ".join(cur))
                cur = []
            continue
        cur.append(line.strip())
    if cur:
        blocks.append(" ".join(cur))
    out = []
    for b in blocks:
        monos = [parse_polynomial(t, ring) for t in b.split(",") if t.strip()]
        out.append(MonomialIdeal(ring, [p.monomials()[0] for p in monos]))
    return out


def weierstrass_tail_components() -> tuple:
    """Genus-3 part in P^7 and the genus-2 part in h..l, both inside P^11."""
    big = Ring(tuple("abcdefghijkl"))
    w3 = extend_to_ambient(fixture("wiman3_p7"), big)
    w2 = extend_to_ambient(fixture("wiman2"), big)
    return w3, w2


def general_tail_components() -> tuple:
    big = Ring(tuple("abcdefghijkl"))
    w3 = extend_to_ambient(fixture("wiman3_p7"), big)
    d = extend_to_ambient(fixture("g2_twisted_tail_p4"), big)
    return w3, d


def elliptic_bridge_components() -> tuple:
    return tuple(fixture(n) for n in ("elliptic_bridge_part_w3", "elliptic_bridge_part_e", "elliptic_bridge_part_w2"))


def nodal_join(components: Sequence[Ideal]) -> Ideal:
    out = components[0]
    for J in components[1:]:
        out = intersect_ideals(out, J)
    return out
