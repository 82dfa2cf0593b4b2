"""Diagonal automorphisms as integer residues, and the ± eigenbasis change.

An action D(zeta_n^{w_0}, ..., zeta_n^{w_N}) is stored as the modulus n and
the exponent residues w_i; no cyclotomic arithmetic is ever needed.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import Ideal, Polynomial, Ring, TermOrder


@dataclass(frozen=True)
class DiagonalAction:
    modulus: int
    weights: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "weights", tuple(int(w) % self.modulus for w in self.weights))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def determinant_exponent(self) -> int:
        return sum(self.weights) % self.modulus

    def to_json(self):
        return {"modulus": self.modulus, "weights": list(self.weights)}


def character_tuples(actions: Sequence[DiagonalAction]) -> list:
    if not actions:
        raise ValueError("no actions given")
    dims = {a.dim for a in actions}
    if len(dims) != 1:
        raise ValueError("actions have different dimensions")
    n = dims.pop()
    return [tuple(a.weights[i] for a in actions) for i in range(n)]


def multiplicity_free(actions: Sequence[DiagonalAction]):
    """(True, []) when all basis characters differ; otherwise (False, colliding index groups)."""
    groups: dict = {}
    for i, t in enumerate(character_tuples(actions)):
        groups.setdefault(t, []).append(i)
    collisions = [g for g in groups.values() if len(g) > 1]
    return (not collisions), collisions


def product(a: DiagonalAction, b: DiagonalAction) -> DiagonalAction:
    """The action of the product of two commuting diagonal matrices."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    L = a.modulus * b.modulus // math.gcd(a.modulus, b.modulus)
    fa, fb = L // a.modulus, L // b.modulus
    return DiagonalAction(L, tuple(x * fa + y * fb for x, y in zip(a.weights, b.weights)))


def sl_normalize(action: DiagonalAction) -> DiagonalAction:
    """Rescale by a root of unity to land in SL.

    Uses the smallest nonnegative shift s = (j·n − S)/(N+1) of the exponents
    (S their sum) that makes the determinant trivial; writing s = t/k in lowest
    terms, the result is k·w_i + t modulo n·k.
    """
    n = action.modulus
    size = action.dim
    S = sum(action.weights)
    j = -(-S // n)
    s = Fraction(j * n - S, size)
    k, t = s.denominator, s.numerator
    out = DiagonalAction(n * k, tuple(k * w + t for w in action.weights))
    assert out.determinant_exponent() == 0
    return out


EIGENBASIS = "eigenbasis"
POSITIONAL = "positional"


def plusminus_basis_change(
    I: Ideal,
    swaps: Sequence[tuple],
    fixed: Sequence = (),
    scaled: Sequence = (),
    new_names: Sequence[str] | None = None,
    assign: str = EIGENBASIS,
) -> Ideal:
    """Rewrite I in the basis x+y, x−y (per swapped pair), then the untouched variables in ring order.

    Scaled variables are eigenvectors already (the note only records the
    eigenvalue), so they carry over unchanged.

    ``assign="eigenbasis"`` makes the k-th new variable the k-th basis vector,
    so old variables are recovered as x = (P + M)/2, y = (P − M)/2.
    ``assign="positional"`` instead sends the k-th old variable (ring order) to
    the k-th basis form, written in the new variables that share the old
    variables' positions.  That is what a ring map given the basis list as its
    image list produces, and it is how the stored diagonalized elliptic bridge
    was generated.
    """
    if assign not in (EIGENBASIS, POSITIONAL):
        raise ValueError(f"unknown assignment {assign!r}")
    names = I.ring.variable_names

    def idx(v):
        return names.index(v) if isinstance(v, str) else int(v)

    pairs = [(idx(x), idx(y)) for x, y in swaps]
    keep = [idx(v) for v in fixed] + [idx(v[0] if isinstance(v, (tuple, list)) else v) for v in scaled]
    keep.sort()
    used = [i for p in pairs for i in p] + keep
    if len(set(used)) != len(used):
        raise ValueError("overlapping index sets")
    if sorted(used) != list(range(len(names))):
        raise ValueError("swaps, fixed and scaled variables must cover the ring")
    count = len(names)
    if new_names is None:
        new_names = string.ascii_uppercase[:count] if count <= 26 else [f"Y{i}" for i in range(count)]
    new = Ring(tuple(new_names))
    V = [new.var(v) for v in new.variable_names]
    images = [None] * count
    if assign == EIGENBASIS:
        half = Fraction(1, 2)
        pos = 0
        for x, y in pairs:
            P, M = V[pos], V[pos + 1]
            images[x] = (P + M) * half
            images[y] = (P - M) * half
            pos += 2
        for i in keep:
            images[i] = V[pos]
            pos += 1
    else:
        forms = []
        for x, y in pairs:
            forms += [V[x] + V[y], V[x] - V[y]]
        forms += [V[i] for i in keep]
        images = forms
    order = TermOrder.default(count)
    gens = []
    for g in I.generators:
        h = g.substitute(images, new)
        if not h.is_zero():
            gens.append(h.primitive(order))
    return Ideal(new, tuple(gens))
