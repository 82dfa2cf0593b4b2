"""Sparse polynomials with rational coefficients over a named polynomial ring.

Monomials are plain tuples of nonnegative exponents; a polynomial maps
exponent tuples to nonzero :class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

GREVLEX = "grevlex"
LEX = "lex"
TIEBREAKS = (GREVLEX, LEX)

LESS, EQUAL, GREATER = -1, 0, 1

_MAX_EXPONENT = 2**31 - 1


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    variable_names: tuple

    def __post_init__(self):
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def num_vars(self) -> int:
        return len(self.variable_names)

    @classmethod
    def from_names(cls, names) -> "Ring":
        if isinstance(names, str):
            names = [n.strip() for n in names.replace(" ", ",").split(",") if n.strip()]
        return cls(tuple(names))

    def index(self, name: str) -> int:
        return self.variable_names.index(name)

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.num_vars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: Fraction(1)})

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variable_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > _MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_weight(w: Sequence[int], m: Monomial) -> int:
    """Dot product of a weight vector with an exponent vector."""
    if len(w) != len(m):
        raise ValueError(f"weight length {len(w)} does not match {len(m)} variables")
    return sum(a * b for a, b in zip(w, m))


def _grevlex_key(m: Monomial):
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex_key(m: Monomial):
    return tuple(m)


@dataclass(frozen=True)
class TermOrder:
    """Weight order refined by a total tiebreak order.

    ``weights`` is the primary weight vector; ``refinements`` are further
    weight vectors consulted in turn before the tiebreak (a matrix order),
    which is how orders just across a Groebner cone wall are expressed.
    """

    weights: tuple
    tiebreak: str = GREVLEX
    refinements: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(x) for x in self.weights))
        object.__setattr__(self, "refinements", tuple(tuple(int(x) for x in r) for r in self.refinements))
        if self.tiebreak not in TIEBREAKS:
            raise ValueError(f"unknown tiebreak {self.tiebreak!r}")
        for r in self.refinements:
            if len(r) != len(self.weights):
                raise ValueError("refinement length mismatch")

    @classmethod
    def default(cls, n: int, tiebreak: str = GREVLEX) -> "TermOrder":
        return cls((0,) * n, tiebreak)

    @property
    def num_vars(self) -> int:
        return len(self.weights)

    def key(self, m: Monomial):
        w = self.weights
        k = (sum(a * b for a, b in zip(w, m)),)
        for r in self.refinements:
            k += (sum(a * b for a, b in zip(r, m)),)
        if self.tiebreak == GREVLEX:
            return k + _grevlex_key(m)
        return k + _lex_key(m)

    def weight_key(self, m: Monomial):
        """The part of the key coming from weight vectors only."""
        k = (sum(a * b for a, b in zip(self.weights, m)),)
        for r in self.refinements:
            k += (sum(a * b for a, b in zip(r, m)),)
        return k


def compare(order: TermOrder, m1: Monomial, m2: Monomial):
    """Compare two monomials; returns ``(LESS|EQUAL|GREATER, tiebreak_used)``."""
    if len(m1) != order.num_vars or len(m2) != order.num_vars:
        raise ValueError("dimension mismatch")
    if m1 == m2:
        return EQUAL, False
    w1, w2 = order.weight_key(m1), order.weight_key(m2)
    if w1 != w2:
        return (GREATER if w1 > w2 else LESS), False
    k1, k2 = order.key(m1), order.key(m2)
    return (GREATER if k1 > k2 else LESS), True


def degree_basis(ring: Ring, m: int, tiebreak: str = GREVLEX) -> list:
    """All monomials of degree ``m``, sorted descending in the tiebreak order."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    n = ring.num_vars if isinstance(ring, Ring) else int(ring)
    out = []
    for combo in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    key = _grevlex_key if tiebreak == GREVLEX else _lex_key
    out.sort(key=key, reverse=True)
    return out


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.num_vars
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != n:
                    raise ValueError("exponent vector length does not match the ring")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return list(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees()) if self._terms else -1

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError("polynomials belong to different rings")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {(0,) * self.ring.num_vars: other})
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {m: c * other for m, c in self._terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def substitute(self, images: Sequence["Polynomial"], target: Ring | None = None) -> "Polynomial":
        """Replace the i-th variable by ``images[i]`` (polynomials over ``target``)."""
        target = target or (images[0].ring if images else self.ring)
        out = Polynomial(target, {})
        cache: dict = {}
        for m, c in self._terms.items():
            term = Polynomial(target, {(0,) * target.num_vars: c})
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def leading(self, order: TermOrder):
        """(monomial, coefficient) of the largest term under ``order``."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def sorted_terms(self, order: TermOrder | None = None):
        if order is None:
            return sorted(self._terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if not self._terms:
            return Fraction(0)
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, int(c * den))
        return Fraction(g, den)

    def primitive(self, order: TermOrder | None = None) -> "Polynomial":
        """Integral, content 1, with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        p = self * (1 / c)
        lead = p.sorted_terms(order)[0][1]
        return -p if lead < 0 else p

    def monic(self, order: TermOrder) -> "Polynomial":
        _, c = self.leading(order)
        return self * (1 / c)

    def to_string(self, order: TermOrder | None = None) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms(order)):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self.ring.monomial_str(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(sign + body)
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# --------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str, ring: Ring):
    names = set(ring.variable_names)
    single = all(len(n) == 1 for n in names)
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"cannot tokenize near {text[pos:]!r}")
        pos = mt.end()
        num, ident, sym = mt.groups()
        if num is not None:
            toks.append(("num", Fraction(num)))
        elif ident is not None:
            if ident in names:
                toks.append(("var", ident))
            elif single and all(ch in names for ch in ident):
                # juxtaposed single-letter variables, e.g. "ab" for a*b
                for k, ch in enumerate(ident):
                    if k:
                        toks.append(("sym", "*"))
                    toks.append(("var", ch))
            else:
                raise ParseError(f"unknown variable {ident!r}")
        else:
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r}")
            toks.append(("sym", sym))
    return toks


class _Parser:
    def __init__(self, toks, ring):
        self.toks = toks
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind in ("var", "num") or (kind == "sym" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial(self.ring, {(0,) * self.ring.num_vars: val})
        if kind == "var":
            return self.ring.var(val)
        if kind == "sym" and val == "(":
            inner = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("sym", ")"):
                raise ParseError("unbalanced parenthesis")
            return inner
        if kind == "sym" and val == "-":
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` written with ``+ - * ^`` (juxtaposition allowed for one-letter variables)."""
    toks = _tokenize(text, ring)
    if not toks:
        raise ParseError("empty polynomial")
    p = _Parser(toks, ring)
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return out


# ---------------------------------------------------------------------- ideals


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be Polynomials")
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                raise ValueError("zero generator")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_strings(cls, ring: Ring, gens: Iterable[str]) -> "Ideal":
        polys = [parse_polynomial(s, ring) for s in gens]
        return cls(ring, tuple(p for p in polys if not p.is_zero()))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.generators)

    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def to_text(self) -> str:
        head = "# ring: " + ",".join(self.ring.variable_names)
        return head + "\n" + ",\n".join(g.to_string() for g in self.generators) + "\n"

    def __len__(self):
        return len(self.generators)


def _split_top_level(body: str):
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",\n" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_ideal(text: str, ring: Ring | None = None) -> Ideal:
    """Parse an ideal: generators separated by commas or newlines, optionally in parentheses.

    A line ``# ring: a,b,c`` declares the variables; without one (and without
    ``ring``) the variables are the distinct letters used, sorted.
    """
    body_lines = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            mt = re.match(r"#\s*ring\s*:\s*(.*)", s)
            if mt and ring is None:
                ring = Ring.from_names(mt.group(1))
            continue
        body_lines.append(line)
    body = "\n".join(body_lines).strip()
    if body.startswith("(") and body.endswith(")") and _balanced_outer(body):
        body = body[1:-1]
    gens = _split_top_level(body)
    if ring is None:
        letters = sorted(set(re.findall(r"[A-Za-z]", body)))
        if not letters:
            raise ParseError("cannot infer ring from an ideal without variables")
        ring = Ring(tuple(letters))
    return Ideal.from_strings(ring, gens)


def _balanced_outer(body: str) -> bool:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(body) - 1:
                return False
    return depth == 0
