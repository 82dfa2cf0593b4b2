"""Exact Hilbert and Chow stability computations for projective ideals."""

__version__ = "0.1.0"

from .polyring import Ideal, Polynomial, Ring, TermOrder, parse_ideal, parse_polynomial  # noqa: E402,F401
