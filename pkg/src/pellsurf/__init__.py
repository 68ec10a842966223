"""Polynomial Pell equations, their surfaces and ramification data."""

from .algebra import GF, QQ, Mod, Poly, PrimeField, Rationals, field_from_spec
from .errors import PellSurfError
from .parse import parse_poly

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Mod",
    "Poly",
    "PrimeField",
    "Rationals",
    "field_from_spec",
    "parse_poly",
    "PellSurfError",
    "__version__",
]
