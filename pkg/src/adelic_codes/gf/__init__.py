"""Exact arithmetic over finite fields: elements, polynomials, rational functions, Laurent series."""

from .field import Field, FieldError, field_create, is_prime
from .laurent import LaurentSeries, PrecisionError, laurent_expand
from .parse import ParseError, parse_element, parse_poly, parse_rational
from .poly import Poly, irreducibles, monic_polys
from .rational import RationalFunction

__all__ = [
    "Field",
    "FieldError",
    "LaurentSeries",
    "ParseError",
    "Poly",
    "PrecisionError",
    "RationalFunction",
    "field_create",
    "irreducibles",
    "is_prime",
    "laurent_expand",
    "monic_polys",
    "parse_element",
    "parse_poly",
    "parse_rational",
]
