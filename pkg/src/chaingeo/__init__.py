"""Finite chain geometries: projective lines over finite algebras, their
chains, blocking-set bounds and exact searches, and the hyperbolic-quadric
model of the product-ring case."""

from .algebra import Algebra, RingSpec, from_spec, parse_ring_spec
from .chains import Geometry
from .field import Field, field_make
from .incidence import Incidence

__all__ = [
    "Algebra",
    "Field",
    "Geometry",
    "Incidence",
    "RingSpec",
    "field_make",
    "from_spec",
    "parse_ring_spec",
]

__version__ = "0.1.0"
