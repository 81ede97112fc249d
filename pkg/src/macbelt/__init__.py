"""Cohomology of moment-angle complexes and B-rigidity checks for flag 2-spheres."""

from .complex import Belt, ComplexError, SimplePolytope3, SimplicialComplex
from .linalg import F2, F3, Q, Field
from .macring import MacRing, RingElement

__all__ = ["Belt", "ComplexError", "SimplePolytope3", "SimplicialComplex", "F2", "F3", "Q", "Field",
           "MacRing", "RingElement"]
__version__ = "0.1.0"
