"""Certified topology of real plane algebraic curves."""

from .bpoly import IntPoly2
from .upoly import IntPoly

__version__ = "0.1.0"

__all__ = ["IntPoly", "IntPoly2", "__version__"]
