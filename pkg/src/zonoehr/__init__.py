"""Exact Ehrhart theory of lattice zonotopes in low dimension."""

from zonoehr.zonotope import Zonotope, make_zonotope

__all__ = ["Zonotope", "make_zonotope"]
__version__ = "0.1.0"
