"""Verification engine for parabolic coset combinatorics of classical
Weyl groups, the associated integral/mod-p quotient modules, and their
Hecke-operator action, with a GL_n(F_q) brute-force cross-check."""

__version__ = "0.1.0"

from .errors import SpecrepError
from .roots import CartanType, RootSystem, root_system

__all__ = ["CartanType", "RootSystem", "SpecrepError", "root_system", "__version__"]
