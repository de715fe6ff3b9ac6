"""Exact integral Schubert calculus and invariant theory for ADE root systems."""

from .rootsys import DynkinType, RootSystem, root_system
from .weyl import WeylElement

__version__ = "0.1.0"
