"""Algebraic dynamics of the discrete Heisenberg group."""

__version__ = "0.1.0"
