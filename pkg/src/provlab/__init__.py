"""Symbolic laboratory for provability, diagonalization and Kolmogorov counting."""

__version__ = "0.1.0"
