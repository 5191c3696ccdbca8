"""Exact finite-dimensional Hopf algebras and quantum permutation certificates."""

__version__ = "0.1.0"
