"""Exact finite-dimensional computations of factorization homology in dimensions one and two."""

__version__ = "0.1.0"
