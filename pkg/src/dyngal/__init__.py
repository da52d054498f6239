"""Galois groups of dynatomic polynomials for x^2 + t."""

__version__ = "0.1.0"
