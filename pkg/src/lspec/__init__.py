"""Exact and asymptotic spectral quantities of generalized Hilbert L-matrices."""

__version__ = "0.1.0"
