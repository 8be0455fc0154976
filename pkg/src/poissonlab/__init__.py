"""Exact verification of Poisson-commutative subalgebras of S(g)."""

__version__ = "0.1.0"
