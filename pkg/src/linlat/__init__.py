"""Finite modular lattices and the monoids of their linear endomorphisms."""

__version__ = "0.1.0"
